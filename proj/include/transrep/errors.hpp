#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace transrep {

/// Malformed input document (set system or matrix file).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

struct NotPrime : std::invalid_argument {
    explicit NotPrime(std::uint64_t n)
        : std::invalid_argument("modulus " + std::to_string(n) + " is not prime"), value(n) {}
    std::uint64_t value;
};

struct NotSquare : std::invalid_argument {
    NotSquare(std::size_t rows, std::size_t cols)
        : std::invalid_argument("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                                ", expected square") {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(std::size_t index, std::size_t bound)
        : std::out_of_range("index " + std::to_string(index) + " out of range [0, " +
                            std::to_string(bound) + ")") {}
};

struct DuplicateIndex : std::invalid_argument {
    explicit DuplicateIndex(std::size_t index)
        : std::invalid_argument("duplicate column index " + std::to_string(index)) {}
};

struct RowMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A finite field ran out of nonzero candidates while choosing a merge value.
/// `suggested_prime` is the smallest prime p with p > constraint_rows + 1;
/// such a field always has an admissible candidate for the failed merge.
struct FieldExhausted : std::runtime_error {
    FieldExhausted(const std::string& what, std::size_t rows, std::uint64_t suggested)
        : std::runtime_error(what), constraint_rows(rows), suggested_prime(suggested) {}
    std::size_t constraint_rows;
    std::uint64_t suggested_prime;
    bool has_tag = false;
    std::size_t tag_set = 0;      // valid when has_tag
    std::size_t tag_element = 0;  // valid when has_tag
};

struct GroundSetTooLarge : std::invalid_argument {
    explicit GroundSetTooLarge(std::size_t n, std::size_t bound)
        : std::invalid_argument("ground set of size " + std::to_string(n) +
                                " exceeds the exhaustive bound " + std::to_string(bound)) {}
};

/// Step-one enumeration would exceed the configured subset budget.
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : std::runtime_error("constraint enumeration needs " + std::to_string(required) +
                             " column subsets, over the budget of " + std::to_string(budget) +
                             " (use force to proceed)"),
          required(required), budget(budget) {}
    std::uint64_t required;
    std::uint64_t budget;
};

}  // namespace transrep
