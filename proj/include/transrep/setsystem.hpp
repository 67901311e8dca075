#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transrep/errors.hpp"

namespace transrep {

struct NamedSet {
    std::string name;
    std::vector<std::size_t> members;  // ascending element indices
    bool operator==(const NamedSet&) const = default;
};

/// A finite ground set of named elements together with an ordered collection
/// of named subsets. Immutable after construction.
struct SetSystem {
    std::vector<std::string> elements;
    std::vector<NamedSet> sets;

    std::size_t ground_size() const { return elements.size(); }
    std::size_t set_count() const { return sets.size(); }

    std::optional<std::size_t> element_index(const std::string& name) const {
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (elements[j] == name) return j;
        return std::nullopt;
    }

    bool contains(std::size_t set, std::size_t element) const {
        const auto& m = sets[set].members;
        return std::binary_search(m.begin(), m.end(), element);
    }

    /// Validating constructor from names. Member lists are deduplicated and
    /// stored sorted; duplicate element/set names and unknown members are
    /// rejected.
    static SetSystem make(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& sets);

    bool operator==(const SetSystem&) const = default;
};

/// 0/1 membership grid: rows indexed by sets, columns by elements.
struct IncidenceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> cells;

    IncidenceMatrix() = default;
    IncidenceMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), cells(r * c, 0) {}

    std::uint8_t at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
    std::uint8_t& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }

    bool operator==(const IncidenceMatrix&) const = default;
};

/// Position of a split-off incidence: set row and element column of the
/// nonzero entry that is not the element's anchor.
struct IndeterminateTag {
    std::size_t set = 0;
    std::size_t element = 0;
    auto operator<=>(const IndeterminateTag&) const = default;
};

/// Result of splitting a set system into a partition plus one fresh column
/// per non-anchor incidence. Each element stays (with value 1) in the first
/// set containing it; every other incidence becomes an indeterminate tag.
struct SplitResult {
    IncidenceMatrix partition;
    std::vector<IndeterminateTag> indeterminates;  // ordered by (element, set)
    std::vector<std::optional<std::size_t>> anchor_row;
};

/// Parses either the JSON document format or the dense 0/1 text format
/// (auto-detected on the first non-space character).
SetSystem parse_set_system(const std::string& text);

std::string to_json_text(const SetSystem& sys);
std::string to_dense_text(const SetSystem& sys);

IncidenceMatrix incidence(const SetSystem& sys);

struct NormalizeResult {
    SetSystem system;
    std::vector<std::string> dropped;  // names of removed empty sets
};

/// Drops empty sets (they can represent no element, so the matroid is
/// unchanged); order otherwise preserved.
NormalizeResult normalize(const SetSystem& sys);

/// Requires a normalized system (no empty sets).
SplitResult split_partition(const SetSystem& sys);

}  // namespace transrep
