#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "transrep/errors.hpp"
#include "transrep/rational.hpp"

namespace transrep {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Smallest prime strictly greater than n.
inline std::uint64_t next_prime_greater(std::uint64_t n) {
    std::uint64_t p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

/// The rationals. Candidate stream: 1, -1, 2, -2, 3, -3, ...
///
/// Field objects are stateless; elements are immutable values. The candidate
/// stream is a pure indexed function, so concurrent callers see the same order.
class RationalField {
  public:
    using Element = Rational;

    std::uint64_t characteristic() const { return 0; }

    Element zero() const { return Rational(0); }
    Element one() const { return Rational(1); }
    Element from_int(long long v) const { return Rational(v); }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element neg(const Element& a) const { return -a; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element div(const Element& a, const Element& b) const { return a / b; }
    Element inv(const Element& a) const { return one() / a; }

    bool eq(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a.is_zero(); }

    std::optional<std::size_t> candidate_count() const { return std::nullopt; }
    Element candidate(std::size_t index) const {
        long long magnitude = static_cast<long long>(index / 2) + 1;
        return Rational(index % 2 == 0 ? magnitude : -magnitude);
    }

    std::string name() const { return "Q"; }
    std::string str(const Element& a) const { return a.str(); }
    Element parse(const std::string& text) const { return Rational::parse(text); }
};

/// GF(p) for a (desk-scale) prime p. Candidate stream: 1, 2, ..., p-1.
class PrimeField {
  public:
    using Element = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (std::uint64_t{1} << 31))
            throw std::invalid_argument("modulus too large (must be < 2^31)");
        if (!is_prime(p)) throw NotPrime(p);
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(long long v) const {
        long long m = static_cast<long long>(p_);
        long long r = v % m;
        if (r < 0) r += m;
        return static_cast<Element>(r);
    }

    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element inv(Element a) const {
        if (a == 0) throw DivisionByZero();
        // extended Euclid over signed 64-bit; p < 2^31 keeps everything in range
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Element>(t);
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    bool eq(Element a, Element b) const { return a == b; }
    bool is_zero(Element a) const { return a == 0; }

    std::optional<std::size_t> candidate_count() const { return p_ - 1; }
    Element candidate(std::size_t index) const {
        if (index + 1 >= p_) throw std::logic_error("candidate index past p-2");
        return index + 1;
    }

    std::string name() const { return "gf:" + std::to_string(p_); }
    std::string str(Element a) const { return std::to_string(a); }
    Element parse(const std::string& text) const {
        try {
            return from_int(std::stoll(text));
        } catch (const std::exception&) {
            throw ParseError("bad GF(" + std::to_string(p_) + ") literal '" + text + "'");
        }
    }

  private:
    std::uint64_t p_;
};

inline RationalField rational_field() { return RationalField{}; }
inline PrimeField prime_field(std::uint64_t p) { return PrimeField(p); }

}  // namespace transrep
