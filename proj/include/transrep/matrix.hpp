#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "transrep/errors.hpp"
#include "transrep/fields.hpp"

namespace transrep {

/// Dense matrix over an exact field F, row-major. All entries belong to one
/// common field instance (the field object is passed alongside, never stored).
template <class F>
struct Matrix {
    using Element = typename F::Element;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Element> entries;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const Element& fill)
        : rows(r), cols(c), entries(r * c, fill) {}

    static Matrix zero(const F& f, std::size_t r, std::size_t c) { return Matrix(r, c, f.zero()); }

    static Matrix identity(const F& f, std::size_t n) {
        Matrix m(n, n, f.zero());
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    Element& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Element& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::vector<Element> column(std::size_t j) const {
        std::vector<Element> col;
        col.reserve(rows);
        for (std::size_t i = 0; i < rows; ++i) col.push_back(at(i, j));
        return col;
    }

    void erase_column(std::size_t j) {
        std::vector<Element> next;
        next.reserve(rows * (cols - 1));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t c = 0; c < cols; ++c)
                if (c != j) next.push_back(at(i, c));
        entries = std::move(next);
        --cols;
    }

    bool operator==(const Matrix&) const = default;
};

template <class F>
bool columns_equal(const F& f, const Matrix<F>& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows; ++i)
        if (!f.eq(m.at(i, a), m.at(i, b))) return false;
    return true;
}

/// Columns of `m` in the order given by `indices`. Duplicate indices are
/// rejected unless the caller opts in.
template <class F>
Matrix<F> column_select(const F& f, const Matrix<F>& m, std::span<const std::size_t> indices,
                        bool allow_duplicates = false) {
    std::set<std::size_t> seen;
    for (std::size_t j : indices) {
        if (j >= m.cols) throw IndexOutOfRange(j, m.cols);
        if (!allow_duplicates && !seen.insert(j).second) throw DuplicateIndex(j);
    }
    Matrix<F> out(m.rows, indices.size(), f.zero());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t c = 0; c < indices.size(); ++c) out.at(i, c) = m.at(i, indices[c]);
    return out;
}

namespace detail {

// Fraction-free (Bareiss) elimination. Exact over any field; over the
// rationals it keeps intermediate entries integral whenever the input is.
template <class F>
typename F::Element bareiss_determinant(const F& f, Matrix<F> a) {
    const std::size_t n = a.rows;
    if (n == 0) return f.one();  // empty product convention
    bool negate = false;
    typename F::Element prev = f.one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (f.is_zero(a.at(k, k))) {
            std::size_t pivot = k;
            while (pivot < n && f.is_zero(a.at(pivot, k))) ++pivot;
            if (pivot == n) return f.zero();
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(pivot, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = f.div(
                    f.sub(f.mul(a.at(k, k), a.at(i, j)), f.mul(a.at(i, k), a.at(k, j))), prev);
        prev = a.at(k, k);
    }
    return negate ? f.neg(a.at(n - 1, n - 1)) : a.at(n - 1, n - 1);
}

// Plain Gaussian elimination determinant; the workhorse over GF(p).
template <class F>
typename F::Element gaussian_determinant(const F& f, Matrix<F> a) {
    const std::size_t n = a.rows;
    typename F::Element det = f.one();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && f.is_zero(a.at(pivot, k))) ++pivot;
        if (pivot == n) return f.zero();
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(pivot, j));
            det = f.neg(det);
        }
        det = f.mul(det, a.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (f.is_zero(a.at(i, k))) continue;
            typename F::Element factor = f.div(a.at(i, k), a.at(k, k));
            for (std::size_t j = k; j < n; ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(k, j)));
        }
    }
    return det;
}

}  // namespace detail

/// Exact determinant. det of the 0x0 matrix is 1.
template <class F>
typename F::Element determinant(const F& f, const Matrix<F>& m) {
    if (m.rows != m.cols) throw NotSquare(m.rows, m.cols);
    if (f.characteristic() == 0) return detail::bareiss_determinant(f, m);
    return detail::gaussian_determinant(f, m);
}

/// Exact rank by elimination to row echelon form.
template <class F>
std::size_t rank(const F& f, Matrix<F> a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows && f.is_zero(a.at(pivot, c))) ++pivot;
        if (pivot == a.rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(r, j), a.at(pivot, j));
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            if (f.is_zero(a.at(i, c))) continue;
            typename F::Element factor = f.div(a.at(i, c), a.at(r, c));
            for (std::size_t j = c; j < a.cols; ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(r, j)));
        }
        ++r;
    }
    return r;
}

/// Determinant additivity under a row split: row i of X must equal v1 + v2.
/// Returns (det X, det X1, det X2) where Xj is X with row i replaced by vj;
/// the first value always equals the sum of the other two.
template <class F>
std::tuple<typename F::Element, typename F::Element, typename F::Element> nlinearity_check(
    const F& f, const Matrix<F>& x, std::size_t row,
    std::span<const typename F::Element> v1, std::span<const typename F::Element> v2) {
    if (x.rows != x.cols) throw NotSquare(x.rows, x.cols);
    if (row >= x.rows) throw IndexOutOfRange(row, x.rows);
    if (v1.size() != x.cols || v2.size() != x.cols)
        throw RowMismatch("split vectors must have one entry per column");
    for (std::size_t j = 0; j < x.cols; ++j)
        if (!f.eq(f.add(v1[j], v2[j]), x.at(row, j)))
            throw RowMismatch("v1 + v2 differs from row " + std::to_string(row) + " at column " +
                              std::to_string(j));
    Matrix<F> x1 = x, x2 = x;
    for (std::size_t j = 0; j < x.cols; ++j) {
        x1.at(row, j) = v1[j];
        x2.at(row, j) = v2[j];
    }
    return {determinant(f, x), determinant(f, x1), determinant(f, x2)};
}

/// A rational matrix cleared of denominators: entries of the input times
/// `scale`, where scale is the (minimal positive) lcm of all denominators.
struct IntegerMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigInt> entries;
    BigInt scale = 1;

    BigInt& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

inline IntegerMatrix lcm_denominator_scale(const Matrix<RationalField>& m) {
    BigInt l = 1;
    for (const Rational& e : m.entries) l = boost::multiprecision::lcm(l, e.denominator());
    IntegerMatrix out;
    out.rows = m.rows;
    out.cols = m.cols;
    out.scale = l;
    out.entries.reserve(m.entries.size());
    for (const Rational& e : m.entries) out.entries.push_back(e.numerator() * (l / e.denominator()));
    return out;
}

}  // namespace transrep
