#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "transrep/matrix.hpp"
#include "transrep/merge.hpp"
#include "transrep/transversal.hpp"

namespace transrep {

struct Verdict {
    bool pass = true;
    std::optional<std::vector<std::size_t>> witness;  // lexicographically smallest failure
    std::size_t subsets_checked = 0;
    std::optional<std::string> warning;
};

namespace detail {

template <class F>
bool subset_agrees(const F& f, const Matrix<F>& m, const SetSystem& sys,
                   const std::vector<std::size_t>& subset) {
    std::size_t linear = rank(f, column_select(f, m, subset));
    return linear == matroid_rank(sys, subset);
}

}  // namespace detail

/// Compares linear rank against matroid rank on every subset of columns, in
/// lexicographic order, stopping at the first mismatch (which is therefore
/// the lexicographically smallest witness).
template <class F>
Verdict check_representation(const F& f, const Matrix<F>& m, const SetSystem& sys,
                             std::size_t exhaustive_bound = 16) {
    const std::size_t n = sys.ground_size();
    if (m.cols != n)
        throw std::invalid_argument("matrix has " + std::to_string(m.cols) +
                                    " columns, system has " + std::to_string(n) + " elements");
    if (n > exhaustive_bound) throw GroundSetTooLarge(n, exhaustive_bound);

    Verdict verdict;
    verdict.subsets_checked = 1;  // the empty subset always agrees
    std::vector<std::size_t> current;
    auto dfs = [&](auto&& self, std::size_t start) -> bool {
        for (std::size_t j = start; j < n; ++j) {
            current.push_back(j);
            ++verdict.subsets_checked;
            if (!detail::subset_agrees(f, m, sys, current)) {
                verdict.pass = false;
                verdict.witness = current;
                return true;
            }
            if (self(self, j + 1)) return true;
            current.pop_back();
        }
        return false;
    };
    dfs(dfs, 0);
    return verdict;
}

/// Same comparison on pseudo-random subsets from a seeded generator
/// (deterministic for a fixed seed). Reports the lexicographically smallest
/// failing subset among the samples.
template <class F>
Verdict check_representation_sampled(const F& f, const Matrix<F>& m, const SetSystem& sys,
                                     std::size_t samples, std::uint64_t seed) {
    const std::size_t n = sys.ground_size();
    if (m.cols != n)
        throw std::invalid_argument("matrix has " + std::to_string(m.cols) +
                                    " columns, system has " + std::to_string(n) + " elements");
    Verdict verdict;
    verdict.subsets_checked = samples;
    if (samples == 0) {
        verdict.warning = "0 samples requested: vacuous pass";
        return verdict;
    }
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> subset;
    for (std::size_t s = 0; s < samples; ++s) {
        subset.clear();
        std::uint64_t bits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j % 64 == 0) bits = gen();
            if ((bits >> (j % 64)) & 1) subset.push_back(j);
        }
        if (!detail::subset_agrees(f, m, sys, subset)) {
            verdict.pass = false;
            if (!verdict.witness || subset < *verdict.witness) verdict.witness = subset;
        }
    }
    return verdict;
}

/// k copies of the full ground set {a1, ..., an}; its transversal matroid is
/// the uniform matroid U_{k,n}.
SetSystem uniform_system(std::size_t k, std::size_t n);

/// Integer matrix representing U_{k,n}: the rational representation of
/// uniform_system(k, n), cleared of denominators.
IntegerMatrix represent_uniform(std::size_t k, std::size_t n);

}  // namespace transrep
