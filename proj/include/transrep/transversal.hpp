#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "transrep/setsystem.hpp"

namespace transrep {

/// A one-to-one assignment of elements to sets they belong to.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (element, set)
    std::size_t size() const { return pairs.size(); }
};

/// Maximum matching between the given elements and the sets containing them,
/// by augmenting paths. Deterministic: elements are scanned in ascending
/// index order and augmenting paths prefer an unmatched set, then explore
/// sets in ascending index order.
Matching max_matching(const SetSystem& sys, std::span<const std::size_t> subset);

/// True iff every element of the subset can be matched to a distinct set.
bool is_independent(const SetSystem& sys, std::span<const std::size_t> subset);

/// Size of a maximum matching within the subset.
std::size_t matroid_rank(const SetSystem& sys, std::span<const std::size_t> subset);

/// All maximum-cardinality independent subsets, in lexicographic order.
/// Throws GroundSetTooLarge past the exhaustive bound.
std::vector<std::vector<std::size_t>> enumerate_max_independent(const SetSystem& sys,
                                                                std::size_t bound = 20);

}  // namespace transrep
