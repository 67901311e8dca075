#include "transrep/transversal.hpp"

#include <algorithm>

#include "transrep/errors.hpp"

namespace transrep {

namespace {

constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

std::vector<std::size_t> sorted_unique(const SetSystem& sys,
                                       std::span<const std::size_t> subset) {
    std::vector<std::size_t> s(subset.begin(), subset.end());
    for (std::size_t j : s)
        if (j >= sys.ground_size()) throw IndexOutOfRange(j, sys.ground_size());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

struct Kuhn {
    const std::vector<std::vector<std::size_t>>& sets_of;  // element -> sets, ascending
    std::vector<std::size_t>& match_of_set;                // set -> element
    std::vector<bool> visited;

    // free sets first, then relocations, each in ascending set order
    bool augment(std::size_t element) {
        for (std::size_t i : sets_of[element]) {
            if (!visited[i] && match_of_set[i] == kUnmatched) {
                visited[i] = true;
                match_of_set[i] = element;
                return true;
            }
        }
        for (std::size_t i : sets_of[element]) {
            if (visited[i]) continue;
            visited[i] = true;
            if (augment(match_of_set[i])) {
                match_of_set[i] = element;
                return true;
            }
        }
        return false;
    }
};

}  // namespace

Matching max_matching(const SetSystem& sys, std::span<const std::size_t> subset) {
    std::vector<std::size_t> elements = sorted_unique(sys, subset);
    std::vector<std::vector<std::size_t>> sets_of(sys.ground_size());
    for (std::size_t i = 0; i < sys.set_count(); ++i)
        for (std::size_t j : sys.sets[i].members) sets_of[j].push_back(i);

    std::vector<std::size_t> match_of_set(sys.set_count(), kUnmatched);
    Kuhn kuhn{sets_of, match_of_set, {}};
    for (std::size_t j : elements) {
        kuhn.visited.assign(sys.set_count(), false);
        kuhn.augment(j);
    }

    std::vector<std::size_t> match_of_element(sys.ground_size(), kUnmatched);
    for (std::size_t i = 0; i < sys.set_count(); ++i)
        if (match_of_set[i] != kUnmatched) match_of_element[match_of_set[i]] = i;

    Matching matching;
    for (std::size_t j : elements)
        if (match_of_element[j] != kUnmatched) matching.pairs.emplace_back(j, match_of_element[j]);
    return matching;
}

std::size_t matroid_rank(const SetSystem& sys, std::span<const std::size_t> subset) {
    return max_matching(sys, subset).size();
}

bool is_independent(const SetSystem& sys, std::span<const std::size_t> subset) {
    std::vector<std::size_t> elements = sorted_unique(sys, subset);
    return max_matching(sys, elements).size() == elements.size();
}

std::vector<std::vector<std::size_t>> enumerate_max_independent(const SetSystem& sys,
                                                                std::size_t bound) {
    const std::size_t n = sys.ground_size();
    if (n > bound) throw GroundSetTooLarge(n, bound);
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    const std::size_t target = matroid_rank(sys, all);

    std::vector<std::vector<std::size_t>> result;
    std::vector<std::size_t> current;
    // lexicographic DFS; heredity lets us extend independent prefixes only
    auto dfs = [&](auto&& self, std::size_t start) -> void {
        if (current.size() == target) {
            result.push_back(current);
            return;
        }
        for (std::size_t j = start; j < n; ++j) {
            current.push_back(j);
            if (is_independent(sys, current)) self(self, j + 1);
            current.pop_back();
        }
    };
    dfs(dfs, 0);
    return result;
}

}  // namespace transrep
