#include "transrep/merge.hpp"

namespace transrep {

SetSystem intermediate_system(const SetSystem& normalized, const SplitResult& split,
                              std::size_t merged_count) {
    SetSystem sys;
    sys.elements = normalized.elements;
    const std::size_t n = normalized.ground_size();

    std::vector<std::size_t> pseudo_column(split.indeterminates.size());
    for (std::size_t k = merged_count; k < split.indeterminates.size(); ++k) {
        pseudo_column[k] = sys.elements.size();
        sys.elements.push_back(indeterminate_label(split.indeterminates[k]));
    }

    for (std::size_t i = 0; i < normalized.set_count(); ++i) {
        NamedSet s;
        s.name = normalized.sets[i].name;
        for (std::size_t j = 0; j < n; ++j)
            if (split.anchor_row[j] == i) s.members.push_back(j);
        for (std::size_t k = 0; k < split.indeterminates.size(); ++k) {
            const IndeterminateTag& tag = split.indeterminates[k];
            if (tag.set != i) continue;
            if (k < merged_count)
                s.members.push_back(tag.element);  // merged back into its element
            else
                s.members.push_back(pseudo_column[k]);
        }
        std::sort(s.members.begin(), s.members.end());
        sys.sets.push_back(std::move(s));
    }
    return sys;
}

}  // namespace transrep
