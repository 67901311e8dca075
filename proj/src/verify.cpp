#include "transrep/verify.hpp"

namespace transrep {

SetSystem uniform_system(std::size_t k, std::size_t n) {
    SetSystem sys;
    for (std::size_t j = 0; j < n; ++j) sys.elements.push_back("a" + std::to_string(j + 1));
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    for (std::size_t i = 0; i < k; ++i) sys.sets.push_back({"A" + std::to_string(i + 1), all});
    return sys;
}

IntegerMatrix represent_uniform(std::size_t k, std::size_t n) {
    RationalField q;
    Representation<RationalField> rep = represent(q, uniform_system(k, n));
    return lcm_denominator_scale(rep.matrix);
}

}  // namespace transrep
