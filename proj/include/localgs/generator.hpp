#ifndef LOCALGS_GENERATOR_HPP
#define LOCALGS_GENERATOR_HPP

#include <cstdint>

#include "localgs/graph.hpp"

namespace localgs {

struct GeneratorOptions {
    std::uint32_t red_count = 0;
    std::uint32_t blue_count = 0;
    std::uint32_t max_degree = 1;
    std::uint64_t seed = 0;
    bool weighted = false;
    bool ties = false;
};

/// Random valid instance: bipartite, simple, max degree <= max_degree, no
/// isolated nodes, uniformly shuffled preference lists. Weighted instances
/// draw integer weights in [1,100] and rederive preferences from them; tied
/// instances merge random consecutive blocks. Same options, same graph,
/// on every platform.
///
/// Throws std::invalid_argument when no valid instance exists (a side would
/// be forced to have isolated nodes).
BicolouredGraph generate_random(const GeneratorOptions& opt);

}  // namespace localgs

#endif
