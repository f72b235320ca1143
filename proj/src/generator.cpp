#include "localgs/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "localgs/rng.hpp"

namespace localgs {

namespace {

std::uint64_t edge_key(NodeId r, NodeId b) {
    return (static_cast<std::uint64_t>(r) << 32) | b;
}

}  // namespace

BicolouredGraph generate_random(const GeneratorOptions& opt) {
    const std::uint64_t R = opt.red_count, B = opt.blue_count, D = opt.max_degree;
    if (R < 1 || B < 1 || D < 1)
        throw std::invalid_argument("generate_random: counts and max degree must be >= 1");
    if (R > B * D || B > R * D)
        throw std::invalid_argument(
            "generate_random: isolation unavoidable (one side exceeds the other side's capacity)");

    Rng rng(opt.seed);
    BicolouredGraph g;
    g.red_count = opt.red_count;
    g.blue_count = opt.blue_count;
    g.adjacency.assign(g.node_count() + 1, {});

    std::vector<std::uint32_t> deg(g.node_count() + 1, 0);
    std::unordered_set<std::uint64_t> present;
    auto add_edge = [&](NodeId r, NodeId b) {
        g.adjacency[r].push_back(b);
        g.adjacency[b].push_back(r);
        ++deg[r];
        ++deg[b];
        present.insert(edge_key(r, b));
    };

    // Covering pass: pair two shuffled node sequences with wraparound. Every
    // node receives at least one edge, per-node load stays within the cap
    // (ceil(B/R) <= D and ceil(R/B) <= D by the feasibility check), and pairs
    // cannot repeat because the walk is shorter than lcm(R, B).
    std::vector<NodeId> reds(R), blues(B);
    std::iota(reds.begin(), reds.end(), NodeId{1});
    std::iota(blues.begin(), blues.end(), static_cast<NodeId>(R + 1));
    rng.shuffle(reds);
    rng.shuffle(blues);
    for (std::uint64_t i = 0; i < std::max(R, B); ++i)
        add_edge(reds[i % R], blues[i % B]);

    // Sprinkle extra edges up to a random target, respecting the degree cap.
    const std::uint64_t max_edges = std::min({R * D, B * D, R * B});
    const std::uint64_t target = rng.between(std::max(R, B), max_edges);
    std::uint64_t edges = std::max(R, B);
    for (std::uint64_t attempt = 0; edges < target && attempt < 10 * target; ++attempt) {
        NodeId r = static_cast<NodeId>(1 + rng.below(R));
        NodeId b = static_cast<NodeId>(R + 1 + rng.below(B));
        if (deg[r] >= D || deg[b] >= D || present.count(edge_key(r, b))) continue;
        add_edge(r, b);
        ++edges;
    }

    for (NodeId v = 1; v <= g.node_count(); ++v) rng.shuffle(g.adjacency[v]);

    if (opt.weighted) {
        g.weight.assign(g.node_count() + 1, {});
        std::vector<std::uint32_t> w_of_edge;  // keyed by canonical edge order
        std::vector<Edge> all = g.edges();
        w_of_edge.reserve(all.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            w_of_edge.push_back(static_cast<std::uint32_t>(rng.between(1, 100)));
        auto weight_of = [&](NodeId r, NodeId b) {
            auto it = std::lower_bound(all.begin(), all.end(), Edge{r, b});
            return w_of_edge[static_cast<std::size_t>(it - all.begin())];
        };
        for (NodeId v = 1; v <= g.node_count(); ++v)
            for (NodeId u : g.adjacency[v])
                g.weight[v].push_back(g.is_red(v) ? weight_of(v, u) : weight_of(u, v));
        g = preferences_from_weights(g);
    }

    if (opt.ties) {
        g.tie.assign(g.node_count() + 1, {});
        for (NodeId v = 1; v <= g.node_count(); ++v) {
            g.tie[v].assign(g.degree(v), 0);
            for (std::uint32_t k = 1; k < g.degree(v); ++k)
                g.tie[v][k] = rng.chance(1, 3) ? 1 : 0;
        }
    }
    return g;
}

}  // namespace localgs
