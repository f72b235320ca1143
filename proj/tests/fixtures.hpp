#ifndef LOCALGS_TESTS_FIXTURES_HPP
#define LOCALGS_TESTS_FIXTURES_HPP

#include <initializer_list>
#include <vector>

#include "localgs/graph.hpp"

namespace localgs::testing {

inline BicolouredGraph from_lists(std::uint32_t red_count, std::uint32_t blue_count,
                                  std::vector<std::vector<NodeId>> lists) {
    BicolouredGraph g;
    g.red_count = red_count;
    g.blue_count = blue_count;
    g.adjacency.assign(g.node_count() + 1, {});
    for (NodeId v = 1; v <= g.node_count(); ++v) g.adjacency[v] = lists[v - 1];
    return g;
}

/// Shared fixture: R={1,2}, B={3,4}; edges {1,3},{1,4},{2,3};
/// node 1 prefers 3 over 4, node 3 prefers 2 over 1.
inline BicolouredGraph instance_p() {
    return from_lists(2, 2, {{3, 4}, {3}, {2, 1}, {1}});
}

/// Path 1-3-2-4 (reds 1,2; blues 3,4) with weights 10, alpha, 10 on the
/// edges {1,3}, {3,2}, {2,4}. Preferences follow the weights.
inline BicolouredGraph p4_weighted(std::uint32_t alpha = 15) {
    BicolouredGraph g = from_lists(2, 2, {{3}, {3, 4}, {2, 1}, {2}});
    g.weight.assign(g.node_count() + 1, {});
    g.weight[1] = {10};
    g.weight[2] = {alpha, 10};
    g.weight[3] = {alpha, 10};
    g.weight[4] = {10};
    return g;
}

/// Complete 2x2 where both reds prefer 3 and both blues prefer 1.
inline BicolouredGraph aligned_2x2() {
    return from_lists(2, 2, {{3, 4}, {3, 4}, {1, 2}, {1, 2}});
}

/// n/2 disjoint edges: red k matched to blue red_count + k.
inline BicolouredGraph disjoint_edges(std::uint32_t pairs) {
    BicolouredGraph g;
    g.red_count = pairs;
    g.blue_count = pairs;
    g.adjacency.assign(g.node_count() + 1, {});
    for (NodeId r = 1; r <= pairs; ++r) {
        g.adjacency[r] = {static_cast<NodeId>(pairs + r)};
        g.adjacency[pairs + r] = {r};
    }
    return g;
}

/// Alternating-colour path on `length` nodes: odd positions red.
/// Every preference list is the neighbour order (left neighbour first).
inline BicolouredGraph path_graph(std::uint32_t length) {
    const std::uint32_t reds = (length + 1) / 2, blues = length / 2;
    BicolouredGraph g;
    g.red_count = reds;
    g.blue_count = blues;
    g.adjacency.assign(g.node_count() + 1, {});
    auto id_of = [&](std::uint32_t pos) {  // pos 0-based along the path
        return pos % 2 == 0 ? NodeId(1 + pos / 2) : NodeId(reds + 1 + pos / 2);
    };
    for (std::uint32_t pos = 0; pos + 1 < length; ++pos) {
        g.adjacency[id_of(pos)].push_back(id_of(pos + 1));
        g.adjacency[id_of(pos + 1)].push_back(id_of(pos));
    }
    return g;
}

/// Even cycle on 2*half nodes, colours alternating around it.
inline BicolouredGraph cycle_graph(std::uint32_t half) {
    BicolouredGraph g;
    g.red_count = half;
    g.blue_count = half;
    g.adjacency.assign(g.node_count() + 1, {});
    auto id_of = [&](std::uint32_t pos) {
        return pos % 2 == 0 ? NodeId(1 + pos / 2) : NodeId(half + 1 + pos / 2);
    };
    const std::uint32_t n = 2 * half;
    for (std::uint32_t pos = 0; pos < n; ++pos) {
        g.adjacency[id_of(pos)].push_back(id_of((pos + 1) % n));
        g.adjacency[id_of((pos + 1) % n)].push_back(id_of(pos));
    }
    return g;
}

inline Matching matching_of(std::initializer_list<Edge> edges) {
    return Matching(std::vector<Edge>(edges));
}

}  // namespace localgs::testing

#endif
