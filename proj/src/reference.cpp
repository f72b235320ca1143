#include "localgs/reference.hpp"

#include <algorithm>
#include <stdexcept>

namespace localgs {

Matching stable_matching_reference(const BicolouredGraph& g) {
    std::vector<std::uint32_t> next(g.red_count + 1, 0);  // next candidate to try
    std::vector<NodeId> partner(g.node_count() + 1, kNoNode);
    std::vector<NodeId> free_reds;
    for (NodeId r = g.red_count; r >= 1; --r) free_reds.push_back(r);

    while (!free_reds.empty()) {
        const NodeId r = free_reds.back();
        if (next[r] >= g.degree(r)) {  // exhausted, stays unmatched
            free_reds.pop_back();
            continue;
        }
        const NodeId b = g.adjacency[r][next[r]++];
        const NodeId held = partner[b];
        if (held == kNoNode) {
            partner[b] = r;
            partner[r] = b;
            free_reds.pop_back();
        } else {
            const std::uint32_t pos_new = *g.neighbour_position(b, r);
            const std::uint32_t pos_held = *g.neighbour_position(b, held);
            if (pos_new < pos_held) {
                partner[b] = r;
                partner[r] = b;
                partner[held] = kNoNode;
                free_reds.pop_back();
                free_reds.push_back(held);
            }
        }
    }

    std::vector<Edge> edges;
    for (NodeId r = 1; r <= g.red_count; ++r)
        if (partner[r] != kNoNode) edges.push_back({r, partner[r]});
    return Matching(std::move(edges));
}

Matching greedy_matching(const BicolouredGraph& g) {
    if (!g.has_weights()) throw std::invalid_argument("greedy_matching: graph has no weights");
    struct WeightedEdge {
        std::uint32_t weight;
        Edge edge;
    };
    std::vector<WeightedEdge> order;
    for (const Edge& e : g.edges())
        order.push_back({g.weight_or_unit(e.red, *g.neighbour_position(e.red, e.blue)), e});
    std::sort(order.begin(), order.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.edge < b.edge;
    });

    std::vector<bool> used(g.node_count() + 1, false);
    std::vector<Edge> edges;
    for (const WeightedEdge& we : order) {
        if (used[we.edge.red] || used[we.edge.blue]) continue;
        used[we.edge.red] = used[we.edge.blue] = true;
        edges.push_back(we.edge);
    }
    return Matching(std::move(edges));
}

namespace {

struct BruteForce {
    const std::vector<Edge>& edges;
    const std::vector<std::uint64_t>& weights;
    std::vector<std::uint64_t> suffix;  // max weight still reachable from index k
    std::vector<bool> used;
    std::vector<Edge> chosen;

    std::uint64_t best_weight = 0;
    bool found = false;
    std::vector<Edge> best;

    // Edges are scanned in canonical order and include is tried before
    // exclude, so matchings are visited in lexicographic order of their
    // sorted edge sets; updating only on strict improvement keeps the
    // lexicographically least optimum.
    void search(std::size_t k, std::uint64_t weight) {
        if (found && weight + suffix[k] < best_weight) return;
        if (k == edges.size()) {
            if (!found || weight > best_weight) {
                found = true;
                best_weight = weight;
                best = chosen;
            }
            return;
        }
        const Edge& e = edges[k];
        if (!used[e.red] && !used[e.blue]) {
            used[e.red] = used[e.blue] = true;
            chosen.push_back(e);
            search(k + 1, weight + weights[k]);
            chosen.pop_back();
            used[e.red] = used[e.blue] = false;
        }
        search(k + 1, weight);
    }
};

}  // namespace

Matching max_weight_matching_bruteforce(const BicolouredGraph& g) {
    const std::vector<Edge> edges = g.edges();
    if (edges.size() > kBruteForceEdgeCap)
        throw std::invalid_argument("max_weight_matching_bruteforce: instance too large (more than " +
                                    std::to_string(kBruteForceEdgeCap) + " edges)");
    std::vector<std::uint64_t> weights;
    weights.reserve(edges.size());
    for (const Edge& e : edges)
        weights.push_back(g.weight_or_unit(e.red, *g.neighbour_position(e.red, e.blue)));

    BruteForce bf{edges, weights, {}, {}, {}, 0, false, {}};
    bf.suffix.assign(edges.size() + 1, 0);
    for (std::size_t k = edges.size(); k-- > 0;) bf.suffix[k] = bf.suffix[k + 1] + weights[k];
    bf.used.assign(g.node_count() + 1, false);
    bf.search(0, 0);
    return Matching(std::move(bf.best));
}

}  // namespace localgs
