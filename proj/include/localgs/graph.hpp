#ifndef LOCALGS_GRAPH_HPP
#define LOCALGS_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace localgs {

/// Node identifier. Red nodes are 1..red_count, blue nodes follow as
/// red_count+1..red_count+blue_count. 0 is reserved for "no node".
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0;

/// An edge always stored as (red endpoint, blue endpoint).
struct Edge {
    NodeId red = kNoNode;
    NodeId blue = kNoNode;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A set of node-disjoint edges. Kept sorted by (red, blue) so that equal
/// matchings compare equal.
struct Matching {
    std::vector<Edge> edges;

    Matching() = default;
    explicit Matching(std::vector<Edge> e);

    std::size_t size() const { return edges.size(); }
    bool contains(NodeId red, NodeId blue) const;

    friend bool operator==(const Matching&, const Matching&) = default;
};

/// Bipartite preference graph. Adjacency lists are in preference order,
/// most preferred first; list position doubles as the port number.
struct BicolouredGraph {
    std::uint32_t red_count = 0;
    std::uint32_t blue_count = 0;

    /// adjacency[v] for v in 1..node_count(); index 0 is unused.
    std::vector<std::vector<NodeId>> adjacency;

    /// Per-position edge weights, parallel to adjacency. Empty when the
    /// graph is unweighted. Both endpoints carry the same value.
    std::vector<std::vector<std::uint32_t>> weight;

    /// tie[v][k] != 0 marks adjacency[v][k] as tied with adjacency[v][k-1],
    /// so tie groups are consecutive blocks. Empty when there are no ties.
    std::vector<std::vector<std::uint8_t>> tie;

    std::uint32_t node_count() const { return red_count + blue_count; }
    bool is_red(NodeId v) const { return v >= 1 && v <= red_count; }
    bool is_blue(NodeId v) const { return v > red_count && v <= node_count(); }
    std::uint32_t degree(NodeId v) const { return static_cast<std::uint32_t>(adjacency[v].size()); }
    std::uint32_t max_degree() const;
    std::uint64_t edge_count() const;
    bool has_weights() const { return !weight.empty(); }
    bool has_ties() const { return !tie.empty(); }

    /// Weight of the k-th edge of v; 1 everywhere on unweighted graphs.
    std::uint32_t weight_or_unit(NodeId v, std::uint32_t k) const {
        return has_weights() ? weight[v][k] : 1u;
    }

    /// All edges as (red, blue), sorted.
    std::vector<Edge> edges() const;

    /// Position of u in v's preference list, if adjacent.
    std::optional<std::uint32_t> neighbour_position(NodeId v, NodeId u) const;

    /// Tie-group index of position k in v's list (0 = most preferred group).
    /// Positions are their own group when the graph has no ties.
    std::uint32_t group_of_position(NodeId v, std::uint32_t k) const;
};

/// Result of validate(): one message per violated invariant.
struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant: bipartiteness, simplicity, symmetry,
/// no isolated nodes, weight consistency and monotonicity along preference
/// lists, and well-formed tie flags. Never throws; reports everything found.
ValidationReport validate(const BicolouredGraph& g);

/// Rebuilds every preference list in order of strictly decreasing weight,
/// breaking equal weights by ascending neighbour id. The result carries no
/// tie groups. Throws std::invalid_argument on missing or nonpositive weights.
BicolouredGraph preferences_from_weights(const BicolouredGraph& g);

/// Returns a copy with w(e) = 1 for every edge.
BicolouredGraph unit_weights(const BicolouredGraph& g);

/// Text format, line based:
///   line 1:            red_count blue_count
///   one line per node: node_id : neighbour[:weight][,tie] ...
/// '#' starts a comment. serialize() emits the canonical form that parse()
/// round-trips exactly.
BicolouredGraph parse_graph(const std::string& text);
std::string serialize_graph(const BicolouredGraph& g);

BicolouredGraph load_graph_file(const std::string& path);
void save_graph_file(const BicolouredGraph& g, const std::string& path);

/// True when the edge set is node-disjoint and every edge is in g.
bool is_valid_matching(const BicolouredGraph& g, const Matching& m);

/// partner[v] = matched neighbour of v, or kNoNode. Size node_count()+1.
std::vector<NodeId> partner_table(const BicolouredGraph& g, const Matching& m);

/// Total weight of a matching (unit weights when g is unweighted).
std::uint64_t matching_weight(const BicolouredGraph& g, const Matching& m);

}  // namespace localgs

#endif
