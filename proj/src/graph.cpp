#include "localgs/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace localgs {

Matching::Matching(std::vector<Edge> e) : edges(std::move(e)) {
    std::sort(edges.begin(), edges.end());
}

bool Matching::contains(NodeId red, NodeId blue) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{red, blue});
}

std::uint32_t BicolouredGraph::max_degree() const {
    std::uint32_t d = 0;
    for (NodeId v = 1; v <= node_count(); ++v) d = std::max(d, degree(v));
    return d;
}

std::uint64_t BicolouredGraph::edge_count() const {
    std::uint64_t total = 0;
    for (NodeId v = 1; v <= node_count(); ++v) total += degree(v);
    return total / 2;
}

std::vector<Edge> BicolouredGraph::edges() const {
    std::vector<Edge> out;
    for (NodeId r = 1; r <= red_count; ++r)
        for (NodeId b : adjacency[r]) out.push_back({r, b});
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::uint32_t> BicolouredGraph::neighbour_position(NodeId v, NodeId u) const {
    const auto& list = adjacency[v];
    for (std::uint32_t k = 0; k < list.size(); ++k)
        if (list[k] == u) return k;
    return std::nullopt;
}

std::uint32_t BicolouredGraph::group_of_position(NodeId v, std::uint32_t k) const {
    if (!has_ties() || tie[v].empty()) return k;
    std::uint32_t group = 0;
    for (std::uint32_t p = 1; p <= k; ++p)
        if (!tie[v][p]) ++group;
    return group;
}

namespace {

std::string node_label(const BicolouredGraph& g, NodeId v) {
    return (g.is_red(v) ? "red node " : "blue node ") + std::to_string(v);
}

}  // namespace

ValidationReport validate(const BicolouredGraph& g) {
    ValidationReport report;
    auto flag = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };

    const NodeId n = g.node_count();
    if (n == 0) {
        flag("graph has no nodes (max degree must be at least 1)");
        return report;
    }
    if (g.adjacency.size() != static_cast<std::size_t>(n) + 1) {
        flag("adjacency table does not cover all node ids");
        return report;
    }
    if (g.has_weights() && g.weight.size() != g.adjacency.size()) {
        flag("weight table does not cover all node ids");
        return report;
    }
    if (g.has_ties() && g.tie.size() != g.adjacency.size()) {
        flag("tie table does not cover all node ids");
        return report;
    }

    for (NodeId v = 1; v <= n; ++v) {
        const auto& list = g.adjacency[v];
        if (list.empty())
            flag("no isolated nodes allowed: " + node_label(g, v) + " has no neighbours");
        if (g.has_weights() && g.weight[v].size() != list.size())
            flag("weight list length mismatch at node " + std::to_string(v));
        if (g.has_ties() && !g.tie[v].empty() && g.tie[v].size() != list.size())
            flag("tie list length mismatch at node " + std::to_string(v));
        if (g.has_ties() && !g.tie[v].empty() && g.tie[v][0])
            flag("tie flag on first list position at node " + std::to_string(v));

        std::unordered_set<NodeId> seen;
        for (std::uint32_t k = 0; k < list.size(); ++k) {
            NodeId u = list[k];
            if (u < 1 || u > n) {
                flag("dangling neighbour id " + std::to_string(u) + " at node " + std::to_string(v));
                continue;
            }
            if (u == v)
                flag("self-loop at node " + std::to_string(v));
            if (!seen.insert(u).second)
                flag("repeated edge {" + std::to_string(v) + "," + std::to_string(u) + "}");
            if (g.is_red(v) == g.is_red(u))
                flag("not bipartite: edge {" + std::to_string(v) + "," + std::to_string(u) +
                     "} joins two " + (g.is_red(v) ? "red" : "blue") + " nodes");
            else {
                auto back = g.neighbour_position(u, v);
                if (!back)
                    flag("asymmetric adjacency: " + std::to_string(u) + " missing from the list of " +
                         std::to_string(v) + "'s neighbour " + std::to_string(u));
                else if (g.has_weights() && g.weight[v].size() == list.size() &&
                         g.weight[u].size() == g.adjacency[u].size() &&
                         g.weight[v][k] != g.weight[u][*back])
                    flag("edge weight mismatch on {" + std::to_string(v) + "," + std::to_string(u) + "}");
            }
            if (g.has_weights() && k < g.weight[v].size()) {
                if (g.weight[v][k] == 0)
                    flag("nonpositive weight on edge {" + std::to_string(v) + "," + std::to_string(u) + "}");
                if (k > 0 && g.weight[v][k] > g.weight[v][k - 1])
                    flag("weights do not respect preferences at node " + std::to_string(v) +
                         " (position " + std::to_string(k) + ")");
            }
        }
    }
    return report;
}

BicolouredGraph preferences_from_weights(const BicolouredGraph& g) {
    if (!g.has_weights())
        throw std::invalid_argument("preferences_from_weights: graph has no weights");
    BicolouredGraph out = g;
    out.tie.clear();
    for (NodeId v = 1; v <= g.node_count(); ++v) {
        const auto& list = g.adjacency[v];
        std::vector<std::uint32_t> order(list.size());
        std::iota(order.begin(), order.end(), 0u);
        for (std::uint32_t k = 0; k < list.size(); ++k)
            if (g.weight[v][k] == 0)
                throw std::invalid_argument("preferences_from_weights: nonpositive weight at node " +
                                            std::to_string(v));
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (g.weight[v][a] != g.weight[v][b]) return g.weight[v][a] > g.weight[v][b];
            return list[a] < list[b];
        });
        out.adjacency[v].clear();
        out.weight[v].clear();
        for (std::uint32_t k : order) {
            out.adjacency[v].push_back(list[k]);
            out.weight[v].push_back(g.weight[v][k]);
        }
    }
    return out;
}

BicolouredGraph unit_weights(const BicolouredGraph& g) {
    BicolouredGraph out = g;
    out.weight.assign(g.adjacency.size(), {});
    for (NodeId v = 1; v <= g.node_count(); ++v)
        out.weight[v].assign(g.adjacency[v].size(), 1u);
    return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
    throw std::runtime_error("graph parse error, line " + std::to_string(line_no) + ": " + why);
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        parse_fail(line_no, std::string("malformed ") + what + " '" + std::string(tok) + "'");
    return value;
}

}  // namespace

BicolouredGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    BicolouredGraph g;
    bool header_seen = false;
    // -1 unknown, 0 unweighted, 1 weighted; must be uniform across the file
    int weighted = -1;
    bool any_tie = false;
    std::vector<bool> defined;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (!header_seen) {
            if (tokens.size() != 2) parse_fail(line_no, "expected 'red_count blue_count'");
            g.red_count = static_cast<std::uint32_t>(parse_uint(tokens[0], line_no, "red count"));
            g.blue_count = static_cast<std::uint32_t>(parse_uint(tokens[1], line_no, "blue count"));
            g.adjacency.assign(g.node_count() + 1, {});
            g.weight.assign(g.node_count() + 1, {});
            g.tie.assign(g.node_count() + 1, {});
            defined.assign(g.node_count() + 1, false);
            header_seen = true;
            continue;
        }

        if (tokens.size() < 2 || tokens[1] != ":")
            parse_fail(line_no, "expected 'node_id : neighbours...'");
        NodeId v = static_cast<NodeId>(parse_uint(tokens[0], line_no, "node id"));
        if (v < 1 || v > g.node_count()) parse_fail(line_no, "node id " + std::to_string(v) + " out of range");
        if (defined[v]) parse_fail(line_no, "duplicate line for node " + std::to_string(v));
        defined[v] = true;

        for (std::size_t t = 2; t < tokens.size(); ++t) {
            std::string_view tok = tokens[t];
            bool tied = false;
            if (tok.size() > 4 && tok.substr(tok.size() - 4) == ",tie") {
                tied = true;
                tok.remove_suffix(4);
            }
            std::string_view id_part = tok;
            std::optional<std::uint32_t> w;
            if (auto colon = tok.find(':'); colon != std::string_view::npos) {
                id_part = tok.substr(0, colon);
                w = static_cast<std::uint32_t>(parse_uint(tok.substr(colon + 1), line_no, "weight"));
            }
            NodeId u = static_cast<NodeId>(parse_uint(id_part, line_no, "neighbour id"));
            if (weighted == -1)
                weighted = w.has_value() ? 1 : 0;
            else if (weighted != (w.has_value() ? 1 : 0))
                parse_fail(line_no, "mixed weighted and unweighted neighbour entries");
            if (tied && g.adjacency[v].empty())
                parse_fail(line_no, "tie flag on the first neighbour of node " + std::to_string(v));
            g.adjacency[v].push_back(u);
            if (w) g.weight[v].push_back(*w);
            g.tie[v].push_back(tied ? 1 : 0);
            any_tie = any_tie || tied;
        }
    }
    if (!header_seen) throw std::runtime_error("graph parse error: empty input");
    if (weighted != 1) g.weight.clear();
    if (!any_tie) g.tie.clear();

    ValidationReport report = validate(g);
    if (!report.ok()) {
        std::string msg = "graph rejected by validation:";
        for (const auto& violation : report.violations) msg += "\n  " + violation;
        throw std::runtime_error(msg);
    }
    return g;
}

std::string serialize_graph(const BicolouredGraph& g) {
    std::ostringstream out;
    out << g.red_count << ' ' << g.blue_count << '\n';
    for (NodeId v = 1; v <= g.node_count(); ++v) {
        out << v << " :";
        for (std::uint32_t k = 0; k < g.degree(v); ++k) {
            out << ' ' << g.adjacency[v][k];
            if (g.has_weights()) out << ':' << g.weight[v][k];
            if (g.has_ties() && !g.tie[v].empty() && g.tie[v][k]) out << ",tie";
        }
        out << '\n';
    }
    return out.str();
}

BicolouredGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void save_graph_file(const BicolouredGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    out << serialize_graph(g);
}

bool is_valid_matching(const BicolouredGraph& g, const Matching& m) {
    std::vector<bool> used(g.node_count() + 1, false);
    for (const Edge& e : m.edges) {
        if (!g.is_red(e.red) || !g.is_blue(e.blue)) return false;
        if (!g.neighbour_position(e.red, e.blue)) return false;
        if (used[e.red] || used[e.blue]) return false;
        used[e.red] = used[e.blue] = true;
    }
    return true;
}

std::vector<NodeId> partner_table(const BicolouredGraph& g, const Matching& m) {
    std::vector<NodeId> partner(g.node_count() + 1, kNoNode);
    for (const Edge& e : m.edges) {
        partner[e.red] = e.blue;
        partner[e.blue] = e.red;
    }
    return partner;
}

std::uint64_t matching_weight(const BicolouredGraph& g, const Matching& m) {
    std::uint64_t total = 0;
    for (const Edge& e : m.edges) {
        auto pos = g.neighbour_position(e.red, e.blue);
        total += pos ? g.weight_or_unit(e.red, *pos) : 0;
    }
    return total;
}

}  // namespace localgs
