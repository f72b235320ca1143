#include "localgs/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace localgs {

std::vector<Edge> unstable_edges(const BicolouredGraph& g, const Matching& m) {
    std::vector<NodeId> partner = partner_table(g, m);
    // group_rank[v] = tie group of v's current partner, or "worse than any".
    auto partner_group = [&](NodeId v) -> std::uint64_t {
        if (partner[v] == kNoNode) return std::numeric_limits<std::uint64_t>::max();
        auto pos = g.neighbour_position(v, partner[v]);
        if (!pos) throw std::invalid_argument("matching contains a non-edge");
        return g.group_of_position(v, *pos);
    };
    std::vector<std::uint64_t> current(g.node_count() + 1);
    for (NodeId v = 1; v <= g.node_count(); ++v) current[v] = partner_group(v);

    std::vector<Edge> out;
    for (NodeId r = 1; r <= g.red_count; ++r) {
        const auto& list = g.adjacency[r];
        for (std::uint32_t k = 0; k < list.size(); ++k) {
            const NodeId b = list[k];
            if (partner[r] == b) continue;
            if (g.group_of_position(r, k) >= current[r]) continue;
            auto back = g.neighbour_position(b, r);
            if (g.group_of_position(b, *back) >= current[b]) continue;
            out.push_back({r, b});
        }
    }
    return out;
}

Potential potential(const EngineState& state) {
    const BicolouredGraph& g = *state.graph;
    Potential p;
    p.per_red.assign(g.red_count + 1, 0);
    for (NodeId r = 1; r <= g.red_count; ++r) {
        if (state.match[r] != kNoNode || state.head[r] >= g.degree(r)) continue;
        p.per_red[r] = g.weight_or_unit(r, state.head[r]);
        p.total += p.per_red[r];
    }
    return p;
}

bool is_epsilon_stable(const BicolouredGraph& g, const Matching& m, double epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("is_epsilon_stable: epsilon must be positive");
    const double unstable = static_cast<double>(unstable_edges(g, m).size());
    return unstable <= epsilon * static_cast<double>(m.size());
}

namespace {

/// Smallest integer i >= 1 + numerator/epsilon, computed so that floating
/// point noise cannot move the answer across an integer boundary.
std::uint32_t rounds_threshold(std::uint64_t numerator, double epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("round count: epsilon must be positive");
    if (numerator == 0) return 1;
    auto reaches = [&](std::uint64_t m) {  // m >= numerator/epsilon ?
        return static_cast<double>(m) * epsilon >= static_cast<double>(numerator);
    };
    std::uint64_t m = static_cast<std::uint64_t>(std::ceil(static_cast<double>(numerator) / epsilon));
    while (!reaches(m)) ++m;
    while (m > 0 && reaches(m - 1)) --m;
    return static_cast<std::uint32_t>(1 + m);
}

}  // namespace

std::uint32_t rounds_for_stability(std::uint32_t max_degree, double epsilon) {
    if (max_degree < 1) throw std::invalid_argument("rounds_for_stability: max degree must be >= 1");
    return rounds_threshold(static_cast<std::uint64_t>(max_degree) * (max_degree - 1), epsilon);
}

std::uint32_t rounds_for_weight(std::uint32_t max_degree, double epsilon) {
    if (max_degree < 1) throw std::invalid_argument("rounds_for_weight: max degree must be >= 1");
    return rounds_threshold(max_degree - 1, epsilon);
}

bool LemmaReport::all_hold() const {
    for (const LemmaRow& row : rows)
        if (!row.all()) return false;
    return true;
}

std::vector<std::uint32_t> LemmaReport::failing_rounds() const {
    std::vector<std::uint32_t> out;
    for (const LemmaRow& row : rows)
        if (!row.all()) out.push_back(row.round);
    return out;
}

LemmaReport check_lemmas(const RoundTrace& trace, std::uint32_t max_degree) {
    if (trace.rounds() < 2)
        throw std::invalid_argument("check_lemmas: need a trace of at least two rounds");
    LemmaReport report;
    for (std::uint32_t i = 2; i <= trace.rounds(); ++i) {
        const TraceRow& cur = trace.row(i);
        const TraceRow& prev = trace.row(i - 1);
        LemmaRow row;
        row.round = i;
        row.lemma2_lhs = cur.potential;
        row.lemma2_rhs = cur.lost_weight - prev.lost_weight;
        row.lemma2 = row.lemma2_lhs <= row.lemma2_rhs;
        row.lemma3_lhs = cur.potential;
        row.lemma3_rhs = prev.potential;
        row.lemma3 = row.lemma3_lhs <= row.lemma3_rhs;
        row.lemma4_lhs = cur.lost_weight;
        row.lemma4_rhs = static_cast<std::uint64_t>(i - 1) * cur.potential;
        row.lemma4 = row.lemma4_lhs >= row.lemma4_rhs;
        row.lemma5_lhs = cur.lost_weight;
        row.lemma5_rhs = static_cast<std::uint64_t>(max_degree - 1) * cur.blue_weight;
        row.lemma5 = row.lemma5_lhs <= row.lemma5_rhs;
        row.thm1_lhs = cur.unstable;
        row.thm1_rhs = static_cast<std::uint64_t>(max_degree) * cur.potential;
        row.thm1_bound = row.thm1_lhs <= row.thm1_rhs;
        report.rows.push_back(row);
    }
    return report;
}

std::string LemmaReport::csv() const {
    std::ostringstream out;
    out << "round,lemma2,lemma2_lhs,lemma2_rhs,lemma3,lemma3_lhs,lemma3_rhs,"
           "lemma4,lemma4_lhs,lemma4_rhs,lemma5,lemma5_lhs,lemma5_rhs,"
           "thm1,thm1_lhs,thm1_rhs\n";
    for (const LemmaRow& r : rows)
        out << r.round << ',' << r.lemma2 << ',' << r.lemma2_lhs << ',' << r.lemma2_rhs << ','
            << r.lemma3 << ',' << r.lemma3_lhs << ',' << r.lemma3_rhs << ',' << r.lemma4 << ','
            << r.lemma4_lhs << ',' << r.lemma4_rhs << ',' << r.lemma5 << ',' << r.lemma5_lhs << ','
            << r.lemma5_rhs << ',' << r.thm1_bound << ',' << r.thm1_lhs << ',' << r.thm1_rhs << '\n';
    return out.str();
}

}  // namespace localgs
