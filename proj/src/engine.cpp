#include "localgs/engine.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "localgs/analysis.hpp"

namespace localgs {

Matching EngineState::matching() const {
    std::vector<Edge> edges;
    for (NodeId r = 1; r <= graph->red_count; ++r)
        if (match[r] != kNoNode) edges.push_back({r, match[r]});
    return Matching(std::move(edges));
}

bool EngineState::views_consistent() const {
    for (NodeId r = 1; r <= graph->red_count; ++r)
        if (match[r] != kNoNode && match[match[r]] != r) return false;
    for (NodeId b = graph->red_count + 1; b <= graph->node_count(); ++b)
        if (match[b] != kNoNode && match[match[b]] != b) return false;
    return true;
}

EngineState init(const BicolouredGraph& g) {
    EngineState s;
    s.graph = &g;
    s.head.assign(g.node_count() + 1, 0);
    s.pending.assign(g.node_count() + 1, kNoNode);
    s.match.assign(g.node_count() + 1, kNoNode);
    s.proposals.assign(g.node_count() + 1, {});
    return s;
}

namespace {

[[noreturn]] void fault(const std::string& what) {
    throw std::logic_error("engine protocol fault: " + what);
}

enum Reply : std::uint8_t { kNoReply = 0, kAccept = 1, kReject = 2 };

}  // namespace

RoundStats run_round(EngineState& s, std::vector<Message>* log) {
    const BicolouredGraph& g = *s.graph;
    RoundStats stats;
    s.round += 1;

    // Response slots filled by the blue turn, consumed by the red turn of the
    // same round: at most one accept-or-reject (from c(r)) and one break
    // (from p(r)) can arrive per red node per round.
    std::vector<std::uint8_t> reply(g.red_count + 1, kNoReply);
    std::vector<NodeId> break_from(g.red_count + 1, kNoNode);

    // Blue turn.
    for (NodeId b = g.red_count + 1; b <= g.node_count(); ++b) {
        auto& proposers = s.proposals[b];
        if (proposers.empty()) continue;

        const NodeId current = s.match[b];
        NodeId best = current;
        std::uint32_t best_pos = std::numeric_limits<std::uint32_t>::max();
        if (current != kNoNode) {
            auto pos = g.neighbour_position(b, current);
            if (!pos) fault("blue node matched to a non-neighbour");
            best_pos = *pos;
        }
        for (NodeId r : proposers) {
            if (r == current) fault("proposal from the current partner");
            auto pos = g.neighbour_position(b, r);
            if (!pos) fault("proposal from a non-adjacent node");
            if (*pos < best_pos) {
                best = r;
                best_pos = *pos;
            }
        }

        if (best != current) {
            if (current != kNoNode) {
                break_from[current] = b;
                ++stats.breaks;
                if (log) log->push_back({MsgKind::Break, b, current});
            }
            if (reply[best] != kNoReply) fault("two responses to one red node in one turn");
            reply[best] = kAccept;
            ++stats.accepts;
            if (log) log->push_back({MsgKind::Accept, b, best});
            s.match[b] = best;
        }
        for (NodeId r : proposers) {
            if (r == best) continue;
            if (reply[r] != kNoReply) fault("two responses to one red node in one turn");
            reply[r] = kReject;
            ++stats.rejects;
            if (log) log->push_back({MsgKind::Reject, b, r});
        }
        proposers.clear();
    }

    // Red turn.
    for (NodeId r = 1; r <= g.red_count; ++r) {
        if (s.pending[r] != kNoNode) {
            if (reply[r] == kNoReply) fault("no response to an outstanding proposal");
            if (reply[r] == kAccept) {
                s.match[r] = s.pending[r];
            } else {
                if (g.adjacency[r][s.head[r]] != s.pending[r]) fault("rejected candidate is not the list head");
                stats.lost.push_back({r, s.pending[r]});
                ++s.head[r];
            }
            s.pending[r] = kNoNode;
        } else if (reply[r] != kNoReply) {
            fault("response without an outstanding proposal");
        }

        if (break_from[r] != kNoNode) {
            if (s.match[r] != break_from[r]) fault("break from a node that is not the partner");
            if (g.adjacency[r][s.head[r]] != s.match[r]) fault("broken partner is not the list head");
            stats.lost.push_back({r, s.match[r]});
            ++s.head[r];
            s.match[r] = kNoNode;
        }

        if (s.match[r] == kNoNode && s.head[r] < g.degree(r)) {
            const NodeId b = g.adjacency[r][s.head[r]];
            s.pending[r] = b;
            s.proposals[b].push_back(r);
            ++stats.proposes;
            if (log) log->push_back({MsgKind::Propose, r, b});
        }
    }
    return stats;
}

namespace {

/// Accumulates L_i across rounds and samples a TraceRow after each red turn.
class TraceBuilder {
public:
    explicit TraceBuilder(const BicolouredGraph& g) : g_(g) {}

    TraceRow capture(const EngineState& s, const RoundStats& stats) {
        if (!s.views_consistent()) fault("red-side and blue-side matchings disagree");
        TraceRow row;
        row.round = s.round;
        row.matching = s.matching();
        row.matching_size = row.matching.size();
        for (NodeId r = 1; r <= g_.red_count; ++r) {
            if (s.match[r] != kNoNode)
                row.blue_weight += g_.weight_or_unit(r, s.head[r]);
            else if (s.head[r] < g_.degree(r))
                row.potential += g_.weight_or_unit(r, s.head[r]);
        }
        for (const Edge& e : stats.lost) {
            auto pos = g_.neighbour_position(e.red, e.blue);
            lost_weight_ += g_.weight_or_unit(e.red, *pos);
        }
        lost_count_ += stats.lost.size();
        row.lost_count = lost_count_;
        row.lost_weight = lost_weight_;
        row.lost_delta = stats.lost;
        row.unstable = unstable_edges(g_, row.matching).size();
        row.proposes = stats.proposes;
        row.accepts = stats.accepts;
        row.rejects = stats.rejects;
        row.breaks = stats.breaks;
        return row;
    }

private:
    const BicolouredGraph& g_;
    std::uint64_t lost_count_ = 0;
    std::uint64_t lost_weight_ = 0;
};

}  // namespace

RoundTrace run_rounds(const BicolouredGraph& g, std::uint32_t rounds) {
    if (rounds < 1) throw std::invalid_argument("run_rounds: need at least one round");
    RoundTrace trace;
    trace.rows.reserve(rounds);
    EngineState s = init(g);
    TraceBuilder builder(g);
    bool converged = false;
    for (std::uint32_t i = 1; i <= rounds; ++i) {
        if (converged) {
            // Nothing can change after a quiet round; replay the last row.
            TraceRow row = trace.rows.back();
            row.round = i;
            row.proposes = row.accepts = row.rejects = row.breaks = 0;
            row.lost_delta.clear();
            trace.rows.push_back(std::move(row));
            continue;
        }
        RoundStats stats = run_round(s);
        trace.rows.push_back(builder.capture(s, stats));
        if (i >= 2 && stats.quiet()) converged = true;
    }
    return trace;
}

ConvergenceResult run_to_convergence(const BicolouredGraph& g) {
    const std::uint64_t round_cap = g.edge_count() + 2;
    EngineState s = init(g);
    for (;;) {
        RoundStats stats = run_round(s);
        if (s.round >= 2 && stats.quiet()) break;
        if (s.round > round_cap) fault("run did not converge within |E|+2 rounds");
    }
    if (!s.views_consistent()) fault("red-side and blue-side matchings disagree");
    ConvergenceResult result{s.matching(), s.round};
    if (!unstable_edges(g, result.matching).empty()) fault("converged matching is not stable");
    return result;
}

ConvergenceTrace run_to_convergence_trace(const BicolouredGraph& g) {
    const std::uint64_t round_cap = g.edge_count() + 2;
    ConvergenceTrace out;
    EngineState s = init(g);
    TraceBuilder builder(g);
    for (;;) {
        RoundStats stats = run_round(s);
        out.trace.rows.push_back(builder.capture(s, stats));
        if (s.round >= 2 && stats.quiet()) break;
        if (s.round > round_cap) fault("run did not converge within |E|+2 rounds");
    }
    if (out.trace.rows.back().unstable != 0) fault("converged matching is not stable");
    out.round = s.round;
    return out;
}

std::string RoundTrace::csv() const {
    std::ostringstream out;
    out << "round,matching_size,blue_weight,potential,lost_count,lost_weight,unstable,"
           "msgs_propose,msgs_accept,msgs_reject,msgs_break\n";
    for (const TraceRow& r : rows)
        out << r.round << ',' << r.matching_size << ',' << r.blue_weight << ',' << r.potential << ','
            << r.lost_count << ',' << r.lost_weight << ',' << r.unstable << ',' << r.proposes << ','
            << r.accepts << ',' << r.rejects << ',' << r.breaks << '\n';
    return out.str();
}

}  // namespace localgs
