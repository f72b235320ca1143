#ifndef LOCALGS_ENGINE_HPP
#define LOCALGS_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "localgs/graph.hpp"

namespace localgs {

enum class MsgKind { Propose, Accept, Reject, Break };

/// One message on an edge. Propose flows red->blue, the rest blue->red.
struct Message {
    MsgKind kind;
    NodeId from = kNoNode;
    NodeId to = kNoNode;
};

/// Full node-level state of the distributed run. Red candidate lists only
/// ever lose a prefix, so C(r) is represented as adjacency[r][head[r]..).
struct EngineState {
    const BicolouredGraph* graph = nullptr;

    std::vector<std::uint32_t> head;    // red: first live candidate position
    std::vector<NodeId> pending;        // red: c(r), proposal awaiting a response
    std::vector<NodeId> match;          // both colours: p(v)
    std::vector<std::vector<NodeId>> proposals;  // blue inbox for the next blue turn

    std::uint32_t round = 0;

    bool is_matched(NodeId v) const { return match[v] != kNoNode; }

    /// C(r) as a view into r's preference list.
    const NodeId* candidates_begin(NodeId r) const { return graph->adjacency[r].data() + head[r]; }
    const NodeId* candidates_end(NodeId r) const {
        return graph->adjacency[r].data() + graph->adjacency[r].size();
    }
    std::uint32_t candidates_size(NodeId r) const { return graph->degree(r) - head[r]; }

    /// M_i read off the red-side variables.
    Matching matching() const;

    /// Red-side and blue-side matchings must agree at every round end.
    bool views_consistent() const;
};

/// What happened during one round.
struct RoundStats {
    std::uint32_t proposes = 0;
    std::uint32_t accepts = 0;
    std::uint32_t rejects = 0;
    std::uint32_t breaks = 0;
    std::vector<Edge> lost;  // edges dropped from candidate lists this round

    bool quiet() const { return rejects == 0 && breaks == 0; }
};

/// Everything sampled at the end of round i.
struct TraceRow {
    std::uint32_t round = 0;
    std::uint64_t matching_size = 0;  // |M_i|
    std::uint64_t blue_weight = 0;    // w_i(B)
    std::uint64_t potential = 0;      // f_i(R)
    std::uint64_t lost_count = 0;     // |L_i|
    std::uint64_t lost_weight = 0;    // w(L_i)
    std::uint64_t unstable = 0;       // u_i
    std::uint32_t proposes = 0, accepts = 0, rejects = 0, breaks = 0;
    Matching matching;                // M_i
    std::vector<Edge> lost_delta;     // L_i minus L_{i-1}
};

struct RoundTrace {
    std::vector<TraceRow> rows;  // rows[i-1] describes round i

    const TraceRow& row(std::uint32_t round) const { return rows.at(round - 1); }
    std::uint32_t rounds() const { return static_cast<std::uint32_t>(rows.size()); }

    /// CSV with the columns round, |M_i|, w_i(B), f_i(R), |L_i|, w(L_i), u_i,
    /// msgs_propose, msgs_accept, msgs_reject, msgs_break.
    std::string csv() const;
};

/// Fresh state: every C(r) is the full preference list, everything unmatched,
/// nothing in flight. The state refers into g, which must outlive it.
EngineState init(const BicolouredGraph& g);

/// One round: blue turn, then red turn. Messages sent during a blue turn are
/// consumed in the same round's red turn; proposals sent during a red turn
/// are consumed in the next round's blue turn. When `log` is non-null every
/// message sent is appended in order.
RoundStats run_round(EngineState& state, std::vector<Message>* log = nullptr);

/// Runs rounds 1..i and samples every trace quantity after each red turn.
RoundTrace run_rounds(const BicolouredGraph& g, std::uint32_t i);

struct ConvergenceResult {
    Matching matching;        // M_infinity
    std::uint32_t round = 0;  // z, first round >= 2 with no reject or break
};

/// Runs until the first round z >= 2 in which no reject and no break was
/// received. The returned matching is stable; z <= |E| + 2.
ConvergenceResult run_to_convergence(const BicolouredGraph& g);

/// Same stopping rule, with the full per-round trace kept.
struct ConvergenceTrace {
    RoundTrace trace;
    std::uint32_t round = 0;  // z
};
ConvergenceTrace run_to_convergence_trace(const BicolouredGraph& g);

}  // namespace localgs

#endif
