#ifndef LOCALGS_ANALYSIS_HPP
#define LOCALGS_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "localgs/engine.hpp"
#include "localgs/graph.hpp"

namespace localgs {

/// All edges outside m whose both endpoints are unmatched or strictly prefer
/// each other to their current match. With ties, "strictly prefers" means a
/// strictly earlier tie group (weak stability).
std::vector<Edge> unstable_edges(const BicolouredGraph& g, const Matching& m);

/// f_i per red node and their sum, read off an end-of-round engine state:
/// 0 when r is matched or out of candidates, otherwise the weight of r's
/// best remaining candidate.
struct Potential {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_red;  // indexed by red id, [0] unused
};
Potential potential(const EngineState& state);

/// Definition check: at most eps * |m| unstable edges. An empty matching is
/// epsilon-stable only when nothing is unstable.
bool is_epsilon_stable(const BicolouredGraph& g, const Matching& m, double epsilon);

/// Smallest integer i >= 1 + max_degree*(max_degree-1)/epsilon. Running that
/// many rounds yields an epsilon-stable matching (T = 2i <= 4 + 2*Delta^2/eps).
std::uint32_t rounds_for_stability(std::uint32_t max_degree, double epsilon);

/// Smallest integer i >= 1 + (max_degree-1)/epsilon. Running that many rounds
/// on weight-derived preferences yields a (2+eps)-approximation of the
/// maximum-weight matching (T = 2i <= 4 + 2*Delta/eps).
std::uint32_t rounds_for_weight(std::uint32_t max_degree, double epsilon);

/// Per-round inequality checks. Every row must hold on a correct run; a
/// false entry means an engine bug, not a property of the instance.
struct LemmaRow {
    std::uint32_t round = 0;
    // f_i(R) <= w(L_i) - w(L_{i-1})
    bool lemma2 = false;
    std::uint64_t lemma2_lhs = 0, lemma2_rhs = 0;
    // f_i(R) <= f_{i-1}(R)
    bool lemma3 = false;
    std::uint64_t lemma3_lhs = 0, lemma3_rhs = 0;
    // w(L_i) >= (i-1) f_i(R)
    bool lemma4 = false;
    std::uint64_t lemma4_lhs = 0, lemma4_rhs = 0;
    // w(L_i) <= (Delta-1) w_i(B)
    bool lemma5 = false;
    std::uint64_t lemma5_lhs = 0, lemma5_rhs = 0;
    // u_i <= Delta f_i(R)
    bool thm1_bound = false;
    std::uint64_t thm1_lhs = 0, thm1_rhs = 0;

    bool all() const { return lemma2 && lemma3 && lemma4 && lemma5 && thm1_bound; }
};

struct LemmaReport {
    std::vector<LemmaRow> rows;  // one per round i >= 2

    bool all_hold() const;
    /// Rounds whose row has a false entry.
    std::vector<std::uint32_t> failing_rounds() const;
    std::string csv() const;
};

/// Evaluates Lemmas 2-5 and the u_i <= Delta f_i(R) bound on rounds
/// 2..trace.rounds(). Needs a trace of at least two rounds.
LemmaReport check_lemmas(const RoundTrace& trace, std::uint32_t max_degree);

}  // namespace localgs

#endif
