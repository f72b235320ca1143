#ifndef LOCALGS_ESTIMATOR_HPP
#define LOCALGS_ESTIMATOR_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "localgs/graph.hpp"
#include "localgs/rng.hpp"

namespace localgs {

/// Black-box access to a bicoloured graph: a query returns the node's colour
/// and its neighbours in preference order. Every call is counted.
class PreferenceOracle {
public:
    struct Reply {
        bool is_red = false;
        std::vector<NodeId> neighbours;
    };

    virtual ~PreferenceOracle() = default;

    Reply query(NodeId v) {
        ++queries_;
        return lookup(v);
    }
    std::uint64_t query_count() const { return queries_; }

protected:
    virtual Reply lookup(NodeId v) const = 0;

private:
    std::uint64_t queries_ = 0;
};

/// Oracle over an in-memory graph. Replies use the tie-broken strict order;
/// weights and tie marks are not visible through the oracle.
class GraphPreferenceOracle final : public PreferenceOracle {
public:
    explicit GraphPreferenceOracle(const BicolouredGraph& g) : g_(&g) {}

protected:
    Reply lookup(NodeId v) const override;

private:
    const BicolouredGraph* g_;
};

/// Oracle over a graph file, answering queries by indexed access: one pass
/// at construction records the byte offset of every node line, and each
/// query seeks and parses just that line. Only the offset table is held in
/// memory, so huge instances can be sampled without loading the graph.
class FilePreferenceOracle final : public PreferenceOracle {
public:
    explicit FilePreferenceOracle(const std::string& path);

    NodeId node_count() const { return red_count_ + blue_count_; }
    std::uint32_t red_count() const { return red_count_; }

protected:
    Reply lookup(NodeId v) const override;

private:
    mutable std::ifstream file_;
    std::uint32_t red_count_ = 0;
    std::uint32_t blue_count_ = 0;
    std::vector<std::streamoff> offset_;  // per node id; -1 when absent
};

/// Source of uniform node ids in [1, n]; injectable so that the sampling
/// procedure is deterministic under test.
class NodeSampler {
public:
    virtual ~NodeSampler() = default;
    virtual NodeId sample(NodeId node_count) = 0;
};

class SeededNodeSampler final : public NodeSampler {
public:
    explicit SeededNodeSampler(std::uint64_t seed) : rng_(seed) {}
    NodeId sample(NodeId node_count) override {
        return static_cast<NodeId>(rng_.between(1, node_count));
    }

private:
    Rng rng_;
};

/// Derived sampling parameters: gamma = eps/(8 Delta), j the local round
/// count, N the per-phase sample size.
struct EstimatorParams {
    std::uint32_t max_degree = 0;
    double epsilon = 0;
    double delta = 0;
    double gamma = 0;
    std::uint32_t local_rounds = 0;  // j
    std::uint64_t sample_size = 0;   // N
};

/// Requires Delta >= 3, 0 < eps <= 1, 0 < delta <= 1/2. j is the smallest
/// integer >= 1 + (2 Delta - 2)/eps (and stays <= 2 Delta/eps); N is the
/// smallest integer >= 6 (Delta+1)/gamma^2 * ln(6/delta) (and stays
/// <= 6250 (Delta-1)^3 eps^-2 ln(1/delta)).
EstimatorParams estimator_params(std::uint32_t max_degree, double epsilon, double delta);

/// Closed-form ceiling on oracle queries:
/// floor(25000 eps^-2 (Delta-1)^(3 + 4 Delta/eps) ln(1/delta)), saturating
/// at uint64 max when the closed form exceeds it.
std::uint64_t query_budget(std::uint32_t max_degree, double epsilon, double delta);

/// Induced subgraph on all nodes within `radius` hops of `centre`, extracted
/// by breadth-first oracle exploration. Nodes at exactly the boundary
/// distance keep only in-ball neighbours; interior preference lists are
/// complete. Each distinct node is queried once per extraction.
struct Ball {
    BicolouredGraph graph;
    NodeId centre_local = kNoNode;
    std::vector<NodeId> to_global;  // local id -> global id, [0] unused
};
Ball extract_ball(PreferenceOracle& oracle, NodeId centre, std::uint32_t radius);

/// Whether `red` is matched in M_j, decided from the radius-2j ball alone.
/// Equals the node's matched status after j rounds of the global run.
struct LocalMatchResult {
    bool matched = false;
    std::uint64_t queries = 0;
};
LocalMatchResult matched_in_mj_local(PreferenceOracle& oracle, NodeId red, std::uint32_t local_rounds);

/// One run of the three-phase sampling procedure.
struct EstimateReport {
    NodeId node_count = 0;
    std::uint32_t max_degree = 0;
    double epsilon = 0, delta = 0, gamma = 0;
    std::uint32_t local_rounds = 0;   // j
    std::uint64_t sample_size = 0;    // N actually used
    std::uint64_t colour_phase_reds = 0;  // X
    std::uint64_t matched_reds = 0;       // Y
    std::uint64_t estimate_num = 0;   // m_hat = estimate_num / estimate_den, exact
    std::uint64_t estimate_den = 1;
    std::uint64_t queries = 0;
    bool failed = false;
    bool smoke = false;  // reduced sample size, no guarantee

    double estimate() const { return static_cast<double>(estimate_num) / static_cast<double>(estimate_den); }
    std::string json() const;
};

/// Theorem-style estimator for |M_infinity|: colour phase (X red among N
/// uniform nodes), red phase (first N reds among 2(Delta+1)N uniform draws,
/// FAILURE if they do not occur), local phase (Y of the N reds matched in
/// M_j). Outputs n * (X/N) * (Y/N). `smoke_samples`, when nonzero, replaces
/// N with a small sample count and drops the accuracy guarantee.
EstimateReport estimate_size(PreferenceOracle& oracle, NodeId node_count, std::uint32_t max_degree,
                             double epsilon, double delta, NodeSampler& sampler,
                             std::uint64_t smoke_samples = 0);

}  // namespace localgs

#endif
