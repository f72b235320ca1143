#include "localgs/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "localgs/engine.hpp"

namespace localgs {

PreferenceOracle::Reply GraphPreferenceOracle::lookup(NodeId v) const {
    if (v < 1 || v > g_->node_count())
        throw std::out_of_range("oracle query outside 1..n");
    return {g_->is_red(v), g_->adjacency[v]};
}

FilePreferenceOracle::FilePreferenceOracle(const std::string& path) : file_(path) {
    if (!file_) throw std::runtime_error("cannot open graph file: " + path);
    std::string line;
    bool header_seen = false;
    std::streamoff pos = file_.tellg();
    while (std::getline(file_, line)) {
        const std::streamoff line_start = pos;
        pos = file_.tellg();
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (!header_seen) {
            std::uint32_t r, b;
            if (ls >> r >> b) {
                red_count_ = r;
                blue_count_ = b;
                offset_.assign(node_count() + 1, -1);
                header_seen = true;
            }
            continue;
        }
        std::uint64_t id;
        if (ls >> id && id >= 1 && id <= node_count()) offset_[id] = line_start;
    }
    if (!header_seen) throw std::runtime_error("graph file has no header line: " + path);
    file_.clear();
}

PreferenceOracle::Reply FilePreferenceOracle::lookup(NodeId v) const {
    if (v < 1 || v > node_count()) throw std::out_of_range("oracle query outside 1..n");
    if (offset_[v] < 0) throw std::runtime_error("graph file has no line for node " + std::to_string(v));
    file_.clear();
    file_.seekg(offset_[v]);
    std::string line;
    std::getline(file_, line);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    Reply reply;
    reply.is_red = v <= red_count_;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;  // node id
    ls >> tok;  // ':'
    if (tok != ":") throw std::runtime_error("malformed node line for node " + std::to_string(v));
    while (ls >> tok) {
        // Strip the ",tie" mark and the ":weight" annotation; the oracle
        // exposes only the preference order.
        if (auto comma = tok.find(','); comma != std::string::npos) tok.resize(comma);
        if (auto colon = tok.find(':'); colon != std::string::npos) tok.resize(colon);
        reply.neighbours.push_back(static_cast<NodeId>(std::stoul(tok)));
    }
    return reply;
}

EstimatorParams estimator_params(std::uint32_t max_degree, double epsilon, double delta) {
    if (max_degree < 3) throw std::invalid_argument("estimator_params: max degree must be >= 3");
    if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("estimator_params: need 0 < eps <= 1");
    if (!(delta > 0 && delta <= 0.5)) throw std::invalid_argument("estimator_params: need 0 < delta <= 1/2");

    EstimatorParams p;
    p.max_degree = max_degree;
    p.epsilon = epsilon;
    p.delta = delta;
    p.gamma = epsilon / (8.0 * max_degree);

    // j: smallest integer >= 1 + (2 Delta - 2)/eps.
    const std::uint64_t two_dm2 = 2ull * max_degree - 2;
    std::uint64_t m = static_cast<std::uint64_t>(std::ceil(static_cast<double>(two_dm2) / epsilon));
    while (static_cast<double>(m) * epsilon < static_cast<double>(two_dm2)) ++m;
    while (m > 0 && static_cast<double>(m - 1) * epsilon >= static_cast<double>(two_dm2)) --m;
    p.local_rounds = static_cast<std::uint32_t>(1 + m);
    if (static_cast<double>(p.local_rounds) > 2.0 * max_degree / epsilon)
        throw std::logic_error("estimator_params: j exceeds 2 Delta / eps");

    // N: smallest integer >= 6 (Delta+1)/gamma^2 ln(6/delta), evaluated as
    // 384 Delta^2 (Delta+1) eps^-2 ln(6/delta) to keep the integer factor exact.
    const double n0 = 384.0 * max_degree * max_degree * (max_degree + 1.0) *
                      std::log(6.0 / delta) / (epsilon * epsilon);
    p.sample_size = static_cast<std::uint64_t>(std::ceil(n0));
    const double cap = 6250.0 * std::pow(max_degree - 1.0, 3.0) * std::log(1.0 / delta) /
                       (epsilon * epsilon);
    if (static_cast<double>(p.sample_size) > cap)
        throw std::logic_error("estimator_params: N exceeds 6250 (Delta-1)^3 eps^-2 ln(1/delta)");
    return p;
}

std::uint64_t query_budget(std::uint32_t max_degree, double epsilon, double delta) {
    if (max_degree < 3) throw std::invalid_argument("query_budget: max degree must be >= 3");
    if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("query_budget: need 0 < eps <= 1");
    if (!(delta > 0 && delta <= 0.5)) throw std::invalid_argument("query_budget: need 0 < delta <= 1/2");
    const double exponent = 3.0 + 4.0 * max_degree / epsilon;
    const double bound = 25000.0 * std::pow(max_degree - 1.0, exponent) * std::log(1.0 / delta) /
                         (epsilon * epsilon);
    if (bound >= static_cast<double>(std::numeric_limits<std::uint64_t>::max()))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::floor(bound));
}

Ball extract_ball(PreferenceOracle& oracle, NodeId centre, std::uint32_t radius) {
    // Per-extraction cache: one query per distinct node.
    std::unordered_map<NodeId, PreferenceOracle::Reply> replies;
    std::unordered_map<NodeId, std::uint32_t> dist;
    std::deque<NodeId> frontier;

    replies.emplace(centre, oracle.query(centre));
    dist.emplace(centre, 0);
    frontier.push_back(centre);
    std::vector<NodeId> order{centre};  // discovery order

    while (!frontier.empty()) {
        const NodeId v = frontier.front();
        frontier.pop_front();
        const std::uint32_t d = dist[v];
        if (d == radius) continue;  // boundary: do not expand
        for (NodeId u : replies[v].neighbours) {
            if (dist.count(u)) continue;
            replies.emplace(u, oracle.query(u));
            dist.emplace(u, d + 1);
            frontier.push_back(u);
            order.push_back(u);
        }
    }

    // Local ids: reds first in discovery order, then blues in discovery order.
    std::unordered_map<NodeId, NodeId> to_local;
    Ball ball;
    ball.to_global.push_back(kNoNode);
    for (NodeId v : order)
        if (replies[v].is_red) {
            to_local[v] = static_cast<NodeId>(ball.to_global.size());
            ball.to_global.push_back(v);
        }
    ball.graph.red_count = static_cast<std::uint32_t>(ball.to_global.size() - 1);
    for (NodeId v : order)
        if (!replies[v].is_red) {
            to_local[v] = static_cast<NodeId>(ball.to_global.size());
            ball.to_global.push_back(v);
        }
    ball.graph.blue_count = static_cast<std::uint32_t>(ball.to_global.size() - 1) - ball.graph.red_count;
    ball.centre_local = to_local[centre];

    ball.graph.adjacency.assign(ball.graph.node_count() + 1, {});
    for (NodeId v : order) {
        const auto& reply = replies[v];
        auto& list = ball.graph.adjacency[to_local[v]];
        for (NodeId u : reply.neighbours) {
            auto it = to_local.find(u);
            if (it == to_local.end()) {
                // Only boundary nodes may see out-of-ball neighbours.
                if (dist[v] != radius) throw std::runtime_error("oracle inconsistency: interior node has a neighbour outside the ball");
                continue;
            }
            if (replies[u].is_red == reply.is_red)
                throw std::runtime_error("oracle inconsistency: edge joins two same-coloured nodes");
            list.push_back(it->second);
        }
    }

    // Symmetry within the ball (boundary-to-outside edges were dropped).
    for (NodeId v = 1; v <= ball.graph.node_count(); ++v)
        for (NodeId u : ball.graph.adjacency[v])
            if (!ball.graph.neighbour_position(u, v))
                throw std::runtime_error("oracle inconsistency: asymmetric adjacency");
    return ball;
}

LocalMatchResult matched_in_mj_local(PreferenceOracle& oracle, NodeId red, std::uint32_t local_rounds) {
    if (local_rounds < 1) throw std::invalid_argument("matched_in_mj_local: need j >= 1");
    const std::uint64_t before = oracle.query_count();
    Ball ball = extract_ball(oracle, red, 2 * local_rounds);
    if (!ball.graph.is_red(ball.centre_local))
        throw std::invalid_argument("matched_in_mj_local: centre is not a red node");

    EngineState state = init(ball.graph);
    for (std::uint32_t i = 0; i < local_rounds; ++i) run_round(state);
    return {state.is_matched(ball.centre_local), oracle.query_count() - before};
}

EstimateReport estimate_size(PreferenceOracle& oracle, NodeId node_count, std::uint32_t max_degree,
                             double epsilon, double delta, NodeSampler& sampler,
                             std::uint64_t smoke_samples) {
    const EstimatorParams params = estimator_params(max_degree, epsilon, delta);
    EstimateReport report;
    report.node_count = node_count;
    report.max_degree = max_degree;
    report.epsilon = epsilon;
    report.delta = delta;
    report.gamma = params.gamma;
    report.local_rounds = params.local_rounds;
    report.smoke = smoke_samples > 0;
    const std::uint64_t n_samples = report.smoke ? smoke_samples : params.sample_size;
    report.sample_size = n_samples;

    const std::uint64_t queries_at_start = oracle.query_count();

    // Colour phase: X = reds among N uniform nodes.
    for (std::uint64_t i = 0; i < n_samples; ++i)
        if (oracle.query(sampler.sample(node_count)).is_red) ++report.colour_phase_reds;

    // Red phase: first N reds among 2(Delta+1)N uniform draws.
    std::vector<NodeId> reds;
    reds.reserve(n_samples);
    const std::uint64_t red_phase_draws = 2ull * (max_degree + 1) * n_samples;
    for (std::uint64_t i = 0; i < red_phase_draws && reds.size() < n_samples; ++i) {
        const NodeId v = sampler.sample(node_count);
        if (oracle.query(v).is_red) reds.push_back(v);
    }
    if (reds.size() < n_samples) {
        report.failed = true;
        report.queries = oracle.query_count() - queries_at_start;
        return report;
    }

    // Local phase: Y = sampled reds matched in M_j.
    for (NodeId r : reds)
        if (matched_in_mj_local(oracle, r, params.local_rounds).matched) ++report.matched_reds;

    // m_hat = n * (X/N) * (Y/N), kept as an exact rational.
    const unsigned __int128 num = static_cast<unsigned __int128>(node_count) *
                                  report.colour_phase_reds * report.matched_reds;
    const unsigned __int128 den = static_cast<unsigned __int128>(n_samples) * n_samples;
    if (num > std::numeric_limits<std::uint64_t>::max() ||
        den > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("estimate_size: rational estimate exceeds 64 bits");
    report.estimate_num = static_cast<std::uint64_t>(num);
    report.estimate_den = static_cast<std::uint64_t>(den);
    report.queries = oracle.query_count() - queries_at_start;
    return report;
}

std::string EstimateReport::json() const {
    std::ostringstream out;
    out << "{\"n\": " << node_count << ", \"max_degree\": " << max_degree
        << ", \"epsilon\": " << epsilon << ", \"delta\": " << delta << ", \"gamma\": " << gamma
        << ", \"j\": " << local_rounds << ", \"N\": " << sample_size << ", \"X\": " << colour_phase_reds
        << ", \"Y\": " << matched_reds << ", \"m_hat\": [" << estimate_num << ", " << estimate_den
        << "], \"queries\": " << queries << ", \"failed\": " << (failed ? "true" : "false")
        << ", \"smoke\": " << (smoke ? "true" : "false") << "}";
    return out.str();
}

}  // namespace localgs
