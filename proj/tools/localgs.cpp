#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "localgs/analysis.hpp"
#include "localgs/engine.hpp"
#include "localgs/estimator.hpp"
#include "localgs/generator.hpp"
#include "localgs/graph.hpp"
#include "localgs/reference.hpp"
#include "localgs/rng.hpp"

namespace {

using namespace localgs;

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string ratio_str(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(num) / static_cast<double>(den));
    return buf;
}

int cmd_generate(const GeneratorOptions& opt, const std::string& out_path) {
    BicolouredGraph g = generate_random(opt);
    write_file_atomic(out_path, serialize_graph(g));
    std::cout << "red=" << g.red_count << " blue=" << g.blue_count << " edges=" << g.edge_count()
              << " max_degree=" << g.max_degree() << " -> " << out_path << "\n";
    return 0;
}

int cmd_run(const std::string& graph_path, std::uint32_t rounds, bool to_convergence,
            const std::string& trace_out) {
    BicolouredGraph g = load_graph_file(graph_path);
    RoundTrace trace;
    std::uint32_t z = 0;
    if (to_convergence) {
        ConvergenceTrace ct = run_to_convergence_trace(g);
        trace = std::move(ct.trace);
        z = ct.round;
    } else {
        trace = run_rounds(g, rounds);
    }
    if (!trace_out.empty()) write_file_atomic(trace_out, trace.csv());

    const TraceRow& last = trace.rows.back();
    std::cout << "rounds=" << last.round << " matching=" << last.matching_size
              << " unstable=" << last.unstable << " potential=" << last.potential
              << " eps_achieved=" << ratio_str(last.unstable, last.matching_size);
    if (to_convergence) std::cout << " z=" << z;
    std::cout << "\n";
    return 0;
}

struct RandomFamily {
    std::uint32_t count = 0;
    GeneratorOptions base;
};

BicolouredGraph family_instance(const RandomFamily& fam, std::uint32_t index) {
    GeneratorOptions opt = fam.base;
    opt.seed = Rng::derive(fam.base.seed, index);
    return generate_random(opt);
}

int cmd_verify(const std::string& graph_path, const RandomFamily& fam, double epsilon,
               const std::string& mode) {
    const std::uint32_t total = graph_path.empty() ? fam.count : 1;
    std::uint32_t failures = 0;
    for (std::uint32_t k = 0; k < total; ++k) {
        BicolouredGraph g = graph_path.empty() ? family_instance(fam, k) : load_graph_file(graph_path);
        // For generated instances the requested cap is a valid degree bound
        // even when the realized maximum is smaller.
        const std::uint32_t delta = graph_path.empty() ? fam.base.max_degree : g.max_degree();
        bool ok = true;
        std::string detail;

        if (mode == "stability") {
            const std::uint32_t i = rounds_for_stability(delta, epsilon);
            RoundTrace trace = run_rounds(g, i);
            const TraceRow& row = trace.row(i);
            ok = is_epsilon_stable(g, row.matching, epsilon);
            detail = "i=" + std::to_string(i) + " unstable=" + std::to_string(row.unstable) +
                     " matching=" + std::to_string(row.matching_size);
        } else if (mode == "weight") {
            if (!g.has_weights()) throw std::runtime_error("weight mode needs a weighted graph");
            if (g.edge_count() > kBruteForceEdgeCap)
                throw std::runtime_error("weight mode refused: more than " +
                                         std::to_string(kBruteForceEdgeCap) +
                                         " edges (brute-force oracle cap)");
            const std::uint32_t i = rounds_for_weight(delta, epsilon);
            RoundTrace trace = run_rounds(g, i);
            const std::uint64_t w_star = matching_weight(g, max_weight_matching_bruteforce(g));
            const std::uint64_t w_i = trace.row(i).blue_weight;
            ok = static_cast<double>(w_star) <= (2.0 + epsilon) * static_cast<double>(w_i);
            detail = "i=" + std::to_string(i) + " w_star=" + std::to_string(w_star) +
                     " w_i=" + std::to_string(w_i);
        } else if (mode == "lemmas") {
            ConvergenceTrace ct = run_to_convergence_trace(g);
            LemmaReport report = check_lemmas(ct.trace, delta);
            ok = report.all_hold();
            detail = "rounds=" + std::to_string(ct.round);
            if (!ok) detail += " failing_round=" + std::to_string(report.failing_rounds().front());
        } else {
            throw std::runtime_error("unknown mode: " + mode);
        }

        if (!ok) {
            ++failures;
            std::cout << "FAIL instance " << k << " (" << detail << ")\n";
        }
    }
    std::cout << mode << ": " << (total - failures) << "/" << total << " passed\n";
    return failures == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& graph_path, const RandomFamily& fam, std::uint32_t max_rounds,
              double epsilon, const std::string& out_path) {
    BicolouredGraph g = graph_path.empty() ? family_instance(fam, 0) : load_graph_file(graph_path);
    RoundTrace trace = run_rounds(g, max_rounds);

    std::string csv = "round,instability_ratio\n";
    for (const TraceRow& row : trace.rows)
        csv += std::to_string(row.round) + "," + ratio_str(row.unstable, row.matching_size) + "\n";
    if (!out_path.empty())
        write_file_atomic(out_path, csv);
    else
        std::cout << csv;

    if (epsilon > 0) {
        const std::uint32_t delta = graph_path.empty() ? fam.base.max_degree : g.max_degree();
        const std::uint32_t i = rounds_for_stability(delta, epsilon);
        if (i > max_rounds) {
            std::cout << "note: endpoint round " << i << " beyond --max-rounds, bound not checked\n";
            return 0;
        }
        const TraceRow& row = trace.row(i);
        const bool ok = is_epsilon_stable(g, row.matching, epsilon);
        std::cout << "endpoint round " << i << ": unstable=" << row.unstable
                  << " matching=" << row.matching_size << " -> " << (ok ? "PASS" : "FAIL") << "\n";
        return ok ? 0 : 1;
    }
    return 0;
}

int cmd_estimate(const std::string& graph_path, double epsilon, double delta, std::uint64_t seed,
                 std::uint32_t trials, bool smoke) {
    BicolouredGraph g = load_graph_file(graph_path);
    const std::uint32_t max_degree = g.max_degree();
    if (max_degree < 3) throw std::runtime_error("estimate refused: graph max degree < 3");

    const std::uint64_t budget = query_budget(max_degree, epsilon, delta);
    const Matching m_inf = run_to_convergence(g).matching;
    std::uint32_t successes = 0;
    bool over_budget = false;

    for (std::uint32_t t = 0; t < trials; ++t) {
        FilePreferenceOracle oracle(graph_path);
        SeededNodeSampler sampler(Rng::derive(seed, t));
        EstimateReport report = estimate_size(oracle, g.node_count(), max_degree, epsilon, delta,
                                              sampler, smoke ? 200 : 0);
        const double err = std::abs(report.estimate() - static_cast<double>(m_inf.size()));
        const bool success = !report.failed && err <= epsilon * static_cast<double>(m_inf.size());
        successes += success ? 1 : 0;
        over_budget = over_budget || report.queries > budget;
        std::cout << report.json() << " true_size=" << m_inf.size()
                  << " success=" << (success ? "true" : "false") << "\n";
    }
    std::cout << "successes=" << successes << "/" << trials << " query_budget=" << budget
              << (smoke ? " (smoke mode: no guarantee)" : "") << "\n";
    return over_budget ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated distributed Gale-Shapley: simulation, verification, size estimation"};
    app.require_subcommand(1);

    GeneratorOptions gen;
    std::string out_path, graph_path, trace_out, mode;
    std::uint32_t rounds = 0, max_rounds = 50, trials = 1;
    bool to_convergence = false, smoke = false;
    double epsilon = 0, delta = 0.5;
    RandomFamily fam;

    auto add_family_flags = [&](CLI::App* cmd) {
        cmd->add_option("--red", fam.base.red_count, "red node count for --random")->default_val(50);
        cmd->add_option("--blue", fam.base.blue_count, "blue node count for --random")->default_val(50);
        cmd->add_option("--max-degree", fam.base.max_degree, "degree cap for --random")->default_val(4);
        cmd->add_option("--seed", fam.base.seed, "seed for --random")->default_val(1);
        cmd->add_flag("--weighted", fam.base.weighted, "generate weighted instances");
        cmd->add_flag("--ties", fam.base.ties, "generate tied preference lists");
    };

    CLI::App* c_gen = app.add_subcommand("generate", "write a random instance");
    c_gen->add_option("--red", gen.red_count)->required();
    c_gen->add_option("--blue", gen.blue_count)->required();
    c_gen->add_option("--max-degree", gen.max_degree)->required();
    c_gen->add_option("--seed", gen.seed)->default_val(1);
    c_gen->add_flag("--weighted", gen.weighted);
    c_gen->add_flag("--ties", gen.ties);
    c_gen->add_option("--out", out_path, "output graph file")->required();

    CLI::App* c_run = app.add_subcommand("run", "run the engine on a graph file");
    c_run->add_option("--graph", graph_path)->required();
    c_run->add_option("--rounds", rounds);
    c_run->add_flag("--to-convergence", to_convergence);
    c_run->add_option("--trace-out", trace_out, "write the per-round trace CSV here");

    CLI::App* c_verify = app.add_subcommand("verify", "check a theorem or the lemma suite");
    c_verify->add_option("--graph", graph_path);
    c_verify->add_option("--random", fam.count, "verify this many generated instances");
    c_verify->add_option("--epsilon", epsilon)->required();
    c_verify->add_option("--mode", mode)->required()->check(CLI::IsMember({"stability", "weight", "lemmas"}));
    add_family_flags(c_verify);

    CLI::App* c_sweep = app.add_subcommand("sweep", "emit the instability-ratio curve");
    c_sweep->add_option("--graph", graph_path);
    c_sweep->add_option("--random", fam.count, "sweep one generated instance");
    c_sweep->add_option("--max-rounds", max_rounds);
    c_sweep->add_option("--epsilon", epsilon, "also check the endpoint bound");
    c_sweep->add_option("--out", out_path, "CSV output path (stdout when absent)");
    add_family_flags(c_sweep);

    CLI::App* c_est = app.add_subcommand("estimate", "estimate the stable matching size");
    c_est->add_option("--graph", graph_path)->required();
    c_est->add_option("--epsilon", epsilon)->required();
    c_est->add_option("--delta", delta)->default_val(0.5);
    c_est->add_option("--seed", gen.seed)->default_val(1);
    c_est->add_option("--trials", trials)->default_val(1);
    c_est->add_flag("--smoke", smoke, "reduced sample size, no guarantee");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_gen->parsed()) return cmd_generate(gen, out_path);
        if (c_run->parsed()) {
            if (!to_convergence && rounds < 1)
                throw std::runtime_error("run needs --rounds or --to-convergence");
            return cmd_run(graph_path, rounds, to_convergence, trace_out);
        }
        if (c_verify->parsed()) {
            if (graph_path.empty() && fam.count == 0)
                throw std::runtime_error("verify needs --graph or --random");
            return cmd_verify(graph_path, fam, epsilon, mode);
        }
        if (c_sweep->parsed()) {
            if (graph_path.empty() && fam.count == 0)
                throw std::runtime_error("sweep needs --graph or --random");
            return cmd_sweep(graph_path, fam, max_rounds, epsilon, out_path);
        }
        if (c_est->parsed()) return cmd_estimate(graph_path, epsilon, delta, gen.seed, trials, smoke);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
