#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "fixtures.hpp"
#include "localgs/generator.hpp"
#include "localgs/graph.hpp"
#include "localgs/rng.hpp"

using namespace localgs;
using localgs::testing::from_lists;
using localgs::testing::instance_p;

namespace {

bool mentions(const ValidationReport& report, const std::string& needle) {
    return std::any_of(report.violations.begin(), report.violations.end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("validate accepts instance P") {
    CHECK(validate(instance_p()).ok());
}

TEST_CASE("validate flags isolated nodes") {
    BicolouredGraph g = instance_p();
    g.blue_count = 3;  // node 5 exists but has no neighbours
    g.adjacency.push_back({});
    ValidationReport report = validate(g);
    CHECK_FALSE(report.ok());
    CHECK(mentions(report, "isolated"));
}

TEST_CASE("validate flags same-colour edges") {
    BicolouredGraph g = from_lists(2, 2, {{2, 3}, {1, 4}, {1}, {2}});
    ValidationReport report = validate(g);
    CHECK_FALSE(report.ok());
    CHECK(mentions(report, "bipartite"));
}

TEST_CASE("validate flags asymmetry, duplicates and weight problems") {
    BicolouredGraph g = from_lists(2, 2, {{3, 4}, {3}, {1}, {1}});  // 3 lacks 2
    CHECK(mentions(validate(g), "asymmetric"));

    BicolouredGraph dup = from_lists(1, 1, {{2, 2}, {1}});
    CHECK(mentions(validate(dup), "repeated"));

    BicolouredGraph w = instance_p();
    w.weight.assign(w.node_count() + 1, {});
    w.weight[1] = {1, 5};  // increasing along the list
    w.weight[2] = {2};
    w.weight[3] = {2, 1};
    w.weight[4] = {5};
    CHECK(mentions(validate(w), "respect"));
}

TEST_CASE("preferences_from_weights sorts by weight then id") {
    // Star: red 1 with blues 2,3,4 of weights 5,9,9.
    BicolouredGraph g = from_lists(1, 3, {{2, 3, 4}, {1}, {1}, {1}});
    g.weight.assign(5, {});
    g.weight[1] = {5, 9, 9};
    g.weight[2] = {5};
    g.weight[3] = {9};
    g.weight[4] = {9};
    BicolouredGraph out = preferences_from_weights(g);
    CHECK(out.adjacency[1] == std::vector<NodeId>{3, 4, 2});
    CHECK(out.weight[1] == std::vector<std::uint32_t>{9, 9, 5});
    CHECK(validate(out).ok());
}

TEST_CASE("preferences_from_weights: total tie falls back to ascending id") {
    BicolouredGraph g = from_lists(1, 3, {{4, 2, 3}, {1}, {1}, {1}});
    g.weight.assign(5, {});
    g.weight[1] = {7, 7, 7};
    g.weight[2] = g.weight[3] = g.weight[4] = {7};
    CHECK(preferences_from_weights(g).adjacency[1] == std::vector<NodeId>{2, 3, 4});
}

TEST_CASE("preferences_from_weights rejects nonpositive weights") {
    BicolouredGraph g = from_lists(1, 1, {{2}, {1}});
    g.weight.assign(3, {});
    g.weight[1] = {0};
    g.weight[2] = {0};
    CHECK_THROWS_AS(preferences_from_weights(g), std::invalid_argument);
    CHECK_THROWS_AS(preferences_from_weights(instance_p()), std::invalid_argument);
}

TEST_CASE("unit_weights puts 1 on every edge") {
    BicolouredGraph g = unit_weights(instance_p());
    CHECK(g.has_weights());
    for (NodeId v = 1; v <= g.node_count(); ++v)
        for (std::uint32_t k = 0; k < g.degree(v); ++k) CHECK(g.weight_or_unit(v, k) == 1);
    CHECK(validate(g).ok());
    // w(L) = |L| for any edge set under unit weights.
    Matching all(g.edges());
    CHECK(matching_weight(g, all) == all.size());
}

TEST_CASE("instance P round-trips through the text format") {
    BicolouredGraph g = instance_p();
    const std::string text = serialize_graph(g);
    BicolouredGraph back = parse_graph(text);
    CHECK(back.red_count == g.red_count);
    CHECK(back.adjacency == g.adjacency);
    CHECK(serialize_graph(back) == text);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_graph("2 2\n1 : 3 4\n2 : 3\n3 : 2\n4 : 1\n"),
                         doctest::Contains("asymmetric"), std::runtime_error);
    CHECK_THROWS_AS(parse_graph(""), std::runtime_error);
    CHECK_THROWS_AS(parse_graph("2\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_graph("1 1\n1 = 2\n"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_graph("1 1\n1 : 9\n2 : 1\n"), doctest::Contains("dangling"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_graph("1 1\n1 : 2\n1 : 2\n2 : 1\n"), doctest::Contains("duplicate"),
                         std::runtime_error);
    // Mixing weighted and unweighted entries is malformed.
    CHECK_THROWS_WITH_AS(parse_graph("1 1\n1 : 2:5\n2 : 1\n"), doctest::Contains("mixed"),
                         std::runtime_error);
}

TEST_CASE("comments and blank lines are ignored") {
    BicolouredGraph g = parse_graph("# fixture\n2 2\n\n1 : 3 4\n2 : 3  # tail comment\n3 : 2 1\n4 : 1\n");
    CHECK(g.adjacency == instance_p().adjacency);
}

TEST_CASE("weighted and tied graphs round-trip") {
    BicolouredGraph g = localgs::testing::p4_weighted();
    const std::string text = serialize_graph(g);
    BicolouredGraph back = parse_graph(text);
    CHECK(back.weight == g.weight);
    CHECK(serialize_graph(back) == text);

    BicolouredGraph tied = instance_p();
    tied.tie.assign(tied.node_count() + 1, {});
    tied.tie[1] = {0, 1};
    tied.tie[2] = {0};
    tied.tie[3] = {0, 1};
    tied.tie[4] = {0};
    const std::string tied_text = serialize_graph(tied);
    CHECK(tied_text.find(",tie") != std::string::npos);
    BicolouredGraph tied_back = parse_graph(tied_text);
    CHECK(tied_back.tie == tied.tie);
    CHECK(tied_back.group_of_position(1, 1) == 0);
    CHECK(instance_p().group_of_position(1, 1) == 1);
}

TEST_CASE("generate_random is reproducible and valid") {
    GeneratorOptions opt{.red_count = 2, .blue_count = 2, .max_degree = 2, .seed = 7};
    CHECK(serialize_graph(generate_random(opt)) == serialize_graph(generate_random(opt)));

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        BicolouredGraph g = generate_random({.red_count = 50, .blue_count = 50, .max_degree = 3, .seed = seed});
        CHECK(validate(g).ok());
        CHECK(g.max_degree() <= 3);
    }
}

TEST_CASE("generate_random rejects impossible configurations") {
    CHECK_THROWS_AS(generate_random({.red_count = 10, .blue_count = 1, .max_degree = 1, .seed = 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_random({.red_count = 0, .blue_count = 1, .max_degree = 1, .seed = 1}),
                    std::invalid_argument);
}

TEST_CASE("generated instances of every flavour validate and round-trip") {
    for (std::uint32_t k = 0; k < 60; ++k) {
        Rng rng(Rng::derive(99, k));
        GeneratorOptions opt;
        opt.red_count = static_cast<std::uint32_t>(rng.between(1, 40));
        opt.blue_count = static_cast<std::uint32_t>(rng.between(1, 40));
        opt.max_degree = static_cast<std::uint32_t>(rng.between(1, 6));
        opt.seed = rng.next();
        opt.weighted = k % 2 == 0;
        opt.ties = k % 3 == 0;
        if (opt.red_count > opt.blue_count * opt.max_degree ||
            opt.blue_count > opt.red_count * opt.max_degree) {
            CHECK_THROWS_AS(generate_random(opt), std::invalid_argument);
            continue;
        }
        BicolouredGraph g = generate_random(opt);
        REQUIRE(validate(g).ok());
        CHECK(g.max_degree() <= opt.max_degree);
        BicolouredGraph back = parse_graph(serialize_graph(g));
        CHECK(back.adjacency == g.adjacency);
        CHECK(back.weight == g.weight);
        CHECK(back.tie == g.tie);
        if (opt.weighted) CHECK(validate(preferences_from_weights(g)).ok());
    }
}
