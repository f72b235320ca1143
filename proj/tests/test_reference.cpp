#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "localgs/analysis.hpp"
#include "localgs/engine.hpp"
#include "localgs/generator.hpp"
#include "localgs/reference.hpp"
#include "localgs/rng.hpp"

using namespace localgs;
using namespace localgs::testing;

TEST_CASE("sequential deferred acceptance on the fixtures") {
    CHECK(stable_matching_reference(instance_p()) == matching_of({{1, 4}, {2, 3}}));
    CHECK(stable_matching_reference(from_lists(1, 1, {{2}, {1}})) == matching_of({{1, 2}}));
    CHECK(stable_matching_reference(aligned_2x2()) == matching_of({{1, 3}, {2, 4}}));
}

TEST_CASE("reference output is stable and equals the distributed fixed point") {
    for (std::uint32_t k = 0; k < 60; ++k) {
        Rng rng(Rng::derive(31, k));
        GeneratorOptions opt;
        opt.max_degree = static_cast<std::uint32_t>(rng.between(1, 6));
        opt.red_count = static_cast<std::uint32_t>(rng.between(1, 50));
        opt.blue_count = static_cast<std::uint32_t>(
            rng.between((opt.red_count + opt.max_degree - 1) / opt.max_degree,
                        std::min<std::uint64_t>(50, std::uint64_t{opt.red_count} * opt.max_degree)));
        opt.seed = rng.next();
        BicolouredGraph g = generate_random(opt);

        Matching stable = stable_matching_reference(g);
        CHECK(unstable_edges(g, stable).empty());
        CHECK(stable == run_to_convergence(g).matching);
    }
}

TEST_CASE("greedy matching") {
    CHECK(greedy_matching(p4_weighted()) == matching_of({{2, 3}}));
    CHECK(matching_weight(p4_weighted(), greedy_matching(p4_weighted())) == 15);

    BicolouredGraph p_unit = unit_weights(instance_p());
    CHECK(greedy_matching(p_unit) == matching_of({{1, 3}}));

    BicolouredGraph single = unit_weights(from_lists(1, 1, {{2}, {1}}));
    CHECK(greedy_matching(single) == matching_of({{1, 2}}));

    CHECK_THROWS_AS(greedy_matching(instance_p()), std::invalid_argument);
}

TEST_CASE("brute-force maximum weight matching") {
    CHECK(max_weight_matching_bruteforce(p4_weighted()) == matching_of({{1, 3}, {2, 4}}));
    CHECK(matching_weight(p4_weighted(), max_weight_matching_bruteforce(p4_weighted())) == 20);

    BicolouredGraph single = from_lists(1, 1, {{2}, {1}});
    CHECK(max_weight_matching_bruteforce(single) == matching_of({{1, 2}}));

    BicolouredGraph p_unit = unit_weights(instance_p());
    Matching best = max_weight_matching_bruteforce(p_unit);
    CHECK(best == matching_of({{1, 4}, {2, 3}}));
    CHECK(matching_weight(p_unit, best) == 2);

    // Equal-weight optima resolve to the lexicographically least edge set.
    CHECK(max_weight_matching_bruteforce(unit_weights(aligned_2x2())) ==
          matching_of({{1, 3}, {2, 4}}));

    BicolouredGraph big = unit_weights(disjoint_edges(25));
    REQUIRE(big.edge_count() > kBruteForceEdgeCap);
    CHECK_THROWS_AS(max_weight_matching_bruteforce(big), std::invalid_argument);
}

TEST_CASE("greedy is a 2-approximation of the brute-force optimum") {
    for (std::uint32_t k = 0; k < 60; ++k) {
        Rng rng(Rng::derive(67, k));
        GeneratorOptions opt;
        opt.max_degree = static_cast<std::uint32_t>(rng.between(1, 4));
        opt.red_count = static_cast<std::uint32_t>(rng.between(1, 6));
        opt.blue_count = static_cast<std::uint32_t>(
            rng.between((opt.red_count + opt.max_degree - 1) / opt.max_degree,
                        std::min<std::uint64_t>(6, std::uint64_t{opt.red_count} * opt.max_degree)));
        opt.seed = rng.next();
        opt.weighted = true;
        BicolouredGraph g = generate_random(opt);
        if (g.edge_count() > kBruteForceEdgeCap) continue;
        const std::uint64_t greedy = matching_weight(g, greedy_matching(g));
        const std::uint64_t best = matching_weight(g, max_weight_matching_bruteforce(g));
        CHECK(2 * greedy >= best);
        CHECK(greedy <= best);
    }
}

TEST_CASE("order-only dilemma: the stable matching misses the heavy middle edge") {
    Matching reference_output;
    for (std::uint32_t alpha : {11u, 15u, 19u}) {
        BicolouredGraph g = p4_weighted(alpha);
        REQUIRE(validate(g).ok());
        ConvergenceResult res = run_to_convergence(g);
        CHECK(res.matching == matching_of({{2, 3}}));
        CHECK(matching_weight(g, res.matching) == alpha);
        CHECK(matching_weight(g, max_weight_matching_bruteforce(g)) == 20);
        CHECK(unstable_edges(g, res.matching).empty());
        // Same relative order, same output, whatever alpha is: the ratio
        // 20/alpha creeps towards 2 as alpha drops to 10.
        if (alpha == 11u) reference_output = res.matching;
        CHECK(res.matching == matching_of({{2, 3}}));
    }
    CHECK(reference_output == matching_of({{2, 3}}));
}
