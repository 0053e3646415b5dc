#include "anoncontract/contract.hpp"
#include "anoncontract/equilibrium.hpp"
#include "anoncontract/errors.hpp"
#include "anoncontract/generators.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/uniform.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace anoncontract;

namespace {

Instance make_exact(std::vector<std::pair<Rational, Rational>> rows) {
    std::vector<Agent> agents;
    for (auto& [q, c] : rows)
        agents.push_back(Agent{Scalar::exact(q), Scalar::exact(c)});
    return Instance(std::move(agents), Mode::Exact);
}

// Three agents with equal success probability whose prefix values all tie.
Instance flat_candidates() {
    return make_exact({{Rational(1, 2), Rational(1, 10)},
                       {Rational(1, 2), Rational(3, 10)},
                       {Rational(1, 2), Rational(11, 30)}});
}

} // namespace

TEST_SUITE("uniform") {

TEST_CASE("tied prefix values resolve to the shortest prefix") {
    const UniformSolution sol = solve_uniform(flat_candidates());
    CHECK_EQ(sol.k, 1);
    CHECK_EQ(sol.w.str(), "0.2");
    CHECK_EQ(sol.utility.str(), "0.4");
    CHECK_EQ(oracle::set_str(sol.prefix), "1");
    REQUIRE_EQ(sol.candidates.size(), 3);
    for (const Scalar& v : sol.candidates) CHECK_EQ(v.str(), "0.4");
}

TEST_CASE("a longer prefix wins when its value is strictly higher") {
    const Instance inst = make_exact({{Rational(4, 5), Rational(2, 5)},
                                      {Rational(3, 5), Rational(2, 5)}});
    const UniformSolution sol = solve_uniform(inst);
    CHECK_EQ(sol.k, 2);
    CHECK_EQ(sol.w.str(), "2/3");
    CHECK_EQ(sol.utility.str(), "7/15");
    CHECK_EQ(oracle::set_str(sol.prefix), "1+2");
    REQUIRE_EQ(sol.candidates.size(), 2);
    CHECK_EQ(sol.candidates[0].str(), "0.4");
    CHECK_EQ(sol.candidates[1].str(), "7/15");
}

TEST_CASE("no profitable prefix leaves everyone idle") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(3, 5)},
                                      {Rational(1, 2), Rational(3, 5)}});
    const UniformSolution sol = solve_uniform(inst);
    CHECK_EQ(sol.k, 0);
    CHECK_EQ(sol.w.str(), "0");
    CHECK_EQ(sol.utility.str(), "0");
    CHECK(sol.prefix.empty());
    REQUIRE_EQ(sol.candidates.size(), 2);
    CHECK_EQ(sol.candidates[0].str(), "-0.1");
    CHECK_EQ(sol.candidates[1].str(), "-0.2");
}

TEST_CASE("agents that can never succeed are not candidates") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(1, 10)},
                                      {Rational(0), Rational(1, 20)}});
    const UniformSolution sol = solve_uniform(inst);
    CHECK_EQ(sol.k, 1);
    CHECK_EQ(sol.candidates.size(), 1);
    CHECK_EQ(sol.utility.str(), "0.4");
}

TEST_CASE("solution matches a grid scan over all sets and payment levels") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Instance inst = gen_random(rng(), n, Rational(1, 40), Rational(39, 40));
        const UniformSolution sol = solve_uniform(inst);
        CHECK(sol.utility == oracle::grid_uniform_best(inst));
        CHECK(approx_ge(sol.w, Scalar::zero(Mode::Exact)));
        // The minimal payment makes the prefix an equilibrium.
        CHECK(is_pne(inst, AnonymousContract::uniform(inst.n(), sol.w), sol.prefix));
    }
}

TEST_CASE("prefix verification returns the covered prefix and certifies uniqueness") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(1, 10)},
                                      {Rational(1, 2), Rational(3, 10)}});
    const AgentSet got = verify_unique_prefix_pne(inst, Scalar::exact(1, 2));
    CHECK_EQ(oracle::set_str(got), "1"); // densities 0.2 and 0.6 straddle 0.5
}

TEST_CASE("a payment below every density certifies the empty equilibrium") {
    const AgentSet got = verify_unique_prefix_pne(flat_candidates(), Scalar::exact(1, 10));
    CHECK(got.empty());
}

TEST_CASE("a payment exactly at a density returns the inclusive prefix") {
    // Agent 1 is indifferent at w = 0.2, so both {} and {1} are equilibria;
    // the inclusive boundary rule reports {1}.
    const AgentSet got = verify_unique_prefix_pne(flat_candidates(), Scalar::exact(1, 5));
    CHECK_EQ(oracle::set_str(got), "1");
}

TEST_CASE("random off-tie payments always give a unique prefix equilibrium") {
    std::mt19937_64 rng(777);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Instance inst = gen_random(rng(), n, Rational(1, 40), Rational(39, 40));
        // Odd denominator keeps the draw off every dyadic-derived density.
        const Rational w_val = oracle::dyadic_unit(state) + Rational(1, 3);
        const Scalar w = Scalar::exact(w_val);
        const AgentSet got = verify_unique_prefix_pne(inst, w);
        // Independent check of the membership rule.
        const std::vector<PneEntry> pne = enumerate_pne(inst, AnonymousContract::uniform(n, w));
        REQUIRE_EQ(pne.size(), 1);
        CHECK(pne[0].set == got);
        for (int i = 0; i < n; ++i)
            CHECK_EQ(got.contains(i), inst.agent(i).q * w > inst.agent(i).c);
    }
}

TEST_CASE("mode mismatch between payment and instance is rejected") {
    CHECK_THROWS_AS(verify_unique_prefix_pne(flat_candidates(), Scalar::floating(0.5)),
                    ValidationError);
}

} // TEST_SUITE
