#include "anoncontract/contract.hpp"
#include "anoncontract/equilibrium.hpp"
#include "anoncontract/errors.hpp"
#include "anoncontract/generators.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/linalg.hpp"
#include "anoncontract/noll.hpp"

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

// q = (0.9, 0.8, 0.6), c = (0.4, 0.5, 0.5): surpluses (0.5, 0.3, 0.1).
Instance three_surpluses() {
    return make_exact({{Rational(9, 10), Rational(2, 5)},
                       {Rational(4, 5), Rational(1, 2)},
                       {Rational(3, 5), Rational(1, 2)}});
}

} // namespace

TEST_SUITE("noll") {

TEST_CASE("threshold contract pays 1 below the cut and calibrates the cut") {
    const KStarContract k = log_contract(three_surpluses());
    CHECK_EQ(k.k_star, 2); // k * s_k = (0.5, 0.6, 0.3)
    REQUIRE_EQ(k.surplus_order.size(), 3);
    CHECK_EQ(k.surplus_order[0], 0);
    CHECK_EQ(k.surplus_order[1], 1);
    CHECK_EQ(k.surplus_order[2], 2);
    CHECK_EQ(k.w.at(1).value.str(), "1");
    CHECK_EQ(k.w.at(2).value.str(), "7/12"); // 1 - 0.3 / (0.9 * 0.8)
    CHECK(k.w.at(3).blocked);
    CHECK_EQ(oracle::set_str(k.equilibrium), "1+2");
    CHECK_EQ(k.utility.str(), "0.6");
    CHECK_EQ(k.harmonic_bound.str(), "1.1"); // (1 + 1/2 + 1/3) * 0.6
}

TEST_CASE("threshold contract on a single agent is the bare density payment") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(1, 10)}});
    const KStarContract k = log_contract(inst);
    CHECK_EQ(k.k_star, 1);
    CHECK_EQ(k.w.at(1).value.str(), "0.2");
    CHECK_EQ(k.utility.str(), "0.4");
    CHECK(k.utility == social_welfare(inst).value);
}

TEST_CASE("all-negative surpluses fall back to the zero contract") {
    const Instance inst = make_exact({{Rational(1, 4), Rational(1, 2)},
                                      {Rational(1, 10), Rational(1, 5)}});
    const KStarContract k = log_contract(inst);
    CHECK_EQ(k.k_star, 0);
    CHECK_EQ(k.utility.str(), "0");
    CHECK(k.equilibrium.empty());
    for (int j = 1; j <= 2; ++j) {
        CHECK_FALSE(k.w.at(j).blocked);
        CHECK_EQ(k.w.at(j).value.str(), "0");
    }
}

TEST_CASE("tied threshold values resolve to the smaller cut") {
    // Equal-probability harmonic costs make every k * s_k identical.
    const Instance inst = gen_equal_q_harmonic(Rational(1, 2), Rational(1, 10), 3);
    const KStarContract k = log_contract(inst);
    CHECK_EQ(k.k_star, 1);
    CHECK_EQ(k.utility.str(), "0.4");
    CHECK(k.w.at(2).blocked);
    CHECK(k.w.at(3).blocked);
}

TEST_CASE("threshold equilibrium holds, members keep their surplus gaps") {
    std::mt19937_64 rng(5150);
    int nonzero_cases = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const Instance inst = gen_random(rng(), n, Rational(1, 30), Rational(29, 30));
        const KStarContract k = log_contract(inst);
        if (k.k_star == 0) continue;
        ++nonzero_cases;
        CHECK(is_pne(inst, k.w, k.equilibrium));
        const Scalar s_star =
            inst.agent(k.surplus_order[static_cast<std::size_t>(k.k_star - 1)]).q -
            inst.agent(k.surplus_order[static_cast<std::size_t>(k.k_star - 1)]).c;
        // Every member ends exactly s_i - s_{k*} above water.
        for (int r = 0; r < k.k_star; ++r) {
            const int id = k.surplus_order[static_cast<std::size_t>(r)];
            const AgentUtility u = agent_utility(inst, k.w, k.equilibrium, id);
            REQUIRE_FALSE(u.neg_infinity);
            const Scalar s_i = inst.agent(id).q - inst.agent(id).c;
            CHECK(u.value == s_i - s_star);
        }
        // The principal nets the advertised k* * s_{k*}.
        const PrincipalUtility p = principal_utility(inst, k.w, k.equilibrium);
        REQUIRE_FALSE(p.undefined);
        CHECK(p.value == k.utility);
        // Welfare sits below the harmonic multiple of that guarantee.
        CHECK(approx_ge(k.harmonic_bound, oracle::brute_welfare(inst)));
        // The blocked tail deters every outsider.
        for (int i = 0; i < n; ++i) {
            if (k.equilibrium.contains(i)) continue;
            if (k.k_star < n && inst.agent(i).q.sign() > 0)
                CHECK(agent_utility(inst, k.w, k.equilibrium.with(i), i).neg_infinity);
        }
    }
    CHECK_GT(nonzero_cases, 30); // random costs sit below q, so most draws qualify
}

TEST_CASE("full extraction solves the pay-equals-cost system exactly") {
    const Instance inst = make_exact({{Rational(1, 5), Rational(1, 20)},
                                      {Rational(1, 2), Rational(1, 5)}});
    const FullExtractionContract f = full_extraction(inst);
    CHECK_EQ(oracle::set_str(f.set), "1+2");
    CHECK_EQ(f.w.at(1).value.str(), "0.5");
    CHECK_EQ(f.w.at(2).value.str(), "0");
    CHECK_EQ(f.utility.str(), "0.45");
    CHECK_FALSE(f.conditioning_warning);
}

TEST_CASE("full extraction on one agent pays the density on the single success") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(1, 10)}});
    const FullExtractionContract f = full_extraction(inst);
    CHECK_EQ(f.w.at(1).value.str(), "0.2");
    CHECK_EQ(f.utility.str(), "0.4");
}

TEST_CASE("repeated probabilities among profitable agents are refused") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(1, 10)},
                                      {Rational(1, 2), Rational(1, 5)}});
    CHECK_THROWS_WITH_AS(full_extraction(inst),
                         "success-count system is singular: profitable agents 1 and 2 "
                         "share success probability 0.5",
                         ValidationError);
}

TEST_CASE("a repeated probability on an unprofitable agent is harmless") {
    const Instance inst = make_exact({{Rational(1, 2), Rational(1, 10)},
                                      {Rational(1, 2), Rational(7, 10)}});
    const FullExtractionContract f = full_extraction(inst);
    CHECK_EQ(oracle::set_str(f.set), "1");
    CHECK_EQ(f.w.at(1).value.str(), "0.2");
    CHECK(f.w.at(2).blocked); // blocks the count only outsiders could reach
    CHECK_EQ(f.utility.str(), "0.4");
}

TEST_CASE("near-identical probabilities are refused in float mode") {
    std::vector<Agent> agents{{Scalar::floating(0.5), Scalar::floating(0.1)},
                              {Scalar::floating(0.5 + 5e-11), Scalar::floating(0.1)}};
    const Instance inst(std::move(agents), Mode::Float);
    CHECK_THROWS_AS(full_extraction(inst), ValidationError);
}

TEST_CASE("float extraction reproduces the exact answer within tolerance") {
    std::vector<Agent> agents{{Scalar::floating(0.2), Scalar::floating(0.05)},
                              {Scalar::floating(0.5), Scalar::floating(0.2)}};
    const Instance inst(std::move(agents), Mode::Float);
    const FullExtractionContract f = full_extraction(inst);
    CHECK(approx_eq(f.w.at(1).value, Scalar::floating(0.5)));
    CHECK(approx_eq(f.utility, Scalar::floating(0.45)));
    CHECK_FALSE(f.conditioning_warning);
}

TEST_CASE("full extraction leaves no surplus behind on random instances") {
    std::mt19937_64 rng(909);
    int accepted = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const Instance inst = gen_random(rng(), n, Rational(1, 30), Rational(29, 30));
        FullExtractionContract f;
        try {
            f = full_extraction(inst);
        } catch (const ValidationError&) {
            continue; // the random draw repeated a probability
        }
        ++accepted;
        CHECK(f.utility == oracle::brute_welfare(inst));
        CHECK(is_pne(inst, f.w, f.set));
        // Every member is exactly indifferent: expected pay equals cost.
        for (int i : f.set.members()) {
            const AgentUtility u = agent_utility(inst, f.w, f.set, i);
            REQUIRE_FALSE(u.neg_infinity);
            CHECK_EQ(u.value.str(), "0");
        }
    }
    CHECK_GT(accepted, 60);
}

TEST_CASE("exact eliminations detect singular systems, float flags tiny pivots") {
    const ExactSolveResult sing = solve_linear_exact(
        {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}, {Rational(1), Rational(2)});
    CHECK(sing.singular);
    const ExactSolveResult ok = solve_linear_exact(
        {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}}, {Rational(3), Rational(1)});
    REQUIRE_FALSE(ok.singular);
    CHECK_EQ(ok.x[0], Rational(2));
    CHECK_EQ(ok.x[1], Rational(1));

    FloatSolveResult warn = solve_linear_float({{1.0, 1.0}, {1.0, 1.0 + 1e-13}}, {2.0, 2.0});
    CHECK_FALSE(warn.singular);
    CHECK(warn.ill_conditioned); // second pivot ~ 1e-13 < 1e-12
    FloatSolveResult fine = solve_linear_float({{2.0, 0.0}, {0.0, 2.0}}, {2.0, 4.0});
    CHECK_FALSE(fine.singular);
    CHECK_FALSE(fine.ill_conditioned);
    CHECK_EQ(fine.x[0], doctest::Approx(1.0));
    CHECK_EQ(fine.x[1], doctest::Approx(2.0));
}

} // TEST_SUITE
