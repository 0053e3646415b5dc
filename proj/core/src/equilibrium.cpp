#include "anoncontract/equilibrium.hpp"

#include "anoncontract/errors.hpp"
#include "anoncontract/probability.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

namespace anoncontract {

namespace {

void check_shapes(const Instance& inst, const AnonymousContract& w, const AgentSet& S) {
    if (w.n() != inst.n())
        throw ValidationError("contract length " + std::to_string(w.n()) +
                              " does not match agent count " + std::to_string(inst.n()));
    if (w.mode() != inst.mode())
        throw ValidationError("contract and instance numeric modes differ");
    if (S.universe() != inst.n())
        throw ValidationError("agent set universe does not match agent count");
}

// Expected per-success payment faced by one agent whose co-workers have the
// given success distribution: sum over reachable success counts j of
// P[j-1 others succeed] * w_j. blocked is set when a blocked entry is
// reachable with positive probability.
struct Exposure {
    bool blocked = false;
    Scalar sum{};
};

Exposure exposure_against(const AnonymousContract& w, const SuccessDistribution& others, Mode mode) {
    Exposure e;
    e.sum = Scalar::zero(mode);
    for (int j = 1; j <= w.n(); ++j) {
        const Scalar pj = others.at(j - 1);
        if (pj.sign() <= 0) continue;
        const Payment& pay = w.at(j);
        if (pay.blocked) {
            e.blocked = true;
            return e;
        }
        e.sum += pj * pay.value;
    }
    return e;
}

} // namespace

AgentUtility agent_utility(const Instance& inst, const AnonymousContract& w,
                           const AgentSet& S, int i) {
    check_shapes(inst, w, S);
    const Mode mode = inst.mode();
    if (!S.contains(i))
        return AgentUtility{false, Scalar::zero(mode)};
    const SuccessDistribution others = success_dist_excluding(inst, S, i);
    const Exposure e = exposure_against(w, others, mode);
    if (e.blocked)
        return AgentUtility{true, Scalar{}};
    const Agent& a = inst.agent(i);
    return AgentUtility{false, a.q * e.sum - a.c};
}

PrincipalUtility principal_utility(const Instance& inst, const AnonymousContract& w,
                                   const AgentSet& S) {
    check_shapes(inst, w, S);
    const Mode mode = inst.mode();
    const SuccessDistribution dist = success_dist(inst, S);
    Scalar successes = Scalar::zero(mode);
    for (int i : S.members())
        successes += inst.agent(i).q;
    Scalar payments = Scalar::zero(mode);
    for (int j = 1; j <= dist.max_count(); ++j) {
        const Scalar pj = dist.at(j);
        if (pj.sign() <= 0) continue;
        const Payment& pay = w.at(j);
        if (pay.blocked)
            return PrincipalUtility{true, Scalar{}};
        payments += pj * Scalar::of(mode, j) * pay.value;
    }
    return PrincipalUtility{false, successes - payments};
}

bool is_pne(const Instance& inst, const AnonymousContract& w, const AgentSet& S) {
    check_shapes(inst, w, S);
    const Mode mode = inst.mode();
    // All outsiders face the same co-worker distribution: S itself.
    const SuccessDistribution dist_S = success_dist(inst, S);
    const Exposure outsider = exposure_against(w, dist_S, mode);
    for (int i = 0; i < inst.n(); ++i) {
        const Agent& a = inst.agent(i);
        if (S.contains(i)) {
            const SuccessDistribution others = success_dist_excluding(inst, S, i);
            const Exposure e = exposure_against(w, others, mode);
            if (e.blocked) return false; // stopping (utility 0) beats minus infinity
            if (!approx_ge(a.q * e.sum, a.c)) return false;
        } else {
            if (outsider.blocked) continue; // joining would be infinitely punished
            if (!approx_le(a.q * outsider.sum, a.c)) return false;
        }
    }
    return true;
}

std::vector<PneEntry> enumerate_pne(const Instance& inst, const AnonymousContract& w) {
    const int n = inst.n();
    if (n > 20)
        throw GuardError("equilibrium enumeration limited to 20 agents (got " +
                         std::to_string(n) + ")");
    std::vector<PneEntry> out;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        AgentSet S = AgentSet::from_mask(n, mask);
        if (is_pne(inst, w, S))
            out.push_back(PneEntry{S, principal_utility(inst, w, S)});
    }
    std::sort(out.begin(), out.end(), [](const PneEntry& a, const PneEntry& b) {
        if (a.principal.undefined != b.principal.undefined) return !a.principal.undefined;
        if (!a.principal.undefined && a.principal.value != b.principal.value)
            return b.principal.value < a.principal.value;
        if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
        return AgentSet::lex_less(a.set, b.set);
    });
    return out;
}

DynamicsResult best_response_dynamics(const Instance& inst, const AnonymousContract& w,
                                      const AgentSet& start, UpdatePolicy policy,
                                      std::uint64_t seed) {
    check_shapes(inst, w, start);
    const int n = inst.n();
    const Mode mode = inst.mode();
    // 4^n single-agent switches is far beyond any improvement path; hitting
    // the cap means the better-response relation cycles.
    const std::uint64_t cap =
        n >= 32 ? std::numeric_limits<std::uint64_t>::max() : (1ull << (2 * n));
    std::mt19937_64 rng(seed);

    DynamicsResult res;
    AgentSet cur = start;
    res.path.push_back(cur);
    for (;;) {
        const SuccessDistribution dist_cur = success_dist(inst, cur);
        const Exposure outsider = exposure_against(w, dist_cur, mode);
        std::vector<int> improvers;
        for (int i = 0; i < n; ++i) {
            const Agent& a = inst.agent(i);
            if (cur.contains(i)) {
                const SuccessDistribution others = success_dist_excluding(inst, cur, i);
                const Exposure e = exposure_against(w, others, mode);
                if (e.blocked || strictly_greater(a.c, a.q * e.sum))
                    improvers.push_back(i);
            } else {
                if (!outsider.blocked && strictly_greater(a.q * outsider.sum, a.c))
                    improvers.push_back(i);
            }
        }
        if (improvers.empty()) break;
        int pick = improvers.front();
        if (policy == UpdatePolicy::SeededRandom) {
            std::uniform_int_distribution<std::size_t> d(0, improvers.size() - 1);
            pick = improvers[d(rng)];
        }
        cur.toggle(pick);
        ++res.steps;
        res.path.push_back(cur);
        if (res.steps > cap)
            throw InternalCheckError("suspected improvement cycle: no equilibrium reached after " +
                                     std::to_string(res.steps) + " switches");
    }
    res.final_set = cur;
    return res;
}

} // namespace anoncontract
