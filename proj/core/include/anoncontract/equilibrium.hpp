#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/contract.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <cstdint>
#include <vector>

namespace anoncontract {

// Utility of a single agent: finite, or minus infinity when the agent's
// effort can trigger a blocked outcome.
struct AgentUtility {
    bool neg_infinity = false;
    Scalar value{}; // meaningful only when !neg_infinity
};

// Principal utility: finite, or undefined when a blocked outcome is
// reachable under the given effort set.
struct PrincipalUtility {
    bool undefined = false;
    Scalar value{}; // meaningful only when !undefined
};

// Expected utility of agent i when exactly the agents in S work.
// Nonmembers get 0. A member gets q_i * E[w at (1 + successes of S\{i})]
// minus c_i, or minus infinity if any reachable success count is blocked.
AgentUtility agent_utility(const Instance& inst, const AnonymousContract& w,
                           const AgentSet& S, int i);

// Expected principal utility when exactly the agents in S work: expected
// successes minus expected total payments. Undefined when a blocked entry
// has positive probability under S.
PrincipalUtility principal_utility(const Instance& inst, const AnonymousContract& w,
                                   const AgentSet& S);

// Pure Nash equilibrium check with weak inequalities: no member strictly
// prefers to stop, no outsider strictly prefers to start. Float mode uses
// the library-wide relative tolerance.
bool is_pne(const Instance& inst, const AnonymousContract& w, const AgentSet& S);

struct PneEntry {
    AgentSet set;
    PrincipalUtility principal;
};

// All pure Nash equilibria, sorted by principal utility (descending,
// undefined entries last), then by set size, then lexicographically.
// Exhaustive over 2^n sets; guarded to n <= 20.
std::vector<PneEntry> enumerate_pne(const Instance& inst, const AnonymousContract& w);

enum class UpdatePolicy { LowestIndexFirst, SeededRandom };

struct DynamicsResult {
    AgentSet final_set;
    std::vector<AgentSet> path; // visited sets, start first, final last
    std::uint64_t steps = 0;    // single-agent switches applied
};

// Iterated better-response: while some agent strictly prefers to switch,
// toggle one (lowest index, or uniformly at random under the seeded
// policy). Terminal states are exactly the pure Nash equilibria. Raises
// an internal check error after 4^n switches (suspected improvement cycle).
DynamicsResult best_response_dynamics(const Instance& inst, const AnonymousContract& w,
                                      const AgentSet& start, UpdatePolicy policy,
                                      std::uint64_t seed);

} // namespace anoncontract
