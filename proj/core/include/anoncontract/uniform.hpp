#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// Best contract that pays the same amount w for every success, regardless
// of how many agents succeed. Such a contract incentivizes a density-order
// prefix; k is the prefix length (0 = pay nothing, hire nobody).
struct UniformSolution {
    int k = 0;
    Scalar w{};       // minimal payment achieving the prefix: the k-th density
    Scalar utility{}; // (1 - c_k/q_k) * sum of the first k success probabilities
    AgentSet prefix;
    // Value of every prefix length 1..K (K = agents with positive q), in
    // density order; useful for reports and audits.
    std::vector<Scalar> candidates;
};

// Scan all density-order prefixes and return the best one (smallest k on
// ties; k = 0 with utility 0 when no prefix is profitable).
UniformSolution solve_uniform(const Instance& inst);

// Enumerate all equilibria of the constant contract (w,...,w) and assert
// they form exactly the family sandwiched between the strict prefix
// {i : q_i w > c_i} and the weak prefix {i : q_i w >= c_i}; in particular
// the equilibrium is unique when no agent is exactly indifferent. Returns
// the weak (inclusive) prefix. Enumeration-based, so n <= 20.
// Throws InternalCheckError if the equilibrium family deviates.
AgentSet verify_unique_prefix_pne(const Instance& inst, const Scalar& w);

} // namespace anoncontract
