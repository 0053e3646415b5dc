#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// Distribution of the number of successes among a set of independent agents.
// p[k] = probability of exactly k successes; entries sum to 1.
struct SuccessDistribution {
    std::vector<Scalar> p;
    Mode mode = Mode::Exact;

    int max_count() const { return static_cast<int>(p.size()) - 1; }
    // Probability of exactly k successes; zero outside [0, max_count].
    Scalar at(int k) const;
};

// Exact (mode-faithful) convolution over the members of S.
SuccessDistribution success_dist(const Instance& inst, const AgentSet& S);

// Distribution over S \ {i}; recomputed from scratch, never by division,
// so float mode stays numerically benign.
SuccessDistribution success_dist_excluding(const Instance& inst, const AgentSet& S, int i);

// Square matrix M with M(i,j) = q_i * P[exactly j-1 of the other agents
// succeed when everyone works]. Row i sums to q_i. For distinct positive q
// the matrix is invertible.
struct QMatrix {
    int n = 0;
    std::vector<Scalar> entries; // row-major, n*n

    const Scalar& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

QMatrix q_matrix(const Instance& inst);

} // namespace anoncontract
