#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/contract.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// Threshold contract built on the surplus order s_i = q_i - c_i
// (nonincreasing): pay 1 per success below the threshold k*, a calibrated
// amount at exactly k*, and block every higher success count. Guarantees
// the principal k* * s_{k*}, which is within a harmonic factor of welfare.
struct KStarContract {
    int k_star = 0;                 // 0 when every surplus is negative
    std::vector<int> surplus_order; // agent ids, s nonincreasing, stable
    AnonymousContract w;
    AgentSet equilibrium;           // the k* highest-surplus agents
    Scalar utility{};               // k* * s_{k*}
    Scalar harmonic_bound{};        // (sum_{i<=n} 1/i) * utility, >= welfare
};

KStarContract log_contract(const Instance& inst);

// Contract extracting the entire surplus of the profitable agents
// {i : q_i > c_i}: solve the square system "expected payment to agent i
// equals c_i" for the first |P| entries, block everything above. Requires
// the profitable agents' success probabilities to be pairwise distinct.
struct FullExtractionContract {
    AnonymousContract w;
    AgentSet set;      // the profitable agents
    Scalar utility{};  // equals social welfare
    bool conditioning_warning = false; // float mode met a tiny pivot
};

FullExtractionContract full_extraction(const Instance& inst);

} // namespace anoncontract
