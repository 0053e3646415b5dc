#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// Cheapest nonnegative anonymous contract making S exactly the incentivized
// set, if one exists. Entries above |S| are fixed to zero: they never help a
// member constraint and only tighten outsider constraints.
struct SetLPOutcome {
    bool feasible = false;
    std::vector<Scalar> w; // length n; zeros above |S|
    Scalar payment{};      // minimized expected total payment
    Scalar utility{};      // expected successes of S minus payment
};

// Requires every member of S to have q > 0 (a costly agent who never
// succeeds can never be incentivized; a costless one changes nothing).
SetLPOutcome optimal_ll_for_set(const Instance& inst, const AgentSet& S);

enum class SetStatus { Optimal, Infeasible, Skipped };

struct LLTableRow {
    AgentSet set;
    SetStatus status = SetStatus::Skipped;
    Scalar utility{}; // valid when status == Optimal
};

// Best nonnegative anonymous contract overall, found by exhausting candidate
// sets (one LP each). The table records every candidate in mask-ascending
// order; sets with a zero-probability member are skipped, not solved.
struct LLSolution {
    AgentSet set;
    std::vector<Scalar> w; // length n, finite and nonnegative
    Scalar utility{};
    std::vector<LLTableRow> table;
};

// Exhaustive over 2^n candidate sets; guarded to n <= 12. Ties between
// equal-utility sets break toward fewer agents, then lexicographic order.
LLSolution optimal_ll_anonymous(const Instance& inst);

// Baseline when payments may depend on who succeeded: pay each incentivized
// agent c_i/q_i on own success. Extracts the full surplus of {i : q_i > c_i}.
struct GeneralContract {
    AgentSet set;
    std::vector<Scalar> payments; // length n; zero for non-members
    Scalar utility{};
};

GeneralContract general_optimal(const Instance& inst);

} // namespace anoncontract
