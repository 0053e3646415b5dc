#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// One agent: succeeds with probability q when exerting effort at cost c.
// The project reward per success is normalized to 1.
struct Agent {
    Scalar q;
    Scalar c;
};

// Immutable set of agents with the canonical density ordering precomputed.
// Density of agent i is c_i/q_i; agents with q_i = 0 sort last (treated as
// infinite density), ties break by ascending original index.
class Instance {
public:
    Instance() = default; // zero agents, exact mode
    Instance(std::vector<Agent> agents, Mode mode);

    int n() const { return static_cast<int>(agents_.size()); }
    Mode mode() const { return mode_; }
    const Agent& agent(int i) const { return agents_[static_cast<std::size_t>(i)]; }
    const std::vector<Agent>& agents() const { return agents_; }
    // 0-based agent ids sorted by nondecreasing density.
    const std::vector<int>& density_order() const { return density_order_; }

    bool finite_density(int i) const { return agents_[static_cast<std::size_t>(i)].q.sign() > 0; }
    // Requires finite_density(i).
    Scalar density(int i) const;

    // density(a) <= density(b) under the infinite-density convention. Exact
    // in exact mode (cross-multiplied), consistent in float mode.
    bool density_leq(int a, int b) const;

private:
    std::vector<Agent> agents_;
    std::vector<int> density_order_;
    Mode mode_ = Mode::Exact;
};

struct WelfareResult {
    Scalar value;
    AgentSet argmax; // {i : q_i > c_i}
};

// Max over sets of expected reward minus total cost; with additive rewards
// this is sum_i max(q_i - c_i, 0).
WelfareResult social_welfare(const Instance& inst);

// Same agents re-expressed in the requested numeric mode.
Instance instance_in_mode(const Instance& inst, Mode mode);

} // namespace anoncontract
