#include "anoncontract/instance.hpp"

#include "anoncontract/errors.hpp"

#include <algorithm>
#include <string>

namespace anoncontract {

namespace {

void validate(const std::vector<Agent>& agents, Mode mode) {
    const Scalar zero = Scalar::zero(mode);
    const Scalar one = Scalar::one(mode);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const Agent& a = agents[i];
        if (a.q.mode() != mode || a.c.mode() != mode)
            throw ValidationError("agent parameter mode mismatch at agent " + std::to_string(i + 1));
        if (a.q < zero || a.q > one)
            throw ValidationError("q out of [0,1] at agent " + std::to_string(i + 1));
        if (a.c < zero)
            throw ValidationError("c negative at agent " + std::to_string(i + 1));
    }
}

} // namespace

Instance::Instance(std::vector<Agent> agents, Mode mode)
    : agents_(std::move(agents)), mode_(mode) {
    validate(agents_, mode_);
    density_order_.resize(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i)
        density_order_[i] = static_cast<int>(i);
    // Stable sort keeps ascending-index tie-breaking.
    std::stable_sort(density_order_.begin(), density_order_.end(), [this](int a, int b) {
        const bool fa = finite_density(a), fb = finite_density(b);
        if (fa != fb) return fa; // finite before infinite
        if (!fa) return false;   // both infinite: keep index order
        // c_a/q_a < c_b/q_b  <=>  c_a*q_b < c_b*q_a (q > 0 on both sides).
        const Agent& x = agents_[static_cast<std::size_t>(a)];
        const Agent& y = agents_[static_cast<std::size_t>(b)];
        return x.c * y.q < y.c * x.q;
    });
}

Scalar Instance::density(int i) const {
    const Agent& a = agents_[static_cast<std::size_t>(i)];
    if (a.q.sign() <= 0)
        throw InternalCheckError("density requested for agent with q = 0");
    return a.c / a.q;
}

bool Instance::density_leq(int a, int b) const {
    const bool fa = finite_density(a), fb = finite_density(b);
    if (!fa) return !fb;
    if (!fb) return true;
    const Agent& x = agents_[static_cast<std::size_t>(a)];
    const Agent& y = agents_[static_cast<std::size_t>(b)];
    return x.c * y.q <= y.c * x.q;
}

Instance instance_in_mode(const Instance& inst, Mode mode) {
    std::vector<Agent> agents;
    agents.reserve(static_cast<std::size_t>(inst.n()));
    for (const Agent& a : inst.agents())
        agents.push_back(Agent{scalar_in_mode(a.q, mode), scalar_in_mode(a.c, mode)});
    return Instance(std::move(agents), mode);
}

WelfareResult social_welfare(const Instance& inst) {
    Scalar total = Scalar::zero(inst.mode());
    AgentSet argmax(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        const Agent& a = inst.agent(i);
        const Scalar surplus = a.q - a.c;
        if (surplus.sign() > 0) {
            total += surplus;
            argmax.add(i);
        }
    }
    return WelfareResult{total, argmax};
}

} // namespace anoncontract
