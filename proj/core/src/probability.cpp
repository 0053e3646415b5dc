#include "anoncontract/probability.hpp"

#include "anoncontract/errors.hpp"

namespace anoncontract {

Scalar SuccessDistribution::at(int k) const {
    if (k < 0 || k > max_count()) return Scalar::zero(mode);
    return p[static_cast<std::size_t>(k)];
}

SuccessDistribution success_dist(const Instance& inst, const AgentSet& S) {
    const Mode mode = inst.mode();
    SuccessDistribution dist;
    dist.mode = mode;
    dist.p = {Scalar::one(mode)};
    for (int i : S.members()) {
        const Scalar q = inst.agent(i).q;
        const Scalar nq = Scalar::one(mode) - q;
        std::vector<Scalar> next(dist.p.size() + 1, Scalar::zero(mode));
        for (std::size_t k = 0; k < dist.p.size(); ++k) {
            next[k] += dist.p[k] * nq;
            next[k + 1] += dist.p[k] * q;
        }
        dist.p = std::move(next);
    }
    return dist;
}

SuccessDistribution success_dist_excluding(const Instance& inst, const AgentSet& S, int i) {
    return success_dist(inst, S.without(i));
}

QMatrix q_matrix(const Instance& inst) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    QMatrix m;
    m.n = n;
    m.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Scalar::zero(mode));
    const AgentSet all = AgentSet::full(n);
    for (int i = 0; i < n; ++i) {
        const SuccessDistribution rest = success_dist_excluding(inst, all, i);
        const Scalar qi = inst.agent(i).q;
        for (int j = 0; j < n; ++j)
            m.entries[static_cast<std::size_t>(i) * n + j] = qi * rest.at(j);
    }
    return m;
}

} // namespace anoncontract
