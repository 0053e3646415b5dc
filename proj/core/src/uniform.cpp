#include "anoncontract/uniform.hpp"

#include "anoncontract/contract.hpp"
#include "anoncontract/equilibrium.hpp"
#include "anoncontract/errors.hpp"

#include <string>

namespace anoncontract {

UniformSolution solve_uniform(const Instance& inst) {
    const Mode mode = inst.mode();
    UniformSolution best;
    best.k = 0;
    best.w = Scalar::zero(mode);
    best.utility = Scalar::zero(mode);
    best.prefix = AgentSet(inst.n());

    const std::vector<int>& order = inst.density_order();
    Scalar sum_q = Scalar::zero(mode);
    const Scalar one = Scalar::one(mode);
    for (int k = 1; k <= inst.n(); ++k) {
        const int id = order[static_cast<std::size_t>(k - 1)];
        if (!inst.finite_density(id)) break; // q = 0 agents close the list
        sum_q += inst.agent(id).q;
        const Scalar d = inst.density(id);
        const Scalar value = (one - d) * sum_q;
        best.candidates.push_back(value);
        // Strict so the smallest k wins ties; tolerance-aware so float-mode
        // roundoff cannot promote a later, mathematically equal candidate.
        if (strictly_greater(value, best.utility)) {
            best.k = k;
            best.w = d;
            best.utility = value;
        }
    }
    for (int k = 0; k < best.k; ++k)
        best.prefix.add(order[static_cast<std::size_t>(k)]);
    return best;
}

AgentSet verify_unique_prefix_pne(const Instance& inst, const Scalar& w) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    if (w.mode() != mode)
        throw ValidationError("payment and instance numeric modes differ");

    AgentSet strict_prefix(n); // agents strictly preferring to work
    AgentSet weak_prefix(n);   // agents weakly preferring to work
    for (int i = 0; i < n; ++i) {
        const Agent& a = inst.agent(i);
        const Scalar gain = a.q * w;
        if (strictly_greater(gain, a.c)) strict_prefix.add(i);
        if (approx_ge(gain, a.c)) weak_prefix.add(i);
    }

    const AnonymousContract contract = AnonymousContract::uniform(n, w);
    const std::vector<PneEntry> pne = enumerate_pne(inst, contract);

    // Expected family: every superset of the strict prefix inside the weak one.
    std::uint64_t expected = 1;
    for (int i = 0; i < n; ++i)
        if (weak_prefix.contains(i) && !strict_prefix.contains(i)) expected <<= 1;
    if (pne.size() != expected)
        throw InternalCheckError("constant contract admits " + std::to_string(pne.size()) +
                                 " equilibria; prefix structure predicts " +
                                 std::to_string(expected));
    for (const PneEntry& e : pne) {
        for (int i = 0; i < n; ++i) {
            const bool in = e.set.contains(i);
            if (strict_prefix.contains(i) && !in)
                throw InternalCheckError("equilibrium omits an agent strictly preferring to work");
            if (!weak_prefix.contains(i) && in)
                throw InternalCheckError("equilibrium includes an agent strictly preferring to stop");
        }
    }
    return weak_prefix;
}

} // namespace anoncontract
