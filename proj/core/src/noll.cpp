#include "anoncontract/noll.hpp"

#include "anoncontract/equilibrium.hpp"
#include "anoncontract/errors.hpp"
#include "anoncontract/linalg.hpp"
#include "anoncontract/probability.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace anoncontract {

KStarContract log_contract(const Instance& inst) {
    const int n = inst.n();
    const Mode mode = inst.mode();

    KStarContract out;
    out.surplus_order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.surplus_order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(out.surplus_order.begin(), out.surplus_order.end(), [&](int a, int b) {
        const Scalar sa = inst.agent(a).q - inst.agent(a).c;
        const Scalar sb = inst.agent(b).q - inst.agent(b).c;
        return sb < sa;
    });

    auto surplus_at = [&](int rank) { // rank 1-based in the sorted order
        const int id = out.surplus_order[static_cast<std::size_t>(rank - 1)];
        return inst.agent(id).q - inst.agent(id).c;
    };

    out.equilibrium = AgentSet(n);
    out.utility = Scalar::zero(mode);
    out.harmonic_bound = Scalar::zero(mode);
    if (n == 0 || surplus_at(1).sign() < 0) {
        // Nothing worth incentivizing; the zero contract is optimal here.
        out.k_star = 0;
        out.w = AnonymousContract::zero(n, mode);
        return out;
    }

    int k_star = 1;
    Scalar best = surplus_at(1);
    for (int k = 2; k <= n; ++k) {
        const Scalar value = Scalar::of(mode, k) * surplus_at(k);
        // Strict so the smallest k wins ties; tolerance-aware so float-mode
        // roundoff cannot promote a later, mathematically equal candidate.
        if (strictly_greater(value, best)) {
            best = value;
            k_star = k;
        }
    }
    out.k_star = k_star;

    const Scalar s_star = surplus_at(k_star);
    Scalar prod_q = Scalar::one(mode);
    for (int k = 1; k <= k_star; ++k)
        prod_q *= inst.agent(out.surplus_order[static_cast<std::size_t>(k - 1)]).q;
    // s_star = 0 forces the ratio to 0 even when the product vanishes too
    // (a zero-surplus agent may have q = c = 0).
    const Scalar ratio =
        s_star.sign() == 0 ? Scalar::zero(mode) : s_star / prod_q;

    std::vector<Payment> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        if (j < k_star)
            entries.push_back(Payment::finite(Scalar::one(mode)));
        else if (j == k_star)
            entries.push_back(Payment::finite(Scalar::one(mode) - ratio));
        else
            entries.push_back(Payment::make_blocked());
    }
    out.w = AnonymousContract(std::move(entries), mode);

    for (int k = 1; k <= k_star; ++k)
        out.equilibrium.add(out.surplus_order[static_cast<std::size_t>(k - 1)]);
    out.utility = Scalar::of(mode, k_star) * s_star;
    out.harmonic_bound = harmonic_number(n, mode) * out.utility;
    return out;
}

FullExtractionContract full_extraction(const Instance& inst) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    const WelfareResult wf = social_welfare(inst);
    const std::vector<int> members = wf.argmax.members();
    const int m = static_cast<int>(members.size());

    // Distinctness of q among the profitable agents (the system matrix is a
    // rescaled Vandermonde-like basis; repeats make it singular).
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            const Scalar qa = inst.agent(members[static_cast<std::size_t>(a)]).q;
            const Scalar qb = inst.agent(members[static_cast<std::size_t>(b)]).q;
            const bool same = mode == Mode::Exact
                                  ? qa == qb
                                  : std::fabs(qa.dbl() - qb.dbl()) < 1e-10;
            if (same)
                throw ValidationError(
                    "success-count system is singular: profitable agents " +
                    std::to_string(members[static_cast<std::size_t>(a)] + 1) + " and " +
                    std::to_string(members[static_cast<std::size_t>(b)] + 1) +
                    " share success probability " + qa.str());
        }
    }

    // Reduced instance over the profitable agents, original order.
    std::vector<Agent> reduced;
    reduced.reserve(static_cast<std::size_t>(m));
    for (int id : members) reduced.push_back(inst.agent(id));
    const Instance rinst(std::move(reduced), mode);

    FullExtractionContract out;
    out.set = wf.argmax;
    out.utility = wf.value;

    std::vector<Scalar> solved(static_cast<std::size_t>(m), Scalar::zero(mode));
    if (m > 0) {
        const QMatrix qm = q_matrix(rinst);
        if (mode == Mode::Exact) {
            std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m),
                                                 std::vector<Rational>(static_cast<std::size_t>(m)));
            std::vector<Rational> b(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = qm.at(i, j).rat();
                b[static_cast<std::size_t>(i)] = rinst.agent(i).c.rat();
            }
            ExactSolveResult sol = solve_linear_exact(std::move(a), std::move(b));
            if (sol.singular)
                throw InternalCheckError("success-count system singular despite distinct probabilities");
            for (int j = 0; j < m; ++j) solved[static_cast<std::size_t>(j)] = Scalar::exact(sol.x[static_cast<std::size_t>(j)]);
        } else {
            std::vector<std::vector<double>> a(static_cast<std::size_t>(m),
                                               std::vector<double>(static_cast<std::size_t>(m)));
            std::vector<double> b(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = qm.at(i, j).dbl();
                b[static_cast<std::size_t>(i)] = rinst.agent(i).c.dbl();
            }
            FloatSolveResult sol = solve_linear_float(a, b);
            if (sol.singular)
                throw InternalCheckError("success-count system singular despite distinct probabilities");
            out.conditioning_warning = sol.ill_conditioned;
            // Residual guard: the solve must actually reproduce the costs.
            double resid = 0.0;
            for (int i = 0; i < m; ++i) {
                double s = -b[static_cast<std::size_t>(i)];
                for (int j = 0; j < m; ++j) s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
                resid = std::max(resid, std::fabs(s));
            }
            if (resid > 1e-8)
                throw InternalCheckError("full-extraction solve residual " + std::to_string(resid) +
                                         " exceeds 1e-8");
            for (int j = 0; j < m; ++j) solved[static_cast<std::size_t>(j)] = Scalar::floating(sol.x[static_cast<std::size_t>(j)]);
        }
    }

    std::vector<Payment> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        if (j <= m)
            entries.push_back(Payment::finite(solved[static_cast<std::size_t>(j - 1)]));
        else
            entries.push_back(Payment::make_blocked()); // deter any (m+1)-th success
    }
    out.w = AnonymousContract(std::move(entries), mode);

    if (!is_pne(inst, out.w, out.set))
        throw InternalCheckError("full-extraction contract failed its own equilibrium check");
    return out;
}

} // namespace anoncontract
