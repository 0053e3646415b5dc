#include "anoncontract/ll_optimal.hpp"

#include "anoncontract/errors.hpp"
#include "anoncontract/linprog.hpp"
#include "anoncontract/probability.hpp"

#include <string>
#include <utility>

namespace anoncontract {

SetLPOutcome optimal_ll_for_set(const Instance& inst, const AgentSet& S) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    if (S.universe() != n)
        throw ValidationError("agent set universe does not match agent count");
    for (int i : S.members())
        if (inst.agent(i).q.sign() <= 0)
            throw ValidationError("candidate set contains agent " + std::to_string(i + 1) +
                                  " with zero success probability");

    SetLPOutcome out;
    const int m = S.size();
    if (m == 0) {
        out.feasible = true;
        out.w.assign(static_cast<std::size_t>(n), Scalar::zero(mode));
        out.payment = Scalar::zero(mode);
        out.utility = Scalar::zero(mode);
        return out;
    }

    LinearProgram lp;
    lp.mode = mode;
    lp.objective.assign(static_cast<std::size_t>(m), Scalar::zero(mode));

    // Members must weakly prefer working: q_i * E[w at 1 + successes of
    // S\{i}] >= c_i. The same coefficients, summed, are the expected payment.
    for (int i : S.members()) {
        const SuccessDistribution others = success_dist_excluding(inst, S, i);
        const Scalar qi = inst.agent(i).q;
        LPRow row;
        row.coeffs.reserve(static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j) row.coeffs.push_back(qi * others.at(j - 1));
        row.rhs = inst.agent(i).c;
        for (int j = 0; j < m; ++j)
            lp.objective[static_cast<std::size_t>(j)] += row.coeffs[static_cast<std::size_t>(j)];
        lp.ge.push_back(std::move(row));
    }
    // Outsiders must weakly prefer not to join; their co-workers are S itself.
    const SuccessDistribution dist_S = success_dist(inst, S);
    for (int i = 0; i < n; ++i) {
        if (S.contains(i)) continue;
        const Scalar qi = inst.agent(i).q;
        LPRow row;
        row.coeffs.reserve(static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j) row.coeffs.push_back(qi * dist_S.at(j - 1));
        row.rhs = inst.agent(i).c;
        lp.le.push_back(std::move(row));
    }

    const LPResult res = solve_lp(lp);
    if (res.status == LPStatus::Infeasible) {
        out.feasible = false;
        return out;
    }
    if (res.status == LPStatus::Unbounded)
        throw InternalCheckError("payment minimization reported unbounded despite nonnegative costs");

    out.feasible = true;
    out.w.assign(static_cast<std::size_t>(n), Scalar::zero(mode));
    for (int j = 0; j < m; ++j) out.w[static_cast<std::size_t>(j)] = res.x[static_cast<std::size_t>(j)];
    out.payment = res.objective;
    Scalar successes = Scalar::zero(mode);
    for (int i : S.members()) successes += inst.agent(i).q;
    out.utility = successes - out.payment;
    return out;
}

LLSolution optimal_ll_anonymous(const Instance& inst) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    if (n > 12)
        throw GuardError("limited-liability search limited to 12 agents (got " +
                         std::to_string(n) + ")");

    LLSolution best;
    best.set = AgentSet(n);
    best.w.assign(static_cast<std::size_t>(n), Scalar::zero(mode));
    best.utility = Scalar::zero(mode);
    bool have_best = false;

    const std::uint64_t total = 1ull << n;
    best.table.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const AgentSet S = AgentSet::from_mask(n, mask);
        LLTableRow row;
        row.set = S;
        bool skip = false;
        for (int i : S.members())
            if (inst.agent(i).q.sign() <= 0) { skip = true; break; }
        if (skip) {
            row.status = SetStatus::Skipped;
            best.table.push_back(std::move(row));
            continue;
        }
        SetLPOutcome out = optimal_ll_for_set(inst, S);
        if (!out.feasible) {
            row.status = SetStatus::Infeasible;
            best.table.push_back(std::move(row));
            continue;
        }
        row.status = SetStatus::Optimal;
        row.utility = out.utility;
        const bool better =
            !have_best || out.utility > best.utility ||
            (out.utility == best.utility &&
             (S.size() < best.set.size() ||
              (S.size() == best.set.size() && AgentSet::lex_less(S, best.set))));
        if (better) {
            best.set = S;
            best.w = std::move(out.w);
            best.utility = out.utility;
            have_best = true;
        }
        best.table.push_back(std::move(row));
    }
    return best;
}

GeneralContract general_optimal(const Instance& inst) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    GeneralContract g;
    g.set = AgentSet(n);
    g.payments.assign(static_cast<std::size_t>(n), Scalar::zero(mode));
    g.utility = Scalar::zero(mode);
    for (int i = 0; i < n; ++i) {
        const Agent& a = inst.agent(i);
        if (a.q > a.c) {
            g.set.add(i);
            g.payments[static_cast<std::size_t>(i)] = a.c / a.q;
            g.utility += a.q - a.c;
        }
    }
    return g;
}

} // namespace anoncontract
