#include "anoncontract/linprog.hpp"

#include "anoncontract/errors.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace anoncontract {

namespace {

Rational lift(const Scalar& s) {
    // Doubles are dyadic rationals; mpq_class(double) is exact.
    return s.is_exact() ? s.rat() : Rational(s.dbl());
}

// Dense simplex tableau over exact rationals.
struct Tableau {
    int rows = 0;
    int cols = 0;                        // variables, rhs excluded
    std::vector<std::vector<Rational>> t; // rows x (cols + 1); last entry = rhs
    std::vector<int> basis;               // basic variable per row

    Rational& at(int r, int c) { return t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    const Rational& at(int r, int c) const { return t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    Rational& rhs(int r) { return t[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)]; }
    const Rational& rhs(int r) const { return t[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)]; }

    void pivot(int pr, int pc) {
        const Rational p = at(pr, pc);
        for (int c = 0; c <= cols; ++c) at(pr, c) /= p;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const Rational f = at(r, pc);
            if (f == 0) continue;
            for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
        }
        basis[static_cast<std::size_t>(pr)] = pc;
    }
};

// Minimize cost . x over the tableau's feasible region. Returns false when
// unbounded. cost has one entry per tableau column.
bool run_simplex(Tableau& tb, const std::vector<Rational>& cost) {
    for (;;) {
        // Reduced costs from scratch: dimensions here are tiny.
        std::vector<Rational> y(static_cast<std::size_t>(tb.rows));
        for (int r = 0; r < tb.rows; ++r)
            y[static_cast<std::size_t>(r)] = cost[static_cast<std::size_t>(tb.basis[static_cast<std::size_t>(r)])];
        int enter = -1;
        for (int c = 0; c < tb.cols; ++c) {
            Rational rc = cost[static_cast<std::size_t>(c)];
            for (int r = 0; r < tb.rows; ++r)
                rc -= y[static_cast<std::size_t>(r)] * tb.at(r, c);
            if (rc < 0) { enter = c; break; } // Bland: smallest improving index
        }
        if (enter < 0) return true;
        int leave = -1;
        Rational best_ratio;
        for (int r = 0; r < tb.rows; ++r) {
            if (tb.at(r, enter) <= 0) continue;
            Rational ratio = tb.rhs(r) / tb.at(r, enter);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio &&
                 tb.basis[static_cast<std::size_t>(r)] < tb.basis[static_cast<std::size_t>(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false; // improving ray: unbounded
        tb.pivot(leave, enter);
    }
}

} // namespace

LPResult solve_lp(const LinearProgram& lp) {
    const std::size_t nvar = lp.objective.size();
    for (const LPRow& row : lp.ge)
        if (row.coeffs.size() != nvar)
            throw ValidationError("linear program row width does not match objective length");
    for (const LPRow& row : lp.le)
        if (row.coeffs.size() != nvar)
            throw ValidationError("linear program row width does not match objective length");

    // Normalized rows: coeffs . x + slack_sign * s = rhs with rhs >= 0.
    struct NormRow {
        std::vector<Rational> a;
        Rational b;
        int slack_sign; // +1 slack, -1 surplus
    };
    std::vector<NormRow> rows;
    auto add_row = [&](const LPRow& row, bool ge) {
        NormRow nr;
        nr.a.reserve(nvar);
        for (const Scalar& s : row.coeffs) nr.a.push_back(lift(s));
        nr.b = lift(row.rhs);
        // a.x >= b  <=>  a.x - s = b; flip sign when b < 0 so rhs stays >= 0.
        bool flip = nr.b < 0;
        if (flip) {
            for (Rational& v : nr.a) v = -v;
            nr.b = -nr.b;
            ge = !ge;
        }
        nr.slack_sign = ge ? -1 : +1;
        rows.push_back(std::move(nr));
    };
    for (const LPRow& row : lp.ge) add_row(row, true);
    for (const LPRow& row : lp.le) add_row(row, false);

    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(nvar);
    // Surplus rows need an artificial basic variable for the initial basis.
    int nart = 0;
    for (const NormRow& r : rows)
        if (r.slack_sign < 0) ++nart;

    Tableau tb;
    tb.rows = m;
    tb.cols = n + m + nart; // structural + one slack/surplus per row + artificials
    tb.t.assign(static_cast<std::size_t>(m),
                std::vector<Rational>(static_cast<std::size_t>(tb.cols) + 1, Rational(0)));
    tb.basis.assign(static_cast<std::size_t>(m), 0);
    int art = n + m;
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) tb.at(r, c) = rows[static_cast<std::size_t>(r)].a[static_cast<std::size_t>(c)];
        tb.at(r, n + r) = Rational(rows[static_cast<std::size_t>(r)].slack_sign);
        tb.rhs(r) = rows[static_cast<std::size_t>(r)].b;
        if (rows[static_cast<std::size_t>(r)].slack_sign > 0) {
            tb.basis[static_cast<std::size_t>(r)] = n + r;
        } else {
            tb.at(r, art) = Rational(1);
            tb.basis[static_cast<std::size_t>(r)] = art;
            ++art;
        }
    }

    LPResult res;

    if (nart > 0) {
        // Phase 1: minimize the sum of artificials.
        std::vector<Rational> cost1(static_cast<std::size_t>(tb.cols), Rational(0));
        for (int c = n + m; c < tb.cols; ++c) cost1[static_cast<std::size_t>(c)] = Rational(1);
        if (!run_simplex(tb, cost1))
            throw InternalCheckError("phase-1 simplex reported an unbounded program");
        Rational phase1 = 0;
        for (int r = 0; r < m; ++r)
            if (tb.basis[static_cast<std::size_t>(r)] >= n + m) phase1 += tb.rhs(r);
        if (phase1 != 0) {
            res.status = LPStatus::Infeasible;
            return res;
        }
        // Drive surviving zero-valued artificials out of the basis; rows
        // where that is impossible are redundant and get dropped.
        for (int r = 0; r < m; ++r) {
            if (tb.basis[static_cast<std::size_t>(r)] < n + m) continue;
            for (int c = 0; c < n + m; ++c)
                if (tb.at(r, c) != 0) { tb.pivot(r, c); break; }
        }
    }

    // Phase 2: rebuild without artificial columns, price the original
    // objective.
    Tableau ph2;
    ph2.cols = n + m;
    for (int r = 0; r < tb.rows; ++r) {
        if (tb.basis[static_cast<std::size_t>(r)] >= n + m) continue; // redundant row
        std::vector<Rational> row(static_cast<std::size_t>(ph2.cols) + 1, Rational(0));
        for (int c = 0; c < n + m; ++c) row[static_cast<std::size_t>(c)] = tb.at(r, c);
        row[static_cast<std::size_t>(ph2.cols)] = tb.rhs(r);
        ph2.t.push_back(std::move(row));
        ph2.basis.push_back(tb.basis[static_cast<std::size_t>(r)]);
    }
    ph2.rows = static_cast<int>(ph2.t.size());

    std::vector<Rational> cost2(static_cast<std::size_t>(ph2.cols), Rational(0));
    for (int c = 0; c < n; ++c) cost2[static_cast<std::size_t>(c)] = lift(lp.objective[static_cast<std::size_t>(c)]);
    if (!run_simplex(ph2, cost2)) {
        res.status = LPStatus::Unbounded;
        return res;
    }

    std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
    for (int r = 0; r < ph2.rows; ++r) {
        const int b = ph2.basis[static_cast<std::size_t>(r)];
        if (b < n) x[static_cast<std::size_t>(b)] = ph2.rhs(r);
    }
    Rational obj = 0;
    for (int c = 0; c < n; ++c) obj += lift(lp.objective[static_cast<std::size_t>(c)]) * x[static_cast<std::size_t>(c)];

    res.status = LPStatus::Optimal;
    res.x.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        const Rational& v = x[static_cast<std::size_t>(c)];
        res.x.push_back(lp.mode == Mode::Exact ? Scalar::exact(v)
                                               : Scalar::floating(rational_to_double(v)));
    }
    res.objective = lp.mode == Mode::Exact ? Scalar::exact(obj)
                                           : Scalar::floating(rational_to_double(obj));
    return res;
}

} // namespace anoncontract
