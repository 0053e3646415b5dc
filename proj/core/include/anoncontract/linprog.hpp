#pragma once

#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// One linear constraint: coeffs . x  (>= | <=)  rhs.
struct LPRow {
    std::vector<Scalar> coeffs;
    Scalar rhs{};
};

// minimize objective . x  subject to the rows and x >= 0.
struct LinearProgram {
    Mode mode = Mode::Exact;
    std::vector<Scalar> objective;
    std::vector<LPRow> ge;
    std::vector<LPRow> le;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Scalar> x; // valid when Optimal
    Scalar objective{};    // valid when Optimal
};

// Two-phase primal simplex with Bland's anti-cycling rule. All pivoting is
// done over exact rationals regardless of the program's mode (float data is
// lifted to the dyadic rationals it already denotes), so feasibility
// verdicts carry no roundoff; results are converted back to the program's
// mode. Intended for small programs (tens of variables).
LPResult solve_lp(const LinearProgram& lp);

} // namespace anoncontract
