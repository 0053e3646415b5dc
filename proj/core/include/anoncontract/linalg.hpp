#pragma once

#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// Square dense solves used by the full-extraction construction and by test
// oracles. Matrices are row-major vectors of rows.

struct ExactSolveResult {
    bool singular = false;
    std::vector<Rational> x;
};

// Gauss-Jordan over the rationals; exact singularity detection.
ExactSolveResult solve_linear_exact(std::vector<std::vector<Rational>> a,
                                    std::vector<Rational> b);

struct FloatSolveResult {
    bool singular = false;         // no usable pivot at some stage
    bool ill_conditioned = false;  // some pivot magnitude below the threshold
    std::vector<double> x;
};

// Gaussian elimination with partial pivoting. Pivots smaller than
// pivot_warning flag the system as ill conditioned; exact zeros are singular.
FloatSolveResult solve_linear_float(std::vector<std::vector<double>> a,
                                    std::vector<double> b,
                                    double pivot_warning = 1e-12);

} // namespace anoncontract
