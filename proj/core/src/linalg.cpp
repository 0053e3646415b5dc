#include "anoncontract/linalg.hpp"

#include "anoncontract/errors.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

namespace anoncontract {

ExactSolveResult solve_linear_exact(std::vector<std::vector<Rational>> a,
                                    std::vector<Rational> b) {
    const std::size_t n = a.size();
    if (b.size() != n)
        throw ValidationError("linear system dimensions do not match");
    for (const auto& row : a)
        if (row.size() != n)
            throw ValidationError("linear system matrix is not square");

    ExactSolveResult res;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) {
            res.singular = true;
            return res;
        }
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(b[pivot], b[k]);
        }
        const Rational p = a[k][k];
        for (std::size_t c = k; c < n; ++c) a[k][c] /= p;
        b[k] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k) continue;
            const Rational f = a[r][k];
            if (f == 0) continue;
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    res.x = std::move(b);
    return res;
}

FloatSolveResult solve_linear_float(std::vector<std::vector<double>> a,
                                    std::vector<double> b,
                                    double pivot_warning) {
    const std::size_t n = a.size();
    if (b.size() != n)
        throw ValidationError("linear system dimensions do not match");
    for (const auto& row : a)
        if (row.size() != n)
            throw ValidationError("linear system matrix is not square");

    FloatSolveResult res;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::fabs(a[r][k]) > std::fabs(a[pivot][k])) pivot = r;
        const double p = a[pivot][k];
        if (p == 0.0) {
            res.singular = true;
            return res;
        }
        if (std::fabs(p) < pivot_warning) res.ill_conditioned = true;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(b[pivot], b[k]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r][k] / a[k][k];
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    res.x.assign(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * res.x[c];
        res.x[ri] = s / a[ri][ri];
    }
    return res;
}

} // namespace anoncontract
