#pragma once

#include "anoncontract/agent_set.hpp"
#include "anoncontract/contract.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace anoncontract {

// Instance families used by the solver suites and stress tests. All
// constructions are exact; convert with instance_in_mode when float-mode
// instances are wanted.

// Geometric probability ladder with a common tiny per-agent margin eps:
// welfare stays at ell * eps while any nonnegative anonymous contract is
// squeezed toward the margin. ratio is clamped to 2^n (larger spreads add
// nothing once every rung is occupied); padding agents beyond the ladder
// are strictly unprofitable.
struct SpreadInstance {
    Instance inst;
    int ell = 0;          // ladder height, floor(log2(ratio after clamping))
    Rational epsilon;     // per-agent margin
    bool clamped = false; // ratio was reduced to 2^n
    Rational ratio_used;
};

SpreadInstance gen_spread(const Rational& ratio, int n);

// Equal success probability q; costs rise so every density-order prefix of
// the uniform-contract scan is equally good. Welfare is (q - c) * H_n while
// the best uniform contract earns exactly q - c.
Instance gen_equal_q_harmonic(const Rational& q, const Rational& c, int n);

// Equal cost c with q_i = c(1 + 1/i); the welfare-to-uniform gap grows
// logarithmically in n. Requires c <= 1/2 so q_1 <= 1.
Instance gen_equal_c_harmonic(const Rational& c, int n);

// Given nondecreasing probabilities and a target uniform-contract value Z,
// choose costs so that every prefix of the density order yields exactly Z.
Instance gen_tight_costs(const std::vector<Rational>& q, const Rational& Z);

// Two-agent example where equilibria of one contract differ in principal
// utility by a factor (1 - eps) / (2 eps): unboundedly bad equilibrium
// selection as eps -> 0.
struct GapExample {
    Instance inst;
    AnonymousContract w; // (1/2, 0)
};

GapExample gen_unbounded_gap(const Rational& eps);

// Two-agent example whose second agent cannot be incentivized alone by any
// nonnegative anonymous contract (for eps < 2/3; at eps = 2/3 the two
// conflicting requirements meet exactly).
struct InfeasibleExample {
    Instance inst;
    AgentSet target; // {2}: the set every nonnegative contract misses
};

InfeasibleExample gen_infeasible(const Rational& eps);

// sum over prefixes: v_l / (v_1 + ... + v_l). Equal entries give H_n.
// All entries must be positive and share one mode.
Scalar h_function(const std::vector<Scalar>& v);

// Probability profile maximizing h over [a, b]^n: geometric partial sums
// F_i = a * rho^{i-1} with rho solving rho^{n-1} - rho^{n-2} = b / a
// (bisected; no closed form). Endpoint identities q_1 = a, q_n = b are
// asserted to 1e-9 relative.
struct WorstCaseProfile {
    std::vector<double> q;
    double rho = 1.0;
};

WorstCaseProfile worst_case_q(double a, double b, int n);

// Reproducible random instances: q uniform on [qmin, qmax] (dyadic draws,
// exact), c uniform on [0, q_i].
Instance gen_random(std::uint64_t seed, int n, const Rational& qmin, const Rational& qmax);

// Named-family plumbing for the CLI and sweeps.
struct FamilySpec {
    std::string family; // spread | equal_q_harmonic | equal_c_harmonic |
                        // tight_costs | unbounded_gap | infeasible_set | random
    std::map<std::string, std::string> params; // raw value tokens
};

struct GeneratedInstance {
    Instance inst;
    std::optional<AnonymousContract> contract; // unbounded_gap ships one
    std::optional<AgentSet> target;            // infeasible_set ships one
    std::map<std::string, std::string> info;   // e.g. ell, epsilon, clamped
};

// Builds the family in exact arithmetic, then converts to the requested
// mode. Unknown family names or missing/malformed parameters raise
// ValidationError naming what was expected.
GeneratedInstance generate(const FamilySpec& spec, Mode mode);

} // namespace anoncontract
