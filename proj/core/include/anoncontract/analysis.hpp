#pragma once

#include "anoncontract/instance.hpp"
#include "anoncontract/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace anoncontract {

// One named bound or guarantee evaluated on an instance. Inapplicable means
// the premise failed (or a needed quantity was unavailable), not that the
// bound was violated.
struct BoundFlag {
    std::string name;
    bool applicable = false;
    bool ok = false; // meaningful only when applicable
};

// Side-by-side values of the contract classes on one instance, with the
// library's bound checks. Log-based bounds are evaluated in doubles with a
// 1e-9 relative slack; everything else compares exactly in exact mode.
struct GapReport {
    int n = 0;
    Scalar sw{}; // social welfare
    Scalar ua{}; // optimal uniform anonymous contract value

    bool q_ratio_available = false; // false when some q_i = 0
    Scalar q_ratio{};               // max q / min q

    bool opt_ll_available = false; // limited-liability oracle is 2^n: skipped when n > 12
    Scalar opt_ll{};

    Scalar noll_log{}; // threshold-contract (k*) utility

    bool noll_full_available = false; // full extraction needs distinct q and a profitable agent
    Scalar noll_full{};
    std::string noll_full_reason; // set when unavailable

    std::vector<BoundFlag> flags; // fixed order: order, qspread, cspread,
                                  // lowdens, denscap, harmonic, extract
};

// delta tunes the welfare-concentration premise (lowdens flag); alpha is the
// density cap (denscap flag). Both default to 1/2.
GapReport gap_report(const Instance& inst);
GapReport gap_report(const Instance& inst, const Scalar& delta, const Scalar& alpha);

// Cartesian parameter grid for one instance family. Axis values are raw
// tokens handed to the family constructor; axes are sorted by parameter
// name, and the last axis varies fastest.
struct SweepSpec {
    std::string family;
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    Mode mode = Mode::Exact;
};

// One CSV row per grid point, in deterministic order. Guard or validation
// failures fill the status column and never abort the sweep. An empty grid
// yields the header only.
std::string sweep(const SweepSpec& spec);

} // namespace anoncontract
