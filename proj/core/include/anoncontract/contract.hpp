#pragma once

#include "anoncontract/scalar.hpp"

#include <vector>

namespace anoncontract {

// Per-success payment for one success count. A blocked entry means the
// principal forbids that outcome outright (infinitely harsh punishment);
// it is the device that lets negative-payment constructions stay anonymous.
struct Payment {
    bool blocked = false;
    Scalar value{}; // meaningful only when !blocked

    static Payment finite(Scalar v) { return Payment{false, std::move(v)}; }
    static Payment make_blocked() { return Payment{true, Scalar{}}; }
};

// Anonymous contract: entry j (1-based) is paid to every successful agent
// when exactly j agents succeed in total. Length always matches the number
// of agents in the instance it is evaluated against.
class AnonymousContract {
public:
    AnonymousContract() = default; // empty exact-mode contract
    AnonymousContract(std::vector<Payment> w, Mode mode);

    static AnonymousContract uniform(int n, const Scalar& w);
    static AnonymousContract zero(int n, Mode mode);

    int n() const { return static_cast<int>(w_.size()); }
    Mode mode() const { return mode_; }
    // 1-based success count; throws std::logic_error outside [1, n].
    const Payment& at(int j) const;
    const std::vector<Payment>& entries() const { return w_; }

    bool has_blocked() const;
    // True when every entry is finite and nonnegative.
    bool limited_liability() const;

    // Same entries re-expressed in the requested numeric mode.
    AnonymousContract in_mode(Mode mode) const;

private:
    std::vector<Payment> w_;
    Mode mode_ = Mode::Exact;
};

} // namespace anoncontract
