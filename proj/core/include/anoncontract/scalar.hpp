#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace anoncontract {

using Rational = mpq_class;

// Arithmetic mode is fixed for a whole run; values of different modes never mix.
enum class Mode { Exact, Float };

// Dual-representation number: exact rational or IEEE double, tagged by Mode.
// Exact-mode arithmetic is exact; float mode is plain double arithmetic and
// comparisons go through the tolerance helpers below.
class Scalar {
public:
    Scalar() : mode_(Mode::Exact), rat_(0), dbl_(0.0) {}

    static Scalar exact(Rational v);
    static Scalar exact(long num, long den = 1);
    static Scalar floating(double v);
    static Scalar zero(Mode m);
    static Scalar one(Mode m);
    // Mode-dispatched construction from a small fraction.
    static Scalar of(Mode m, long num, long den = 1);

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::Exact; }

    const Rational& rat() const;
    double dbl() const;
    double to_double() const;
    // Exact in both modes; doubles are rationals.
    Rational to_rational() const;

    int sign() const;
    Scalar abs() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    // Exact value comparisons (no tolerance, valid in both modes).
    bool operator==(const Scalar& o) const { return cmp(o) == 0; }
    bool operator!=(const Scalar& o) const { return cmp(o) != 0; }
    bool operator<(const Scalar& o) const { return cmp(o) < 0; }
    bool operator<=(const Scalar& o) const { return cmp(o) <= 0; }
    bool operator>(const Scalar& o) const { return cmp(o) > 0; }
    bool operator>=(const Scalar& o) const { return cmp(o) >= 0; }

    // Canonical token: exact -> integer, exact decimal, or "p/q"; float ->
    // shortest round-trip decimal. Parsing either form reloads bit-exactly.
    std::string str() const;

private:
    int cmp(const Scalar& o) const;
    void require_mode(Mode m) const;

    Mode mode_;
    Rational rat_;
    double dbl_;
};

inline constexpr double kDefaultTolerance = 1e-9;

// Relative tolerance scale: max(|a|, |b|, 1).
double tolerance_scale(const Scalar& a, const Scalar& b);

// a >= b, allowing slack tau * scale in float mode; exact comparison otherwise.
bool approx_ge(const Scalar& a, const Scalar& b, double tau = kDefaultTolerance);
bool approx_le(const Scalar& a, const Scalar& b, double tau = kDefaultTolerance);
bool approx_eq(const Scalar& a, const Scalar& b, double tau = kDefaultTolerance);
// a > b by more than tau * scale in float mode; strict exact comparison otherwise.
bool strictly_greater(const Scalar& a, const Scalar& b, double tau = kDefaultTolerance);

// Parses "p/q", a decimal/scientific literal, or an integer literal into an
// exact rational. Throws ValidationError on malformed input.
Rational rational_from_token(const std::string& token);

// Nearest double to a rational, ties to even (GMP's own conversion truncates).
double rational_to_double(const Rational& r);

// Mode-aware token parsing. Float mode parses decimals with correct rounding.
Scalar scalar_from_token(const std::string& token, Mode mode);

// Sum of 1/1 + 1/2 + ... + 1/n in the requested mode.
Scalar harmonic_number(int n, Mode mode);

// Re-express a value in the requested mode: exact -> the double it rounds
// to; float -> the dyadic rational the double denotes exactly.
Scalar scalar_in_mode(const Scalar& s, Mode mode);

} // namespace anoncontract
