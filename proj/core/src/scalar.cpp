#include "anoncontract/scalar.hpp"

#include "anoncontract/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace anoncontract {

Scalar Scalar::exact(Rational v) {
    Scalar s;
    s.mode_ = Mode::Exact;
    v.canonicalize();
    s.rat_ = std::move(v);
    return s;
}

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw std::logic_error("Scalar::exact: zero denominator");
    return exact(Rational(num, den));
}

Scalar Scalar::floating(double v) {
    Scalar s;
    s.mode_ = Mode::Float;
    s.dbl_ = v;
    return s;
}

Scalar Scalar::zero(Mode m) { return m == Mode::Exact ? exact(0) : floating(0.0); }

Scalar Scalar::one(Mode m) { return m == Mode::Exact ? exact(1) : floating(1.0); }

Scalar Scalar::of(Mode m, long num, long den) {
    if (m == Mode::Exact) return exact(num, den);
    return floating(static_cast<double>(num) / static_cast<double>(den));
}

const Rational& Scalar::rat() const {
    require_mode(Mode::Exact);
    return rat_;
}

double Scalar::dbl() const {
    require_mode(Mode::Float);
    return dbl_;
}

double Scalar::to_double() const { return mode_ == Mode::Exact ? rational_to_double(rat_) : dbl_; }

Rational Scalar::to_rational() const {
    if (mode_ == Mode::Exact) return rat_;
    Rational r(dbl_);
    r.canonicalize();
    return r;
}

int Scalar::sign() const {
    if (mode_ == Mode::Exact) return sgn(rat_);
    return dbl_ > 0.0 ? 1 : (dbl_ < 0.0 ? -1 : 0);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::operator-() const {
    if (mode_ == Mode::Exact) return exact(Rational(-rat_));
    return floating(-dbl_);
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_mode(o.mode_);
    if (mode_ == Mode::Exact) return exact(Rational(rat_ + o.rat_));
    return floating(dbl_ + o.dbl_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_mode(o.mode_);
    if (mode_ == Mode::Exact) return exact(Rational(rat_ - o.rat_));
    return floating(dbl_ - o.dbl_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_mode(o.mode_);
    if (mode_ == Mode::Exact) return exact(Rational(rat_ * o.rat_));
    return floating(dbl_ * o.dbl_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_mode(o.mode_);
    if (o.sign() == 0) throw std::logic_error("Scalar: division by zero");
    if (mode_ == Mode::Exact) return exact(Rational(rat_ / o.rat_));
    return floating(dbl_ / o.dbl_);
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }

int Scalar::cmp(const Scalar& o) const {
    require_mode(o.mode_);
    if (mode_ == Mode::Exact) return ::cmp(rat_, o.rat_);
    return dbl_ > o.dbl_ ? 1 : (dbl_ < o.dbl_ ? -1 : 0);
}

void Scalar::require_mode(Mode m) const {
    if (mode_ != m) throw std::logic_error("Scalar: mixed exact/float arithmetic");
}

namespace {

// Longest exact decimal expansion emitted before falling back to "p/q".
constexpr int kMaxDecimalDigits = 40;

std::string double_token(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    assert(ec == std::errc());
    return std::string(buf, ptr);
}

// If den == 2^a * 5^b with max(a, b) <= kMaxDecimalDigits, returns the exact
// decimal expansion of num/den; otherwise returns empty.
std::string decimal_expansion(const mpz_class& num, const mpz_class& den) {
    mpz_class d = den;
    int twos = 0;
    int fives = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2) && twos <= kMaxDecimalDigits) {
        d /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5) && fives <= kMaxDecimalDigits) {
        d /= 5;
        ++fives;
    }
    int k = std::max(twos, fives);
    if (d != 1 || k > kMaxDecimalDigits) return {};
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(k));
    mpz_class scaled = num * (pow10 / den);
    bool negative = scaled < 0;
    mpz_class mag = negative ? mpz_class(-scaled) : scaled;
    std::string digits = mag.get_str();
    if (static_cast<int>(digits.size()) <= k) digits.insert(0, k + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return negative ? "-" + out : out;
}

bool is_digits(const std::string& s) {
    if (s.empty()) return false;
    return s.find_first_not_of("0123456789") == std::string::npos;
}

Rational rational_from_decimal(const std::string& token) {
    std::string t = token;
    bool negative = false;
    std::size_t pos = 0;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
        negative = t[pos] == '-';
        ++pos;
    }
    std::string intpart;
    std::string fracpart;
    std::string exppart;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) intpart += t[pos++];
    if (pos < t.size() && t[pos] == '.') {
        ++pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) fracpart += t[pos++];
    }
    long exponent = 0;
    if (pos < t.size() && (t[pos] == 'e' || t[pos] == 'E')) {
        ++pos;
        std::string expdigits;
        if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) expdigits += t[pos++];
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) expdigits += t[pos++];
        if (expdigits.empty() || expdigits == "+" || expdigits == "-")
            throw ValidationError("malformed numeric literal: " + token);
        exponent = std::strtol(expdigits.c_str(), nullptr, 10);
    }
    if (pos != t.size() || (intpart.empty() && fracpart.empty()))
        throw ValidationError("malformed numeric literal: " + token);

    mpz_class mantissa(intpart.empty() ? "0" : intpart);
    for (char c : fracpart) {
        mantissa *= 10;
        mantissa += c - '0';
    }
    long scale = exponent - static_cast<long>(fracpart.size());
    mpz_class num = mantissa;
    mpz_class den = 1;
    if (scale >= 0) {
        mpz_class pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale));
        num *= pow10;
    } else {
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-scale));
    }
    if (negative) num = -num;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

std::string Scalar::str() const {
    if (mode_ == Mode::Float) return double_token(dbl_);
    const mpz_class& num = rat_.get_num();
    const mpz_class& den = rat_.get_den();
    if (den == 1) return num.get_str();
    std::string dec = decimal_expansion(num, den);
    if (!dec.empty()) return dec;
    return num.get_str() + "/" + den.get_str();
}

double tolerance_scale(const Scalar& a, const Scalar& b) {
    return std::max({std::fabs(a.to_double()), std::fabs(b.to_double()), 1.0});
}

bool approx_ge(const Scalar& a, const Scalar& b, double tau) {
    if (a.is_exact()) return a >= b;
    return a.dbl() >= b.dbl() - tau * tolerance_scale(a, b);
}

bool approx_le(const Scalar& a, const Scalar& b, double tau) {
    if (a.is_exact()) return a <= b;
    return a.dbl() <= b.dbl() + tau * tolerance_scale(a, b);
}

bool approx_eq(const Scalar& a, const Scalar& b, double tau) {
    if (a.is_exact()) return a == b;
    return std::fabs(a.dbl() - b.dbl()) <= tau * tolerance_scale(a, b);
}

bool strictly_greater(const Scalar& a, const Scalar& b, double tau) {
    if (a.is_exact()) return a > b;
    return a.dbl() > b.dbl() + tau * tolerance_scale(a, b);
}

Rational rational_from_token(const std::string& token) {
    if (token.empty()) throw ValidationError("empty numeric token");
    std::size_t slash = token.find('/');
    if (slash != std::string::npos) {
        std::string num = token.substr(0, slash);
        std::string den = token.substr(slash + 1);
        std::string nummag = (!num.empty() && (num[0] == '+' || num[0] == '-')) ? num.substr(1) : num;
        if (!is_digits(nummag) || !is_digits(den))
            throw ValidationError("malformed rational literal: " + token);
        mpz_class d(den);
        if (d == 0) throw ValidationError("zero denominator in: " + token);
        Rational r{mpz_class(num), d};
        r.canonicalize();
        return r;
    }
    return rational_from_decimal(token);
}

double rational_to_double(const Rational& r) {
    const double d = r.get_d(); // GMP truncates toward zero: < 1 ulp off
    if (!std::isfinite(d)) return d;
    const Rational rd(d); // exact lift, already canonical
    if (rd == r) return d;
    const double dir = r > rd ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
    const double u = std::nextafter(d, dir);
    if (!std::isfinite(u)) return d;
    const Rational dist_d = abs(Rational(r - rd));
    const Rational dist_u = abs(Rational(Rational(u) - r));
    if (dist_d < dist_u) return d;
    if (dist_u < dist_d) return u;
    // Exact halfway point: keep the candidate whose low mantissa bit is even.
    int exp = 0;
    const double scaled = std::ldexp(std::frexp(d, &exp), 53);
    return std::fmod(scaled, 2.0) == 0.0 ? d : u;
}

Scalar scalar_from_token(const std::string& token, Mode mode) {
    if (mode == Mode::Exact) return Scalar::exact(rational_from_token(token));
    if (token.find('/') != std::string::npos) {
        Rational r = rational_from_token(token);
        return Scalar::floating(rational_to_double(r));
    }
    double v = 0.0;
    const char* first = token.c_str();
    const char* last = first + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ValidationError("malformed numeric literal: " + token);
    return Scalar::floating(v);
}

Scalar harmonic_number(int n, Mode mode) {
    Scalar h = Scalar::zero(mode);
    for (int i = 1; i <= n; ++i) h += Scalar::of(mode, 1, i);
    return h;
}

Scalar scalar_in_mode(const Scalar& s, Mode mode) {
    if (s.mode() == mode) return s;
    if (mode == Mode::Float) return Scalar::floating(rational_to_double(s.rat()));
    return Scalar::exact(Rational(s.dbl())); // doubles are dyadic: exact lift
}

} // namespace anoncontract
