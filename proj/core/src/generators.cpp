#include "anoncontract/generators.hpp"

#include "anoncontract/errors.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <utility>

namespace anoncontract {

namespace {

Rational pow2(int k) { return Rational(mpz_class(1) << k); }
Rational inv_pow2(int k) { return Rational(1) / pow2(k); }

Scalar ex(const Rational& r) { return Scalar::exact(r); }

Instance exact_instance(std::vector<std::pair<Rational, Rational>> rows) {
    std::vector<Agent> agents;
    agents.reserve(rows.size());
    for (auto& [q, c] : rows) agents.push_back(Agent{ex(q), ex(c)});
    return Instance(std::move(agents), Mode::Exact);
}

} // namespace

SpreadInstance gen_spread(const Rational& ratio, int n) {
    if (n < 1) throw ValidationError("spread family needs at least one agent");
    if (ratio < 2) throw ValidationError("spread ratio must be at least 2");
    Rational used = ratio;
    bool clamped = false;
    if (used > pow2(n)) { // wider spreads change nothing once every rung exists
        used = pow2(n);
        clamped = true;
    }
    int ell = 1;
    while (pow2(ell + 1) <= used) ++ell;

    const Rational eps = inv_pow2(2 * ell + 1);
    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= ell && i <= n; ++i) {
        const Rational q = inv_pow2(2 * ell - i + 1);
        rows.emplace_back(q, q - eps);
    }
    for (int i = ell + 1; i <= n; ++i)
        rows.emplace_back(inv_pow2(ell + 2), inv_pow2(ell + 1));

    return SpreadInstance{exact_instance(std::move(rows)), ell, eps, clamped, used};
}

Instance gen_equal_q_harmonic(const Rational& q, const Rational& c, int n) {
    if (n < 1) throw ValidationError("equal-probability family needs at least one agent");
    if (!(0 < c && c < q && q <= 1))
        throw ValidationError("equal-probability family requires 0 < c < q <= 1");
    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const Rational ci = (1 - Rational(1, i)) * q + c / i;
        rows.emplace_back(q, ci);
    }
    return exact_instance(std::move(rows));
}

Instance gen_equal_c_harmonic(const Rational& c, int n) {
    if (n < 1) throw ValidationError("equal-cost family needs at least one agent");
    if (!(0 < c && c <= Rational(1, 2)))
        throw ValidationError("equal-cost family requires 0 < c <= 1/2 "
                              "(the first success probability is 2c)");
    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        rows.emplace_back(c * (1 + Rational(1, i)), c);
    return exact_instance(std::move(rows));
}

Instance gen_tight_costs(const std::vector<Rational>& q, const Rational& Z) {
    if (q.empty()) throw ValidationError("tight-costs family needs at least one probability");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(0 < q[i] && q[i] <= 1))
            throw ValidationError("probabilities must lie in (0, 1]");
        if (i > 0 && q[i] < q[i - 1])
            throw ValidationError("probabilities must be nondecreasing");
    }
    if (!(0 < Z && Z <= q.front()))
        throw ValidationError("target value must satisfy 0 < Z <= smallest probability");
    // c_l = q_l (1 - Z / (q_1 + ... + q_l)) makes every prefix worth exactly Z.
    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(q.size());
    Rational prefix = 0;
    for (const Rational& qi : q) {
        prefix += qi;
        rows.emplace_back(qi, qi * (1 - Z / prefix));
    }
    return exact_instance(std::move(rows));
}

GapExample gen_unbounded_gap(const Rational& eps) {
    if (!(0 < eps && eps < Rational(1, 2)))
        throw ValidationError("gap example requires 0 < eps < 1/2");
    Instance inst = exact_instance({{2 * eps, eps}, {1 - eps, (1 - eps) / 2}});
    std::vector<Payment> w{Payment::finite(ex(Rational(1, 2))), Payment::finite(ex(Rational(0)))};
    return GapExample{std::move(inst), AnonymousContract(std::move(w), Mode::Exact)};
}

InfeasibleExample gen_infeasible(const Rational& eps) {
    if (!(0 < eps && eps <= Rational(2, 3)))
        throw ValidationError("infeasible-set example requires 0 < eps <= 2/3");
    Instance inst = exact_instance({{eps, eps * eps / 2}, {Rational(1, 2), Rational(1, 3)}});
    AgentSet target(2);
    target.add(1);
    return InfeasibleExample{std::move(inst), target};
}

Scalar h_function(const std::vector<Scalar>& v) {
    if (v.empty()) throw ValidationError("partial-sum ratio needs a nonempty vector");
    const Mode mode = v.front().mode();
    Scalar prefix = Scalar::zero(mode);
    Scalar h = Scalar::zero(mode);
    for (const Scalar& x : v) {
        if (x.mode() != mode) throw ValidationError("mixed numeric modes in vector");
        if (x.sign() <= 0) throw ValidationError("partial-sum ratio needs positive entries");
        prefix += x;
        h += x / prefix;
    }
    return h;
}

WorstCaseProfile worst_case_q(double a, double b, int n) {
    if (!(0 < a && a < b && b <= 1))
        throw ValidationError("profile endpoints must satisfy 0 < a < b <= 1");
    if (n < 2) throw ValidationError("profile needs at least two agents");

    const double Q = b / a;
    // g(rho) = rho^(n-1) - rho^(n-2) is 0 at rho = 1 and strictly increasing
    // beyond, so the root of g = Q brackets and bisects cleanly.
    auto g = [n](double rho) {
        return std::pow(rho, n - 1) - std::pow(rho, n - 2);
    };
    double lo = 1.0, hi = 2.0;
    while (g(hi) < Q) hi *= 2.0;
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < Q ? lo : hi) = mid;
    }
    const double rho = 0.5 * (lo + hi);

    WorstCaseProfile out;
    out.rho = rho;
    out.q.reserve(static_cast<std::size_t>(n));
    out.q.push_back(a);
    double f_prev = a; // partial sums a * rho^(i-1)
    for (int i = 2; i <= n; ++i) {
        const double f = f_prev * rho;
        out.q.push_back(f - f_prev);
        f_prev = f;
    }
    if (std::fabs(out.q.back() - b) > 1e-9 * b)
        throw InternalCheckError("profile endpoint drifted from the requested maximum");
    // At the true root the last increment equals b exactly; snap away the
    // bisection residual so the profile stays inside [a, b] (and (0, 1]).
    out.q.back() = b;
    return out;
}

Instance gen_random(std::uint64_t seed, int n, const Rational& qmin, const Rational& qmax) {
    if (n < 1) throw ValidationError("random family needs at least one agent");
    if (!(0 < qmin && qmin <= qmax && qmax <= 1))
        throw ValidationError("random family requires 0 < qmin <= qmax <= 1");
    std::mt19937_64 rng(seed);
    const Rational denom = pow2(32);
    // Explicit return type: gmpxx arithmetic yields lazy expression objects
    // referencing their operands, which must not outlive the temporary here.
    auto draw = [&]() -> Rational {
        return Rational(static_cast<std::uint32_t>(rng() >> 32)) / denom;
    };
    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Rational q = qmin + (qmax - qmin) * draw();
        rows.emplace_back(q, q * draw());
    }
    return exact_instance(std::move(rows));
}

namespace {

const std::string& need(const FamilySpec& spec, const std::string& key) {
    auto it = spec.params.find(key);
    if (it == spec.params.end())
        throw ValidationError("family " + spec.family + " requires parameter " + key);
    return it->second;
}

Rational rat_param(const FamilySpec& spec, const std::string& key) {
    return rational_from_token(need(spec, key));
}

long long int_param(const FamilySpec& spec, const std::string& key) {
    const std::string& tok = need(spec, key);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ValidationError("parameter " + key + " must be an integer, got " + tok);
    return v;
}

std::uint64_t seed_param(const FamilySpec& spec, const std::string& key) {
    const std::string& tok = need(spec, key);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ValidationError("parameter " + key + " must be a nonnegative integer, got " + tok);
    return v;
}

std::vector<Rational> list_param(const FamilySpec& spec, const std::string& key) {
    const std::string& tok = need(spec, key);
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= tok.size()) {
        const std::size_t comma = tok.find(',', pos);
        const std::string piece =
            tok.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(rational_from_token(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void reject_unknown(const FamilySpec& spec, const std::set<std::string>& known) {
    for (const auto& [key, value] : spec.params)
        if (!known.count(key))
            throw ValidationError("unknown parameter " + key + " for family " + spec.family);
}

} // namespace

GeneratedInstance generate(const FamilySpec& spec, Mode mode) {
    auto finish = [&](Instance inst, GeneratedInstance partial = {}) {
        GeneratedInstance out = std::move(partial);
        out.inst = mode == Mode::Exact ? std::move(inst) : instance_in_mode(inst, mode);
        return out;
    };

    if (spec.family == "spread") {
        reject_unknown(spec, {"Q", "n"});
        SpreadInstance s = gen_spread(rat_param(spec, "Q"), static_cast<int>(int_param(spec, "n")));
        GeneratedInstance out;
        out.info["ell"] = std::to_string(s.ell);
        out.info["epsilon"] = ex(s.epsilon).str();
        out.info["clamped"] = s.clamped ? "true" : "false";
        out.info["ratio"] = ex(s.ratio_used).str();
        return finish(std::move(s.inst), std::move(out));
    }
    if (spec.family == "equal_q_harmonic") {
        reject_unknown(spec, {"q", "c", "n"});
        return finish(gen_equal_q_harmonic(rat_param(spec, "q"), rat_param(spec, "c"),
                                           static_cast<int>(int_param(spec, "n"))));
    }
    if (spec.family == "equal_c_harmonic") {
        reject_unknown(spec, {"c", "n"});
        return finish(gen_equal_c_harmonic(rat_param(spec, "c"),
                                           static_cast<int>(int_param(spec, "n"))));
    }
    if (spec.family == "tight_costs") {
        reject_unknown(spec, {"q", "Z"});
        return finish(gen_tight_costs(list_param(spec, "q"), rat_param(spec, "Z")));
    }
    if (spec.family == "unbounded_gap") {
        reject_unknown(spec, {"eps"});
        GapExample g = gen_unbounded_gap(rat_param(spec, "eps"));
        GeneratedInstance out;
        out.contract = mode == Mode::Exact ? g.w : g.w.in_mode(mode);
        return finish(std::move(g.inst), std::move(out));
    }
    if (spec.family == "infeasible_set") {
        reject_unknown(spec, {"eps"});
        InfeasibleExample g = gen_infeasible(rat_param(spec, "eps"));
        GeneratedInstance out;
        out.target = g.target;
        return finish(std::move(g.inst), std::move(out));
    }
    if (spec.family == "random") {
        reject_unknown(spec, {"seed", "n", "qmin", "qmax"});
        return finish(gen_random(seed_param(spec, "seed"), static_cast<int>(int_param(spec, "n")),
                                 rat_param(spec, "qmin"), rat_param(spec, "qmax")));
    }
    throw ValidationError("unknown instance family: " + spec.family);
}

} // namespace anoncontract
