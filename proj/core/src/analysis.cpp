#include "anoncontract/analysis.hpp"

#include "anoncontract/errors.hpp"
#include "anoncontract/generators.hpp"
#include "anoncontract/ll_optimal.hpp"
#include "anoncontract/noll.hpp"
#include "anoncontract/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace anoncontract {

namespace {

// Mode-faithful weak comparison: exact in exact mode, tolerant in float.
bool weak_le(const Scalar& a, const Scalar& b) {
    return a.is_exact() ? a <= b : approx_le(a, b);
}

bool weak_eq(const Scalar& a, const Scalar& b) {
    return a.is_exact() ? a == b : approx_eq(a, b);
}

// lhs <= factor * rhs with a relative double slack; used for bounds whose
// factor involves a logarithm and has no exact representation.
bool le_with_log_factor(const Scalar& lhs, double factor, const Scalar& rhs) {
    const double l = lhs.to_double();
    const double r = factor * rhs.to_double();
    return l <= r + 1e-9 * std::max({std::fabs(l), std::fabs(r), 1.0});
}

} // namespace

GapReport gap_report(const Instance& inst) {
    const Mode mode = inst.mode();
    return gap_report(inst, Scalar::of(mode, 1, 2), Scalar::of(mode, 1, 2));
}

GapReport gap_report(const Instance& inst, const Scalar& delta, const Scalar& alpha) {
    const int n = inst.n();
    const Mode mode = inst.mode();
    if (delta.mode() != mode || alpha.mode() != mode)
        throw ValidationError("delta/alpha numeric mode does not match the instance");

    GapReport rep;
    rep.n = n;
    rep.sw = social_welfare(inst).value;
    rep.ua = solve_uniform(inst).utility;

    if (n >= 1) {
        Scalar qmin = inst.agent(0).q, qmax = inst.agent(0).q;
        for (int i = 1; i < n; ++i) {
            qmin = std::min(qmin, inst.agent(i).q);
            qmax = std::max(qmax, inst.agent(i).q);
        }
        if (qmin.sign() > 0) {
            rep.q_ratio_available = true;
            rep.q_ratio = qmax / qmin;
        }
    }

    if (n <= 12) {
        rep.opt_ll_available = true;
        rep.opt_ll = optimal_ll_anonymous(inst).utility;
    }

    const KStarContract ks = log_contract(inst);
    rep.noll_log = ks.utility;

    if (rep.sw.sign() == 0) {
        rep.noll_full_reason = "no profitable agents";
    } else {
        try {
            rep.noll_full = full_extraction(inst).utility;
            rep.noll_full_available = true;
        } catch (const ValidationError& e) {
            rep.noll_full_reason = e.what();
        }
    }

    // --- bound flags, fixed order ---
    const Scalar one = Scalar::one(mode);

    { // order: uniform <= best LL anonymous <= welfare
        BoundFlag f{"order", rep.opt_ll_available, false};
        if (f.applicable)
            f.ok = weak_le(rep.ua, rep.opt_ll) && weak_le(rep.opt_ll, rep.sw);
        rep.flags.push_back(f);
    }
    { // qspread: sw <= min{n, 1 + ln(n * maxq/minq)} * ua
        BoundFlag f{"qspread", n >= 1 && rep.q_ratio_available, false};
        if (f.applicable) {
            const bool linear = weak_le(rep.sw, Scalar::of(mode, n) * rep.ua);
            const double factor = 1.0 + std::log(rep.q_ratio.to_double() * n);
            f.ok = linear && le_with_log_factor(rep.sw, factor, rep.ua);
        }
        rep.flags.push_back(f);
    }
    { // cspread: same shape with the cost ratio; needs all costs positive
        Scalar cmin, cmax;
        bool have = n >= 1;
        if (have) {
            cmin = inst.agent(0).c;
            cmax = inst.agent(0).c;
            for (int i = 1; i < n; ++i) {
                cmin = std::min(cmin, inst.agent(i).c);
                cmax = std::max(cmax, inst.agent(i).c);
            }
            have = cmin.sign() > 0;
        }
        BoundFlag f{"cspread", have, false};
        if (f.applicable) {
            const bool linear = weak_le(rep.sw, Scalar::of(mode, n) * rep.ua);
            const double factor = 1.0 + std::log((cmax / cmin).to_double() * n);
            f.ok = linear && le_with_log_factor(rep.sw, factor, rep.ua);
        }
        rep.flags.push_back(f);
    }
    { // lowdens: when agents of density < 1 - 1/n carry more than (1+delta)/2
      // of the welfare, the uniform gap is logarithmic: sw <= 2(1+ln n^3) ua.
        BoundFlag f{"lowdens", false, false};
        if (n >= 1) {
            Scalar heavy = Scalar::zero(mode);
            for (int i = 0; i < n; ++i) {
                const Agent& a = inst.agent(i);
                // density < 1 - 1/n, cross-multiplied to stay exact
                if (a.q.sign() > 0 &&
                    Scalar::of(mode, n) * a.c < Scalar::of(mode, n - 1) * a.q)
                    heavy += a.q - a.c;
            }
            f.applicable = Scalar::of(mode, 2) * heavy > (one + delta) * rep.sw;
            if (f.applicable) {
                const double factor = 2.0 * (1.0 + 3.0 * std::log(static_cast<double>(n)));
                f.ok = le_with_log_factor(rep.sw, factor, rep.ua);
            }
        }
        rep.flags.push_back(f);
    }
    { // denscap: all densities <= alpha forces ua >= (1-alpha) sw
        bool premise = n >= 1;
        for (int i = 0; premise && i < n; ++i) {
            const Agent& a = inst.agent(i);
            premise = a.q.sign() > 0 && weak_le(a.c, alpha * a.q);
        }
        BoundFlag f{"denscap", premise, false};
        if (f.applicable) f.ok = weak_le((one - alpha) * rep.sw, rep.ua);
        rep.flags.push_back(f);
    }
    { // harmonic: welfare within H_n of the threshold-contract utility
        BoundFlag f{"harmonic", true, false};
        f.ok = weak_le(rep.sw, harmonic_number(n, mode) * rep.noll_log);
        rep.flags.push_back(f);
    }
    { // extract: the full-extraction contract recovers exactly the welfare
        BoundFlag f{"extract", rep.noll_full_available, false};
        if (f.applicable) f.ok = weak_eq(rep.noll_full, rep.sw);
        rep.flags.push_back(f);
    }
    return rep;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string ratio_cell(const Scalar& num, const Scalar& den, bool den_available = true) {
    if (!den_available || den.sign() == 0) return "na";
    return (num / den).str();
}

std::string flags_cell(const GapReport& rep) {
    std::string out;
    for (const BoundFlag& f : rep.flags) {
        if (!out.empty()) out += ' ';
        out += f.name;
        out += '=';
        out += f.applicable ? (f.ok ? "ok" : "fail") : "na";
    }
    return out;
}

} // namespace

std::string sweep(const SweepSpec& spec) {
    std::ostringstream csv;
    csv << "family,params,n,Q,sw,ua,opt_ll,noll_log,noll_full,"
           "sw_over_ua,sw_over_opt_ll,sw_over_noll_log,flags,status\n";

    // Canonical axis order: sorted by parameter name, duplicates rejected.
    std::vector<std::pair<std::string, std::vector<std::string>>> axes = spec.axes;
    std::sort(axes.begin(), axes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < axes.size(); ++i)
        if (axes[i].first == axes[i - 1].first)
            throw ValidationError("duplicate sweep parameter: " + axes[i].first);
    if (axes.empty()) return csv.str();
    for (const auto& [key, values] : axes)
        if (values.empty()) return csv.str(); // empty axis: empty grid

    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
        FamilySpec fam;
        fam.family = spec.family;
        std::string params;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const std::string& key = axes[a].first;
            const std::string& val = axes[a].second[idx[a]];
            fam.params[key] = val;
            if (!params.empty()) params += ' ';
            params += key + "=" + val;
        }

        csv << csv_escape(spec.family) << ',' << csv_escape(params) << ',';
        try {
            const GeneratedInstance gen = generate(fam, spec.mode);
            const GapReport rep = gap_report(gen.inst);
            csv << rep.n << ','
                << (rep.q_ratio_available ? rep.q_ratio.str() : "na") << ','
                << rep.sw.str() << ',' << rep.ua.str() << ','
                << (rep.opt_ll_available ? rep.opt_ll.str() : "skipped") << ','
                << rep.noll_log.str() << ','
                << (rep.noll_full_available ? rep.noll_full.str() : "na") << ','
                << ratio_cell(rep.sw, rep.ua) << ','
                << (rep.opt_ll_available ? ratio_cell(rep.sw, rep.opt_ll) : "na") << ','
                << ratio_cell(rep.sw, rep.noll_log) << ','
                << csv_escape(flags_cell(rep)) << ",ok\n";
        } catch (const ValidationError& e) {
            csv << "na,na,na,na,na,na,na,na,na,na,," << csv_escape(std::string("invalid: ") + e.what())
                << "\n";
        } catch (const GuardError& e) {
            csv << "na,na,na,na,na,na,na,na,na,na,," << csv_escape(std::string("guard: ") + e.what())
                << "\n";
        }

        // Odometer: last axis varies fastest.
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].second.size()) break;
            idx[a] = 0;
            if (a == 0) return csv.str();
        }
    }
}

} // namespace anoncontract
