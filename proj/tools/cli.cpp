#include "anoncontract/analysis.hpp"
#include "anoncontract/equilibrium.hpp"
#include "anoncontract/errors.hpp"
#include "anoncontract/generators.hpp"
#include "anoncontract/json_io.hpp"
#include "anoncontract/ll_optimal.hpp"
#include "anoncontract/noll.hpp"
#include "anoncontract/uniform.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace anoncontract;

// ---- shared option state -------------------------------------------------

struct Options {
    std::string in_path;
    std::string out_path;
    std::string contract_path;
    std::string mode_name = "exact";
    std::string family;
    std::vector<std::string> params;
    std::string set_token;
    std::string policy_name = "lowest";
    std::string table_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> delta_token;
    std::optional<std::string> alpha_token;

    Mode mode() const { return mode_name == "float" ? Mode::Float : Mode::Exact; }
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty())
        std::cout << text;
    else
        write_text_file(opt.out_path, text);
}

// "1+3+4" -> agents {1,3,4} (1-based); "none" or "" -> empty set.
AgentSet parse_set(const std::string& token, int n) {
    AgentSet s(n);
    if (token.empty() || token == "none") return s;
    std::size_t pos = 0;
    while (pos <= token.size()) {
        const std::size_t plus = token.find('+', pos);
        const std::string piece =
            token.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ValidationError("malformed agent id in set: " + piece);
        }
        if (id < 1 || id > n)
            throw ValidationError("agent id " + std::to_string(id) + " out of range 1.." +
                                  std::to_string(n));
        s.add(id - 1);
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return s;
}

std::string set_to_json(const AgentSet& s) {
    std::string out = "[";
    bool first = true;
    for (int i : s.members()) {
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "]";
}

std::string set_to_cell(const AgentSet& s) {
    if (s.empty()) return "none";
    std::string out;
    for (int i : s.members()) {
        if (!out.empty()) out += "+";
        out += std::to_string(i + 1);
    }
    return out;
}

std::string payment_token(const Payment& p) {
    return p.blocked ? "\"blocked\"" : json_value_token(p.value);
}

std::string scalars_to_json(const std::vector<Scalar>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += json_value_token(v[i]);
    }
    return out + "]";
}

FamilySpec family_spec(const Options& opt) {
    if (opt.family.empty())
        throw ValidationError("--family is required");
    FamilySpec spec;
    spec.family = opt.family;
    for (const std::string& kv : opt.params) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("parameters take the form key=value, got: " + kv);
        const std::string key = kv.substr(0, eq);
        if (spec.params.count(key))
            throw ValidationError("duplicate parameter: " + key);
        spec.params[key] = kv.substr(eq + 1);
    }
    if (opt.seed && !spec.params.count("seed"))
        spec.params["seed"] = std::to_string(*opt.seed);
    return spec;
}

// ---- subcommands -----------------------------------------------------------

void run_gen_instance(const Options& opt) {
    const GeneratedInstance gen = generate(family_spec(opt), opt.mode());
    if (!opt.contract_path.empty()) {
        if (!gen.contract)
            throw ValidationError("family " + opt.family + " does not produce a contract");
        write_text_file(opt.contract_path, contract_to_json(*gen.contract));
    }
    emit(opt, instance_to_json(gen.inst));
}

void run_solve_uniform(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    const UniformSolution sol = solve_uniform(inst);
    std::ostringstream out;
    out << "{\"k\":" << sol.k << ",\"w\":" << json_value_token(sol.w)
        << ",\"utility\":" << json_value_token(sol.utility)
        << ",\"prefix\":" << set_to_json(sol.prefix)
        << ",\"candidates\":" << scalars_to_json(sol.candidates) << "}\n";
    emit(opt, out.str());
}

void run_solve_ll(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    if (!opt.set_token.empty()) {
        const AgentSet S = parse_set(opt.set_token, inst.n());
        const SetLPOutcome res = optimal_ll_for_set(inst, S);
        std::ostringstream out;
        out << "{\"set\":" << set_to_json(S) << ",\"feasible\":" << (res.feasible ? "true" : "false");
        if (res.feasible)
            out << ",\"w\":" << scalars_to_json(res.w)
                << ",\"payment\":" << json_value_token(res.payment)
                << ",\"utility\":" << json_value_token(res.utility);
        out << "}\n";
        emit(opt, out.str());
        return;
    }
    const LLSolution sol = optimal_ll_anonymous(inst);
    if (!opt.table_path.empty()) {
        std::ostringstream csv;
        csv << "set,status,utility\n";
        for (const LLTableRow& row : sol.table) {
            csv << set_to_cell(row.set) << ',';
            switch (row.status) {
            case SetStatus::Optimal: csv << "optimal," << row.utility.str(); break;
            case SetStatus::Infeasible: csv << "infeasible,na"; break;
            case SetStatus::Skipped: csv << "skipped,na"; break;
            }
            csv << '\n';
        }
        write_text_file(opt.table_path, csv.str());
    }
    std::ostringstream out;
    out << "{\"set\":" << set_to_json(sol.set) << ",\"w\":" << scalars_to_json(sol.w)
        << ",\"utility\":" << json_value_token(sol.utility) << "}\n";
    emit(opt, out.str());
}

void run_solve_noll(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    const KStarContract sol = log_contract(inst);
    std::ostringstream out;
    out << "{\"k_star\":" << sol.k_star << ",\"order\":[";
    for (std::size_t i = 0; i < sol.surplus_order.size(); ++i) {
        if (i) out << ",";
        out << sol.surplus_order[i] + 1;
    }
    out << "],\"w\":[";
    for (int j = 1; j <= sol.w.n(); ++j) {
        if (j > 1) out << ",";
        out << payment_token(sol.w.at(j));
    }
    out << "],\"equilibrium\":" << set_to_json(sol.equilibrium)
        << ",\"utility\":" << json_value_token(sol.utility)
        << ",\"welfare_cap\":" << json_value_token(sol.harmonic_bound) << "}\n";
    emit(opt, out.str());
}

void run_full_extract(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    const FullExtractionContract sol = full_extraction(inst);
    std::ostringstream out;
    out << "{\"set\":" << set_to_json(sol.set) << ",\"w\":[";
    for (int j = 1; j <= sol.w.n(); ++j) {
        if (j > 1) out << ",";
        out << payment_token(sol.w.at(j));
    }
    out << "],\"utility\":" << json_value_token(sol.utility) << ",\"conditioning_warning\":"
        << (sol.conditioning_warning ? "true" : "false") << "}\n";
    emit(opt, out.str());
}

void run_enumerate_pne(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    if (opt.contract_path.empty())
        throw ValidationError("--contract is required");
    const AnonymousContract w = load_contract(opt.contract_path, opt.mode());
    const std::vector<PneEntry> pne = enumerate_pne(inst, w);
    std::ostringstream out;
    out << "{\"equilibria\":[";
    for (std::size_t i = 0; i < pne.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n");
        out << "{\"set\":" << set_to_json(pne[i].set) << ",\"utility\":"
            << (pne[i].principal.undefined ? std::string("\"undefined\"")
                                           : json_value_token(pne[i].principal.value))
            << "}";
    }
    out << "\n]}\n";
    emit(opt, out.str());
}

void run_dynamics(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    if (opt.contract_path.empty())
        throw ValidationError("--contract is required");
    const AnonymousContract w = load_contract(opt.contract_path, opt.mode());
    const AgentSet start = parse_set(opt.set_token, inst.n());
    UpdatePolicy policy = UpdatePolicy::LowestIndexFirst;
    std::uint64_t seed = 0;
    if (opt.policy_name == "random") {
        if (!opt.seed)
            throw ValidationError("--seed is required with the random update policy");
        policy = UpdatePolicy::SeededRandom;
        seed = *opt.seed;
    }
    const DynamicsResult res = best_response_dynamics(inst, w, start, policy, seed);
    std::ostringstream out;
    out << "{\"final\":" << set_to_json(res.final_set) << ",\"steps\":" << res.steps
        << ",\"path\":[";
    for (std::size_t i = 0; i < res.path.size(); ++i) {
        if (i) out << ",";
        out << set_to_json(res.path[i]);
    }
    out << "]}\n";
    emit(opt, out.str());
}

void run_gap_report(const Options& opt) {
    const Instance inst = load_instance(opt.in_path, opt.mode());
    const Mode mode = opt.mode();
    const Scalar delta = opt.delta_token ? scalar_from_token(*opt.delta_token, mode)
                                         : Scalar::of(mode, 1, 2);
    const Scalar alpha = opt.alpha_token ? scalar_from_token(*opt.alpha_token, mode)
                                         : Scalar::of(mode, 1, 2);
    const GapReport rep = gap_report(inst, delta, alpha);
    std::ostringstream out;
    out << "{\"n\":" << rep.n << ",\"delta\":" << json_value_token(delta)
        << ",\"alpha\":" << json_value_token(alpha)
        << ",\"sw\":" << json_value_token(rep.sw) << ",\"ua\":" << json_value_token(rep.ua)
        << ",\"q_ratio\":" << (rep.q_ratio_available ? json_value_token(rep.q_ratio) : "\"na\"")
        << ",\"opt_ll\":" << (rep.opt_ll_available ? json_value_token(rep.opt_ll) : "\"skipped\"")
        << ",\"noll_log\":" << json_value_token(rep.noll_log) << ",\"noll_full\":"
        << (rep.noll_full_available ? json_value_token(rep.noll_full) : "\"na\"");
    if (!rep.noll_full_available)
        out << ",\"noll_full_reason\":\"" << rep.noll_full_reason << "\"";
    auto ratio = [](const Scalar& num, const Scalar& den, bool available) {
        if (!available || den.sign() == 0) return std::string("\"na\"");
        return json_value_token(num / den);
    };
    out << ",\"sw_over_ua\":" << ratio(rep.sw, rep.ua, true)
        << ",\"sw_over_opt_ll\":" << ratio(rep.sw, rep.opt_ll, rep.opt_ll_available)
        << ",\"sw_over_noll_log\":" << ratio(rep.sw, rep.noll_log, true) << ",\"flags\":{";
    for (std::size_t i = 0; i < rep.flags.size(); ++i) {
        const BoundFlag& f = rep.flags[i];
        if (i) out << ",";
        out << "\"" << f.name << "\":\"" << (f.applicable ? (f.ok ? "ok" : "fail") : "na") << "\"";
    }
    out << "}}\n";
    emit(opt, out.str());
}

void run_sweep(const Options& opt) {
    if (opt.family.empty())
        throw ValidationError("--family is required");
    SweepSpec spec;
    spec.family = opt.family;
    spec.mode = opt.mode();
    for (const std::string& kv : opt.params) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("parameters take the form key=v1;v2;..., got: " + kv);
        std::vector<std::string> values;
        const std::string raw = kv.substr(eq + 1);
        std::size_t pos = 0;
        while (pos <= raw.size()) {
            const std::size_t semi = raw.find(';', pos);
            values.push_back(
                raw.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        spec.axes.emplace_back(kv.substr(0, eq), std::move(values));
    }
    if (opt.seed) {
        bool have = false;
        for (const auto& [key, values] : spec.axes) have = have || key == "seed";
        if (!have) spec.axes.emplace_back("seed", std::vector<std::string>{std::to_string(*opt.seed)});
    }
    emit(opt, sweep(spec));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solvers for multi-agent contract design with anonymous, "
                 "success-count-indexed payments: equilibrium analysis, optimal "
                 "uniform and limited-liability contracts, threshold and "
                 "full-extraction constructions, instance generators, and gap reports."};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool needs_in) {
        cmd->add_option("--mode", opt.mode_name, "Numeric mode")
            ->check(CLI::IsMember({"exact", "float"}))
            ->capture_default_str();
        cmd->add_option("--out", opt.out_path, "Write the result here instead of stdout");
        if (needs_in)
            cmd->add_option("--in", opt.in_path, "Instance JSON file")->required();
    };

    CLI::App* gen = app.add_subcommand("gen-instance", "Construct a named instance family");
    add_common(gen, false);
    gen->add_option("--family", opt.family, "Family name")->required();
    gen->add_option("--params", opt.params, "Family parameters, key=value");
    gen->add_option("--seed", opt.seed, "Seed for the random family");
    gen->add_option("--contract", opt.contract_path,
                    "Where to write the companion contract (unbounded_gap)");

    CLI::App* su = app.add_subcommand("solve-uniform", "Best single-payment contract");
    add_common(su, true);

    CLI::App* sll = app.add_subcommand("solve-ll", "Best nonnegative anonymous contract");
    add_common(sll, true);
    sll->add_option("--set", opt.set_token, "Solve for this exact set only, e.g. 1+3");
    sll->add_option("--table", opt.table_path, "Write the per-set status table (CSV) here");

    CLI::App* snl = app.add_subcommand("solve-noll", "Threshold contract with blocked tail");
    add_common(snl, true);

    CLI::App* fx = app.add_subcommand("full-extract", "Contract extracting the full surplus");
    add_common(fx, true);

    CLI::App* ep = app.add_subcommand("enumerate-pne", "All pure Nash equilibria of a contract");
    add_common(ep, true);
    ep->add_option("--contract", opt.contract_path, "Contract JSON file")->required();

    CLI::App* dyn = app.add_subcommand("dynamics", "Iterated better-response from a start set");
    add_common(dyn, true);
    dyn->add_option("--contract", opt.contract_path, "Contract JSON file")->required();
    dyn->add_option("--set", opt.set_token, "Start set, e.g. 1+2 (default empty)");
    dyn->add_option("--policy", opt.policy_name, "Which improving agent moves")
        ->check(CLI::IsMember({"lowest", "random"}))
        ->capture_default_str();
    dyn->add_option("--seed", opt.seed, "Seed for the random policy");

    CLI::App* gr = app.add_subcommand("gap-report", "Contract-class values and bound checks");
    add_common(gr, true);
    gr->add_option("--delta", opt.delta_token, "Welfare-concentration margin (default 1/2)");
    gr->add_option("--alpha", opt.alpha_token, "Density cap (default 1/2)");

    CLI::App* sw = app.add_subcommand("sweep", "Gap reports over a parameter grid (CSV)");
    add_common(sw, false);
    sw->add_option("--family", opt.family, "Family name")->required();
    sw->add_option("--params", opt.params, "Grid axes, key=v1;v2;...");
    sw->add_option("--seed", opt.seed, "Seed axis shorthand for the random family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) run_gen_instance(opt);
        else if (su->parsed()) run_solve_uniform(opt);
        else if (sll->parsed()) run_solve_ll(opt);
        else if (snl->parsed()) run_solve_noll(opt);
        else if (fx->parsed()) run_full_extract(opt);
        else if (ep->parsed()) run_enumerate_pne(opt);
        else if (dyn->parsed()) run_dynamics(opt);
        else if (gr->parsed()) run_gap_report(opt);
        else if (sw->parsed()) run_sweep(opt);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 2;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
