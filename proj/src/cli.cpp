#include "dephcorr/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dephcorr/analytic.hpp"
#include "dephcorr/errors.hpp"
#include "dephcorr/experiments.hpp"
#include "dephcorr/records_io.hpp"

namespace dephcorr {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string scenario;
    std::string k_spec;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::string config_path;
    std::string quantity = "both";
    int samples = 101;
};

int to_int(const std::string& s)
{
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ParameterError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw ParameterError("not an integer: '" + s + "'");
    return v;
}

fs::path resolve_out_dir(const std::string& flag)
{
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return ".";
}

ScenarioConfig configured_scenario(const CommonArgs& a)
{
    ScenarioConfig cfg = find_scenario(a.scenario);
    bool rates_changed = false;
    bool t_end_given = false;
    for (const auto& kv : a.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParameterError("override must be key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string text = kv.substr(eq + 1);
        double value = 0.0;
        std::size_t pos = 0;
        try {
            value = std::stod(text, &pos);
        } catch (const std::exception&) {
            throw ParameterError("override " + key + ": not a number '" + text + "'");
        }
        if (pos != text.size()) throw ParameterError("override " + key + ": not a number '" + text + "'");
        apply_override(cfg, key, value);
        if (key == "gamma" || key == "Gamma1" || key == "Gamma2") rates_changed = true;
        if (key == "t_end" || key == "max_step") t_end_given = true;
    }
    if (rates_changed && !t_end_given) {
        const TimeGrid g = default_grid(cfg.inter, cfg.bath);
        cfg.grid.t_end = g.t_end;
        cfg.grid.max_step = g.max_step;
    }
    cfg.validate();
    return cfg;
}

std::vector<int> ks_for(const CommonArgs& a, const ScenarioConfig& cfg)
{
    return a.k_spec.empty() ? cfg.k_list : parse_k_spec(a.k_spec);
}

std::string run_stem(const ScenarioConfig& cfg, int k)
{
    return cfg.name + "_k" + std::to_string(k);
}

int cmd_list(std::ostream& out)
{
    for (const auto& cfg : builtin_scenarios()) {
        out << cfg.name << "\tgamma=" << cfg.inter.gamma;
        if (cfg.bath) {
            out << "\t" << (cfg.bath->kind == BathKind::Gaussian ? "Gaussian" : "Poissonian")
                << " Gamma1=" << cfg.bath->gamma1 << " Gamma2=" << cfg.bath->gamma2;
        } else {
            out << "\tisolated";
        }
        out << "\tk=";
        for (std::size_t i = 0; i < cfg.k_list.size(); ++i) out << (i ? "," : "") << cfg.k_list[i];
        out << "\n";
    }
    return kExitOk;
}

int cmd_run(const CommonArgs& a, std::ostream& out)
{
    ScenarioConfig cfg;
    std::optional<int> k;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw ParameterError("cannot open config " + a.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError("config " + a.config_path + ": " + e.what());
        }
        cfg = config_from_json(j);
        if (j.contains("k")) k = j.at("k").get<int>();
    } else {
        if (a.scenario.empty()) throw ParameterError("run: --scenario or --config is required");
        cfg = configured_scenario(a);
    }
    if (!a.k_spec.empty()) k = to_int(a.k_spec);
    if (!k) throw ParameterError("run: --k is required");

    const auto records = run_scenario(cfg, *k);
    const fs::path csv = resolve_out_dir(a.out_dir) / (run_stem(cfg, *k) + ".csv");
    write_run(records, cfg, *k, csv);
    out << csv.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonArgs& a, std::ostream& out)
{
    const ScenarioConfig cfg = configured_scenario(a);
    const auto ks = ks_for(a, cfg);
    const auto sweep = run_sweep(cfg, ks);
    const fs::path dir = resolve_out_dir(a.out_dir);

    std::ostringstream summary;
    summary << "k,t_negativity_max,negativity_max,t_hs_participation_max,hs_participation_max\n";
    summary.precision(12);
    for (const auto& [k, recs] : sweep) {
        write_run(recs, cfg, k, dir / (run_stem(cfg, k) + ".csv"));
        std::vector<double> t, neg, hs;
        for (const auto& r : recs) {
            t.push_back(r.t);
            neg.push_back(r.negativity);
            hs.push_back(r.hs_participation);
        }
        const FirstMaximum fn = first_maximum(t, neg);
        const FirstMaximum fh = first_maximum(t, hs);
        summary << k << "," << fn.t << "," << fn.value << "," << fh.t << "," << fh.value << "\n";
    }
    const fs::path summary_path = dir / (cfg.name + "_summary.csv");
    write_text_atomic(summary_path, summary.str());
    out << summary_path.string() << "\n";
    return kExitOk;
}

int cmd_scaling(const CommonArgs& a, std::ostream& out)
{
    const ScenarioConfig cfg = configured_scenario(a);
    const auto ks = ks_for(a, cfg);
    std::vector<Quantity> qs;
    if (a.quantity == "both") qs = {Quantity::Negativity, Quantity::HsParticipation};
    else qs = {quantity_from_name(a.quantity)};

    const auto sweep = run_sweep(cfg, ks);
    nlohmann::json fits = nlohmann::json::array();
    for (Quantity q : qs) {
        const ScalingFit fit = scaling_from_sweep(sweep, q);
        fits.push_back(fit_to_json(cfg, fit));
        out << cfg.name << " " << quantity_name(q) << " exponent=" << fit.exponent << " +- "
            << fit.exponent_stderr << "\n";
    }
    const fs::path path = resolve_out_dir(a.out_dir) / (cfg.name + "_scaling.json");
    write_text_atomic(path, fits.dump(2) + "\n");
    out << path.string() << "\n";
    return kExitOk;
}

int cmd_analytic(const CommonArgs& a, std::ostream& out)
{
    const ScenarioConfig cfg = configured_scenario(a);
    const auto ks = ks_for(a, cfg);
    const fs::path dir = resolve_out_dir(a.out_dir);
    const auto times = cfg.grid.times();

    for (int k : ks) {
        fs::path path;
        if (cfg.initial == InitialKind::MaxCorrelated) {
            std::vector<CorrelationRecord> recs;
            for (double t : times) recs.push_back(measure(t, bath_driven_state(t, k, cfg.osc, *cfg.bath), cfg.osc, cfg.eps));
            path = dir / (run_stem(cfg, k) + "_analytic.csv");
            write_records(recs, path);
        } else if (cfg.name == "B1" && cfg.osc.omega1 == cfg.osc.omega2) {
            const Ladder lad = build_ladder(k, cfg.inter);
            std::vector<CorrelationRecord> recs;
            for (double t : times) {
                const auto c = isolated_linear_state(t, k, cfg.osc.omega1, cfg.inter.gamma);
                Eigen::VectorXcd v(lad.size());
                for (Index i = 0; i < lad.size(); ++i) v(i) = c[static_cast<std::size_t>(lad.m_values[i])];
                recs.push_back(measure(t, LadderState{lad, v * v.adjoint()}, cfg.osc, cfg.eps));
            }
            path = dir / (run_stem(cfg, k) + "_analytic.csv");
            write_records(recs, path);
        } else {
            if (!cfg.bath || cfg.bath->kind != BathKind::Gaussian || !(cfg.gaussian_strength() > 0.0)) {
                throw UnsupportedScenario("analytic: no closed form for scenario " + cfg.name +
                                          " (bath-only, B1 and Gaussian-bath width profiles are available)");
            }
            const WidthProfile wp = width_boundary(k, cfg.inter.gamma / cfg.gaussian_strength(), cfg.inter);
            std::ostringstream csv;
            csv.precision(12);
            csv << "m,width\n";
            for (std::size_t i = 0; i < wp.m_values.size(); ++i) csv << wp.m_values[i] << "," << wp.widths[i] << "\n";
            path = dir / (run_stem(cfg, k) + "_width.csv");
            write_text_atomic(path, csv.str());
        }
        out << path.string() << "\n";
    }
    return kExitOk;
}

int cmd_oracle(const CommonArgs& a, std::ostream& out, std::ostream& err)
{
    const ScenarioConfig cfg = configured_scenario(a);
    const auto ks = ks_for(a, cfg);
    int code = kExitOk;
    for (int k : ks) {
        if (k > 8) throw ParameterError("oracle-check: k must be <= 8 (dense full-space reference)");
        const OracleReport rep = oracle_check(cfg, k, a.samples);
        out << cfg.name << " k=" << k << " t_end=" << rep.t_end << " max_deviation=" << rep.max_deviation
            << " max_leakage=" << rep.max_leakage << " max_charge_drift=" << rep.max_charge_drift << "\n";
        if (!(rep.max_deviation < 1e-8) || !(rep.max_leakage < 1e-9)) {
            err << "oracle-check: ladder and full evolution disagree for k=" << k << "\n";
            code = kExitNumeric;
        }
    }
    return code;
}

}  // namespace

std::vector<int> parse_k_spec(const std::string& spec)
{
    std::vector<int> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() < 2 || parts.size() > 3) throw ParameterError("k range must be lo:hi[:step]");
        const int lo = to_int(parts[0]);
        const int hi = to_int(parts[1]);
        const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
        if (step <= 0 || hi < lo) throw ParameterError("k range must have lo <= hi and step > 0");
        for (int k = lo; k <= hi; k += step) out.push_back(k);
    } else {
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ',');) out.push_back(to_int(p));
    }
    if (out.empty()) throw ParameterError("empty k specification");
    for (int k : out) {
        if (k < 1) throw ParameterError("k values must be >= 1");
    }
    return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coupled oscillators under local pure dephasing: trajectories, correlations, scaling"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dephcorr 0.1.0");

    CommonArgs a;
    auto add_scenario = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--scenario", a.scenario, "Scenario name (see `list`)");
        if (required) opt->required();
        sub->add_option("--k", a.k_spec, "k value, list (4,6,8) or range (lo:hi[:step])");
        sub->add_option("--out-dir", a.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
        sub->add_option("--set", a.overrides,
                        "Override key=value: gamma, Gamma1, Gamma2, phi, omega1, omega2, t_end, samples, max_step, eps");
    };

    auto* list = app.add_subcommand("list", "List built-in scenarios");
    auto* run = app.add_subcommand("run", "Integrate one trajectory and write its CSV + JSON sidecar");
    add_scenario(run, false);
    run->add_option("--config", a.config_path, "Re-run from a JSON sidecar");
    auto* sweep = app.add_subcommand("sweep", "Run every k and write per-k CSVs plus a first-maximum summary");
    add_scenario(sweep, true);
    auto* scaling = app.add_subcommand("scaling", "Fit power laws to first-maximum amplitudes over k");
    add_scenario(scaling, true);
    scaling->add_option("--quantity", a.quantity, "negativity, hs_participation or both")
        ->check(CLI::IsMember({"negativity", "hs_participation", "both"}));
    auto* analytic = app.add_subcommand("analytic", "Write closed-form curves or width profiles");
    add_scenario(analytic, true);
    auto* oracle = app.add_subcommand("oracle-check", "Compare ladder evolution against the full truncated model");
    add_scenario(oracle, true);
    oracle->add_option("--samples", a.samples, "Number of comparison times")->check(CLI::Range(2, 100000));

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (list->parsed()) return cmd_list(out);
        if (run->parsed()) return cmd_run(a, out);
        if (sweep->parsed()) return cmd_sweep(a, out);
        if (scaling->parsed()) return cmd_scaling(a, out);
        if (analytic->parsed()) return cmd_analytic(a, out);
        if (oracle->parsed()) return cmd_oracle(a, out, err);
    } catch (const TimedError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}

int dispatch(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace dephcorr
