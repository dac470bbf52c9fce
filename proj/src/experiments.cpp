#include "dephcorr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "dephcorr/errors.hpp"
#include "dephcorr/full_model.hpp"

namespace dephcorr {

namespace {

enum class BathTag { None, Gaussian, Poissonian };

struct ScenarioShape {
    const char* name;
    BathTag bath;
    InteractionKind kind;
    int r;
    int s;
    InitialKind initial;
};

constexpr ScenarioShape kShapes[] = {
    {"AG", BathTag::Gaussian, InteractionKind::BandLimited, 1, 1, InitialKind::KZero},
    {"AP", BathTag::Poissonian, InteractionKind::BandLimited, 1, 1, InitialKind::KZero},
    {"A", BathTag::None, InteractionKind::BandLimited, 1, 1, InitialKind::KZero},
    {"BG1", BathTag::Gaussian, InteractionKind::Nonlinear, 1, 1, InitialKind::KZero},
    {"BP1", BathTag::Poissonian, InteractionKind::Nonlinear, 1, 1, InitialKind::KZero},
    {"B1", BathTag::None, InteractionKind::Nonlinear, 1, 1, InitialKind::KZero},
    {"BG2", BathTag::Gaussian, InteractionKind::Nonlinear, 1, 2, InitialKind::KZero},
    {"BP2", BathTag::Poissonian, InteractionKind::Nonlinear, 1, 2, InitialKind::KZero},
    {"B2", BathTag::None, InteractionKind::Nonlinear, 1, 2, InitialKind::KZero},
    {"BathOnlyG", BathTag::Gaussian, InteractionKind::BandLimited, 1, 1, InitialKind::MaxCorrelated},
    {"BathOnlyP", BathTag::Poissonian, InteractionKind::BandLimited, 1, 1, InitialKind::MaxCorrelated},
};

const ScenarioShape* shape_of(const std::string& name)
{
    for (const auto& s : kShapes) {
        if (name == s.name) return &s;
    }
    return nullptr;
}

std::string valid_names()
{
    std::string out;
    for (const auto& n : scenario_names()) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

std::vector<int> even_range(int lo, int hi)
{
    std::vector<int> out;
    for (int k = lo; k <= hi; k += 2) out.push_back(k);
    return out;
}

ScenarioConfig make(const char* name, OscillatorSpec osc, std::optional<BathSpec> bath,
                    InteractionSpec inter, std::vector<int> ks, InitialKind initial)
{
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.osc = osc;
    cfg.bath = bath;
    cfg.inter = inter;
    cfg.k_list = std::move(ks);
    cfg.initial = initial;
    cfg.grid = default_grid(inter, bath);
    return cfg;
}

BathSpec gaussian(double g1, double g2) { return BathSpec{BathKind::Gaussian, g1, g2, 0.0}; }
BathSpec poissonian(double g1, double g2, double phi) { return BathSpec{BathKind::Poissonian, g1, g2, phi}; }
InteractionSpec band_limited(double g) { return InteractionSpec{InteractionKind::BandLimited, g, 1, 1}; }
InteractionSpec nonlinear(double g, int r, int s) { return InteractionSpec{InteractionKind::Nonlinear, g, r, s}; }

}  // namespace

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : kShapes) out.emplace_back(s.name);
        return out;
    }();
    return names;
}

double ScenarioConfig::gaussian_strength() const
{
    if (!bath) return 0.0;
    return 0.5 * (bath->gamma1 * osc.omega1 * osc.omega1 + bath->gamma2 * osc.omega2 * osc.omega2);
}

void ScenarioConfig::validate() const
{
    const ScenarioShape* shape = shape_of(name);
    if (!shape) throw UnsupportedScenario("unknown scenario '" + name + "'; valid: " + valid_names());
    osc.validate();
    inter.validate();
    grid.validate();
    if (bath) bath->validate();
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must be in (0,1)");

    const BathTag tag = !bath ? BathTag::None
                              : (bath->kind == BathKind::Gaussian ? BathTag::Gaussian : BathTag::Poissonian);
    if (tag != shape->bath) throw UnsupportedScenario(name + ": bath type does not match the scenario");
    if (inter.kind != shape->kind) throw UnsupportedScenario(name + ": interaction type does not match");
    if (inter.kind == InteractionKind::Nonlinear && (inter.r != shape->r || inter.s != shape->s)) {
        throw UnsupportedScenario(name + ": interaction exponents do not match");
    }
    if (initial != shape->initial) throw UnsupportedScenario(name + ": initial state does not match");
    for (int k : k_list) {
        if (k < 1) throw ParameterError(name + ": k values must be >= 1");
    }
}

TimeGrid default_grid(const InteractionSpec& inter, const std::optional<BathSpec>& bath)
{
    TimeGrid grid;
    grid.samples = 600;
    if (inter.gamma > 0.0) {
        grid.t_end = 12.0 / inter.gamma;
    } else if (bath && std::max(bath->gamma1, bath->gamma2) > 0.0) {
        grid.t_end = 3.0 / std::max(bath->gamma1, bath->gamma2);
    } else {
        grid.t_end = 1.0;
    }
    grid.max_step = grid.t_end / 50.0;
    return grid;
}

std::vector<ScenarioConfig> builtin_scenarios()
{
    const double phi = 2.0 * std::numbers::pi / 7.0;
    const OscillatorSpec equal{1.0, 1.0};
    const OscillatorSpec harmonic{0.5, 1.0};  // 2 omega1 = omega2 = 1

    std::vector<ScenarioConfig> out;
    // Band-limited coupling: Gamma omega^2 = gamma/3 = 1/15; Poissonian Gamma = gamma/15 = 1/75.
    out.push_back(make("AG", equal, gaussian(1.0 / 15, 1.0 / 15), band_limited(0.2), even_range(4, 14), InitialKind::KZero));
    out.push_back(make("AP", equal, poissonian(1.0 / 75, 1.0 / 75, phi), band_limited(0.2), even_range(4, 14), InitialKind::KZero));
    out.push_back(make("A", equal, std::nullopt, band_limited(0.2), even_range(4, 14), InitialKind::KZero));
    // Linear coupling: Gamma omega^2 = gamma/3 = 1/15; Poissonian Gamma = gamma/10 = 1/50.
    out.push_back(make("BG1", equal, gaussian(1.0 / 15, 1.0 / 15), nonlinear(0.2, 1, 1), even_range(4, 24), InitialKind::KZero));
    out.push_back(make("BP1", equal, poissonian(1.0 / 50, 1.0 / 50, phi), nonlinear(0.2, 1, 1), even_range(4, 18), InitialKind::KZero));
    out.push_back(make("B1", equal, std::nullopt, nonlinear(0.2, 1, 1), even_range(4, 24), InitialKind::KZero));
    // r=1, s=2: Gamma_j omega_j^2 = gamma/3 = 1/30; Poissonian Gamma = gamma/4 = 1/40.
    out.push_back(make("BG2", harmonic, gaussian((1.0 / 30) / 0.25, 1.0 / 30), nonlinear(0.1, 1, 2), even_range(4, 28), InitialKind::KZero));
    out.push_back(make("BP2", harmonic, poissonian(1.0 / 40, 1.0 / 40, phi), nonlinear(0.1, 1, 2), even_range(4, 20), InitialKind::KZero));
    out.push_back(make("B2", harmonic, std::nullopt, nonlinear(0.1, 1, 2), even_range(4, 28), InitialKind::KZero));
    // Bath only, from the maximally correlated state.
    out.push_back(make("BathOnlyG", equal, gaussian(1.0, 1.0), band_limited(0.0), even_range(2, 12), InitialKind::MaxCorrelated));
    out.push_back(make("BathOnlyP", equal, poissonian(1.0, 1.0, phi), band_limited(0.0), even_range(2, 12), InitialKind::MaxCorrelated));
    return out;
}

ScenarioConfig find_scenario(const std::string& name)
{
    for (auto& cfg : builtin_scenarios()) {
        if (cfg.name == name) return cfg;
    }
    throw UnsupportedScenario("unknown scenario '" + name + "'; valid: " + valid_names());
}

void apply_override(ScenarioConfig& cfg, const std::string& key, double value)
{
    auto need_bath = [&]() -> BathSpec& {
        if (!cfg.bath) throw ParameterError("scenario " + cfg.name + " has no bath; cannot set " + key);
        return *cfg.bath;
    };
    if (!std::isfinite(value)) throw ParameterError("override " + key + " is not finite");
    if (key == "gamma") {
        if (value < 0.0) throw ParameterError("gamma must be >= 0");
        cfg.inter.gamma = value;
    } else if (key == "Gamma1") {
        if (value < 0.0) throw ParameterError("Gamma1 must be >= 0");
        need_bath().gamma1 = value;
    } else if (key == "Gamma2") {
        if (value < 0.0) throw ParameterError("Gamma2 must be >= 0");
        need_bath().gamma2 = value;
    } else if (key == "phi") {
        need_bath().phi = value;
    } else if (key == "omega1") {
        if (value <= 0.0) throw ParameterError("omega1 must be > 0");
        cfg.osc.omega1 = value;
    } else if (key == "omega2") {
        if (value <= 0.0) throw ParameterError("omega2 must be > 0");
        cfg.osc.omega2 = value;
    } else if (key == "t_end") {
        if (value <= 0.0) throw ParameterError("t_end must be > 0");
        cfg.grid.t_end = value;
        cfg.grid.max_step = std::min(cfg.grid.max_step, value);
    } else if (key == "samples") {
        if (value < 2.0 || value != std::floor(value)) throw ParameterError("samples must be an integer >= 2");
        cfg.grid.samples = static_cast<int>(value);
    } else if (key == "max_step") {
        if (value <= 0.0) throw ParameterError("max_step must be > 0");
        cfg.grid.max_step = value;
    } else if (key == "eps") {
        if (!(value > 0.0 && value < 1.0)) throw ParameterError("eps must be in (0,1)");
        cfg.eps = value;
    } else {
        throw ParameterError("unknown override '" + key +
                             "'; valid: gamma, Gamma1, Gamma2, phi, omega1, omega2, t_end, samples, max_step, eps");
    }
}

LadderState scenario_initial_state(const ScenarioConfig& cfg, int k)
{
    const Ladder lad = build_ladder(k, cfg.inter);
    return cfg.initial == InitialKind::KZero ? initial_state(lad) : maximally_correlated_state(lad);
}

LadderGenerators scenario_generators(const ScenarioConfig& cfg, int k)
{
    return build_generators(build_ladder(k, cfg.inter), cfg.osc, cfg.bath, cfg.inter);
}

Trajectory<LadderState> evolve_scenario(const ScenarioConfig& cfg, int k, const IntegratorOptions& opts)
{
    cfg.validate();
    const LadderGenerators gen = scenario_generators(cfg, k);
    return integrate_ladder(gen, scenario_initial_state(cfg, k), cfg.grid, opts);
}

std::vector<CorrelationRecord> measure_trajectory(const ScenarioConfig& cfg,
                                                  const Trajectory<LadderState>& traj)
{
    std::vector<CorrelationRecord> out;
    out.reserve(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        out.push_back(measure(traj.times[i], traj.states[i], cfg.osc, cfg.eps));
    }
    return out;
}

std::vector<CorrelationRecord> run_scenario(const ScenarioConfig& cfg, int k, const IntegratorOptions& opts)
{
    return measure_trajectory(cfg, evolve_scenario(cfg, k, opts));
}

std::map<int, std::vector<CorrelationRecord>> run_sweep(const ScenarioConfig& cfg, std::span<const int> ks,
                                                        const IntegratorOptions& opts)
{
    cfg.validate();
    std::vector<std::future<std::vector<CorrelationRecord>>> jobs;
    jobs.reserve(ks.size());
    for (int k : ks) {
        jobs.push_back(std::async(std::launch::async, [&cfg, k, opts] { return run_scenario(cfg, k, opts); }));
    }
    std::map<int, std::vector<CorrelationRecord>> out;
    for (std::size_t i = 0; i < ks.size(); ++i) out[ks[i]] = jobs[i].get();
    return out;
}

FirstMaximum first_maximum(std::span<const double> t, std::span<const double> v)
{
    if (t.size() != v.size()) throw DimensionError("first_maximum: t and v differ in length");
    if (v.size() < 3) throw ParameterError("first_maximum: need at least 3 samples");
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) {
            // Vertex of the parabola through the three samples.
            const double x0 = t[i - 1], x1 = t[i], x2 = t[i + 1];
            const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
            const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
            const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
            const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
            const double c = (x1 * x2 * (x1 - x2) * y0 + x2 * x0 * (x2 - x0) * y1 + x0 * x1 * (x0 - x1) * y2) / denom;
            if (!(a < 0.0)) return {x1, y1, true};
            const double tv = std::clamp(-b / (2.0 * a), x0, x2);
            return {tv, std::max(y1, c - b * b / (4.0 * a)), true};
        }
    }
    const auto it = std::max_element(v.begin(), v.end());
    const std::size_t idx = static_cast<std::size_t>(it - v.begin());
    return {t[idx], *it, false};
}

const char* quantity_name(Quantity q)
{
    return q == Quantity::Negativity ? "negativity" : "hs_participation";
}

Quantity quantity_from_name(const std::string& name)
{
    if (name == "negativity") return Quantity::Negativity;
    if (name == "hs_participation") return Quantity::HsParticipation;
    throw ParameterError("unknown quantity '" + name + "'; valid: negativity, hs_participation");
}

double quantity_value(const CorrelationRecord& rec, Quantity q)
{
    return q == Quantity::Negativity ? rec.negativity : rec.hs_participation;
}

ScalingFit fit_power_law(std::span<const int> ks, std::span<const double> values, Quantity quantity)
{
    if (ks.size() != values.size()) throw DimensionError("fit_power_law: ks and values differ in length");
    if (ks.size() < 4) throw ParameterError("fit_power_law: need at least 4 points");
    const std::size_t n = ks.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values[i] > 0.0) || ks[i] <= 0) throw ParameterError("fit_power_law: values and k must be positive");
        x[i] = std::log(static_cast<double>(ks[i]));
        y[i] = std::log(values[i]);
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw ParameterError("fit_power_law: k values must not all be equal");
    ScalingFit fit;
    fit.quantity = quantity;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double res = y[i] - (fit.log_prefactor + fit.exponent * x[i]);
        rss += res * res;
    }
    fit.exponent_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    fit.ks.assign(ks.begin(), ks.end());
    fit.amplitudes.assign(values.begin(), values.end());
    return fit;
}

ScalingFit scaling_from_sweep(const std::map<int, std::vector<CorrelationRecord>>& sweep, Quantity quantity)
{
    std::vector<int> ks;
    std::vector<double> amps;
    for (const auto& [k, recs] : sweep) {
        std::vector<double> t, v;
        t.reserve(recs.size());
        v.reserve(recs.size());
        for (const auto& r : recs) {
            t.push_back(r.t);
            v.push_back(quantity_value(r, quantity));
        }
        ks.push_back(k);
        amps.push_back(first_maximum(t, v).value);
    }
    return fit_power_law(ks, amps, quantity);
}

OracleReport oracle_check(const ScenarioConfig& cfg, int k, int samples, const IntegratorOptions& opts)
{
    cfg.validate();
    OracleReport rep;
    TimeGrid grid;
    grid.t_end = cfg.inter.gamma > 0.0 ? 5.0 / cfg.inter.gamma : cfg.grid.t_end;
    grid.samples = samples;
    grid.max_step = grid.t_end / 20.0;
    rep.t_end = grid.t_end;

    const LadderState init = scenario_initial_state(cfg, k);
    const LadderGenerators lgen = scenario_generators(cfg, k);
    const auto ladder_traj = integrate_ladder(lgen, init, grid, opts);

    const Truncation tr = truncation_for(k, cfg.inter);
    const FullGenerator fgen = build_full_rhs(cfg.osc, cfg.bath, cfg.inter, tr.n1, tr.n2);
    const auto full_traj = integrate_full(fgen, embed(init, tr.n1, tr.n2), grid, opts);

    const int r = init.ladder.r, s = init.ladder.s;
    const double charge0 = charge_expectation(full_traj.states.front(), r, s);
    for (std::size_t i = 0; i < full_traj.states.size(); ++i) {
        const Projection p = project(full_traj.states[i], init.ladder);
        rep.max_leakage = std::max(rep.max_leakage, std::abs(p.leakage));
        rep.max_deviation = std::max(rep.max_deviation, max_abs(p.state.rho - ladder_traj.states[i].rho));
        rep.max_charge_drift =
            std::max(rep.max_charge_drift, std::abs(charge_expectation(full_traj.states[i], r, s) - charge0));
    }
    return rep;
}

}  // namespace dephcorr
