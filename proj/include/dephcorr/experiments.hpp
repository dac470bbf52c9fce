#pragma once

// Scenario registry, trajectory runs, k-sweeps, first-maximum extraction and
// power-law scaling fits.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dephcorr/evolve.hpp"
#include "dephcorr/ladder_model.hpp"
#include "dephcorr/measures.hpp"

namespace dephcorr {

enum class InitialKind { KZero, MaxCorrelated };

struct ScenarioConfig {
    std::string name;
    OscillatorSpec osc;
    std::optional<BathSpec> bath;  ///< empty for isolated cases
    InteractionSpec inter;
    std::vector<int> k_list;
    TimeGrid grid;
    InitialKind initial = InitialKind::KZero;
    double eps = kDefaultRankEpsilon;

    /// Checks field values and that they match what the scenario name implies.
    void validate() const;
    /// Gaussian dephasing strength Gamma_j omega_j^2 averaged over both oscillators.
    double gaussian_strength() const;
};

/// Names of the built-in scenarios in registry order.
const std::vector<std::string>& scenario_names();

std::vector<ScenarioConfig> builtin_scenarios();

/// Throws UnsupportedScenario naming the valid choices.
ScenarioConfig find_scenario(const std::string& name);

/// Applies `key=value` style overrides: gamma, Gamma1, Gamma2, phi, omega1,
/// omega2, t_end, samples, eps, max_step. Unknown keys throw ParameterError.
void apply_override(ScenarioConfig& cfg, const std::string& key, double value);

/// Time horizon 12/gamma (or 3/Gamma for bath-only runs) with 600 samples.
TimeGrid default_grid(const InteractionSpec& inter, const std::optional<BathSpec>& bath);

LadderState scenario_initial_state(const ScenarioConfig& cfg, int k);
LadderGenerators scenario_generators(const ScenarioConfig& cfg, int k);

Trajectory<LadderState> evolve_scenario(const ScenarioConfig& cfg, int k,
                                        const IntegratorOptions& opts = {});

std::vector<CorrelationRecord> measure_trajectory(const ScenarioConfig& cfg,
                                                  const Trajectory<LadderState>& traj);

std::vector<CorrelationRecord> run_scenario(const ScenarioConfig& cfg, int k,
                                            const IntegratorOptions& opts = {});

/// One trajectory per k, evaluated on worker threads; results keyed by k.
std::map<int, std::vector<CorrelationRecord>> run_sweep(const ScenarioConfig& cfg,
                                                        std::span<const int> ks,
                                                        const IntegratorOptions& opts = {});

struct FirstMaximum {
    double t = 0.0;
    double value = 0.0;
    /// False when the series has no interior maximum and the global maximum was returned.
    bool interior = true;
};

/// First sample strictly above both neighbours, refined by a parabola through the
/// three points.
FirstMaximum first_maximum(std::span<const double> t, std::span<const double> v);

enum class Quantity { Negativity, HsParticipation };
const char* quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);
double quantity_value(const CorrelationRecord& rec, Quantity q);

struct ScalingFit {
    Quantity quantity = Quantity::Negativity;
    double exponent = 0.0;
    double exponent_stderr = 0.0;
    double log_prefactor = 0.0;  ///< intercept of log v = log_prefactor + exponent log k
    std::vector<int> ks;
    std::vector<double> amplitudes;
};

/// Least-squares slope of log v against log k. Needs >= 4 positive points.
ScalingFit fit_power_law(std::span<const int> ks, std::span<const double> values,
                         Quantity quantity = Quantity::Negativity);

/// First-maximum amplitude of one quantity in each trajectory, then the fit.
ScalingFit scaling_from_sweep(const std::map<int, std::vector<CorrelationRecord>>& sweep,
                              Quantity quantity);

struct OracleReport {
    double max_deviation = 0.0;  ///< max |rho_ladder - project(rho_full)| over all samples
    double max_leakage = 0.0;
    double max_charge_drift = 0.0;
    double t_end = 0.0;
};

/// Evolves the ladder and the full truncated model side by side over [0, 5/gamma]
/// (or the scenario grid for gamma = 0).
OracleReport oracle_check(const ScenarioConfig& cfg, int k, int samples = 101,
                          const IntegratorOptions& opts = {1e-12, 1e-11});

}  // namespace dephcorr
