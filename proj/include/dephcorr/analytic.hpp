#pragma once

// Closed-form references: bath-driven decay of the maximally correlated
// state, single-oscillator dephasing propagators, the isolated linear
// beam-splitter solution, and width estimates of the interaction-dominated
// band around the diagonal.

#include <optional>
#include <vector>

#include "dephcorr/ladder_model.hpp"

namespace dephcorr {

/// Decoherence-vs-interaction boundary per diagonal position.
struct WidthProfile {
    int k = 0;
    std::vector<int> m_values;
    /// Full band width Delta = 2|m-n| at each m.
    std::vector<double> widths;
    /// Closed upper bound on the widths when one is known for the coupling
    /// (linear r=s=1 and r=1, s=2).
    std::optional<double> upper_bound;

    double max_width() const;
};

/// Maximally correlated BandLimited state after time t under the bath alone:
/// rho_mn(t) = exp(-(z_mn + i (E_m - E_n)) t) / (k+1).
LadderState bath_driven_state(double t, int k, const OscillatorSpec& osc, const BathSpec& bath);

/// sum_{m<n} |rho_mn(t)| of bath_driven_state, evaluated from the exponents directly.
double bath_driven_negativity(double t, int k, const OscillatorSpec& osc, const BathSpec& bath);

/// Propagator factor of rho_nm for one dephased oscillator, (E_m - E_n) = omega (m - n).
Complex single_oscillator_element(double t, int m, int n, double omega, BathKind kind,
                                  double rate, double phi);

/// Amplitudes c_n(t) on |n, k-n> for H = omega (n1 + n2) + gamma (a1^dag a2 + h.c.)
/// started from |k 0>. Index n runs 0..k.
std::vector<Complex> isolated_linear_state(double t, int k, double omega, double gamma);

/// sqrt(k), the estimated effective Schmidt rank at t = pi / (4 gamma).
double isolated_linear_schmidt_width(int k);

/// Boundary of the interaction-dominated band for coupling ratio gamma/Gamma.
WidthProfile width_boundary(int k, double gamma_over_Gamma, const InteractionSpec& inter);

/// log(n choose k) without overflow.
double log_binomial(int n, int k);

}  // namespace dephcorr
