#pragma once

// Conserved-charge ("ladder") representation of two coupled oscillators.
//
// Starting from |k 0>, both interaction types conserve a generalized number
// operator r*n1 + s*n2, so the density matrix lives on the chain of product
// states |m, l_m> reachable from |k 0>. The state restricted to that chain is
// Schmidt-correlated in the local energy bases.

#include <optional>
#include <vector>

#include "dephcorr/linops.hpp"

namespace dephcorr {

enum class BathKind { Gaussian, Poissonian };
enum class InteractionKind { BandLimited, Nonlinear };

struct BathSpec {
    BathKind kind = BathKind::Gaussian;
    double gamma1 = 0.0;  ///< local dephasing rate of oscillator 1
    double gamma2 = 0.0;  ///< local dephasing rate of oscillator 2
    double phi = 0.0;     ///< kick phase, Poissonian only

    void validate() const;
};

struct InteractionSpec {
    InteractionKind kind = InteractionKind::BandLimited;
    double gamma = 0.0;  ///< coupling strength
    int r = 1;           ///< power of a2 in (a1^dag)^s (a2)^r, Nonlinear only
    int s = 1;           ///< power of a1^dag, Nonlinear only

    void validate() const;
    /// Exponents that define the conserved charge r*n1 + s*n2 (1,1 for BandLimited).
    int charge_r() const { return kind == InteractionKind::Nonlinear ? r : 1; }
    int charge_s() const { return kind == InteractionKind::Nonlinear ? s : 1; }
};

struct OscillatorSpec {
    double omega1 = 1.0;
    double omega2 = 1.0;

    void validate() const;
};

struct Ladder {
    int k = 0;
    InteractionKind kind = InteractionKind::BandLimited;
    int r = 1;
    int s = 1;
    std::vector<int> m_values;  ///< ascending oscillator-1 quantum numbers
    std::vector<int> l_values;  ///< matching oscillator-2 quantum numbers

    Index size() const { return static_cast<Index>(m_values.size()); }
    /// r*m + s*l_m, identical for every entry.
    int charge() const { return r * k; }
    /// Ladder position of oscillator-1 number m, or -1.
    Index position_of(int m) const;
};

struct LadderState {
    Ladder ladder;
    CMatrix rho;  ///< rho(i, j) is the coefficient of |m_i l_i><m_j l_j|
};

struct LadderGenerators {
    CMatrix h_eff;  ///< Hamiltonian restricted to the ladder
    CMatrix deph;   ///< element-wise decay exponents z_ij, d rho_ij/dt gets -z_ij rho_ij
};

Ladder build_ladder(int k, const InteractionSpec& inter);

/// `bath` empty means an isolated system.
LadderGenerators build_generators(const Ladder& lad, const OscillatorSpec& osc,
                                  const std::optional<BathSpec>& bath,
                                  const InteractionSpec& inter);

/// Matrix element <m+s, l-r| (a1^dag)^s (a2)^r |m, l>, computed in integers before the root.
double nonlinear_matrix_element(int m, int l, int r, int s);

/// Pure product state |k 0>.
LadderState initial_state(const Ladder& lad);

/// (k+1)^{-1/2} sum_n |n>|k-n> on a BandLimited ladder.
LadderState maximally_correlated_state(const Ladder& lad);

/// Throws ParameterError unless rho is Hermitian, has unit trace and is
/// positive semidefinite, all within `tol`.
void validate_state(const LadderState& state, double tol = 1e-9);

}  // namespace dephcorr
