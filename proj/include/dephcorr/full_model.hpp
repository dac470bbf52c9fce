#pragma once

// Brute-force reference: the truncated tensor-product space with the full
// Hamiltonian and local dissipators, evolved without using the conservation law.
// Dense and meant for small k only.

#include <optional>

#include "dephcorr/ladder_model.hpp"
#include "dephcorr/linops.hpp"

namespace dephcorr {

/// Product-basis density matrix, |i>|j> has index i * n2 + j.
struct FullState {
    Index n1 = 0;
    Index n2 = 0;
    CMatrix rho;
};

struct Truncation {
    Index n1 = 0;
    Index n2 = 0;
};

/// Smallest local dimensions that hold the whole ladder of |k 0>.
Truncation truncation_for(int k, const InteractionSpec& inter);

/// Right-hand side of the full master equation
///   d rho/dt = -i[H1 + H2 + gamma H12, rho] - sum_j Gamma_j D_j(rho)
/// with D_j = [H_j,[H_j, .]] (Gaussian) or rho - U_j rho U_j^dag, U_j = exp(-i phi H_j)
/// (Poissonian).
class FullGenerator {
public:
    FullGenerator(const OscillatorSpec& osc, const std::optional<BathSpec>& bath,
                  const InteractionSpec& inter, Index n1, Index n2);

    Index n1() const { return n1_; }
    Index n2() const { return n2_; }

    void apply(const CMatrix& rho, CMatrix& drho) const;
    CMatrix operator()(const CMatrix& rho) const;

    const CMatrix& hamiltonian() const { return h_total_; }

private:
    Index n1_;
    Index n2_;
    std::optional<BathSpec> bath_;
    CMatrix h_total_;
    CMatrix h1_;  // local Hamiltonians embedded in the product space
    CMatrix h2_;
    CMatrix u1_;  // Poissonian kicks
    CMatrix u2_;
};

FullGenerator build_full_rhs(const OscillatorSpec& osc, const std::optional<BathSpec>& bath,
                             const InteractionSpec& inter, Index n1, Index n2);

FullState embed(const LadderState& ls, Index n1, Index n2);

struct Projection {
    LadderState state;
    /// Population outside the ladder block, 1 - Tr(block) for a unit-trace state.
    double leakage = 0.0;
};

Projection project(const FullState& fs, const Ladder& lad);

/// Expectation of r*n1 + s*n2 in a full state.
double charge_expectation(const FullState& fs, int r, int s);

}  // namespace dephcorr
