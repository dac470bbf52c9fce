#pragma once

// Adaptive time integration of matrix-valued master equations with dense
// output on a uniform sampling grid.

#include <cstddef>
#include <functional>
#include <vector>

#include "dephcorr/full_model.hpp"
#include "dephcorr/ladder_model.hpp"
#include "dephcorr/linops.hpp"

namespace dephcorr {

struct TimeGrid {
    double t_end = 1.0;
    int samples = 2;       ///< uniform output points including t=0 and t_end
    double max_step = 1.0; ///< upper bound on the internal step

    void validate() const;
    std::vector<double> times() const;
};

struct IntegratorOptions {
    double atol = 1e-10;
    double rtol = 1e-9;
    /// Sampled trace/Hermiticity drift below this is repaired, above it is an IntegrityError.
    double drift_tolerance = 1e-8;
    std::size_t max_steps = 20'000'000;
};

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
};

using MatrixRhs = std::function<void(const CMatrix& rho, CMatrix& drho)>;

/// Dormand-Prince 5(4) with Hairer's continuous extension. Every sample is
/// checked for trace and Hermiticity drift, then symmetrized and renormalized.
Trajectory<CMatrix> integrate(const MatrixRhs& rhs, const CMatrix& initial, const TimeGrid& grid,
                              const IntegratorOptions& opts = {});

/// (d rho/dt)_ij = -i [h_eff, rho]_ij - z_ij rho_ij
void ladder_rhs(const LadderGenerators& gen, const CMatrix& rho, CMatrix& drho);
CMatrix ladder_rhs(const LadderGenerators& gen, const CMatrix& rho);

Trajectory<LadderState> integrate_ladder(const LadderGenerators& gen, const LadderState& initial,
                                         const TimeGrid& grid, const IntegratorOptions& opts = {});

Trajectory<FullState> integrate_full(const FullGenerator& gen, const FullState& initial,
                                     const TimeGrid& grid, const IntegratorOptions& opts = {});

}  // namespace dephcorr
