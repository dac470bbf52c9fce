#pragma once

// Correlation measures: negativity (partial-transpose definition and the
// Schmidt-correlated shortcut), purity, pure-state Schmidt rank, and the
// operator-Schmidt ("HS") spectrum with its rank, effective rank and
// participation number.

#include <utility>
#include <vector>

#include "dephcorr/full_model.hpp"
#include "dephcorr/ladder_model.hpp"
#include "dephcorr/linops.hpp"

namespace dephcorr {

/// Operator-Schmidt coefficients of rho viewed as a vector in HS space.
struct HsSpectrum {
    std::vector<double> sigmas;  ///< descending
    double hs_norm = 0.0;        ///< sqrt(sum sigma^2) = sqrt(Tr rho^2)
};

struct CorrelationRecord {
    double t = 0.0;
    double negativity = 0.0;
    double purity = 1.0;
    double hs_participation = 1.0;
    long effective_hs_rank = 1;
    double energy1 = 0.0;
    double energy2 = 0.0;
};

/// Default cutoff for the effective HS-rank.
inline constexpr double kDefaultRankEpsilon = 0.01;
/// sigma_i > kExactRankCutoff * sigma_1 counts toward an exact rank.
inline constexpr double kExactRankCutoff = 1e-10;

/// Transpose on the first subsystem.
CMatrix partial_transpose(const FullState& fs);

/// (||rho^{T_a}||_1 - 1) / 2, computed as the magnitude of the negative part of the spectrum.
double negativity_full(const FullState& fs);

/// sum_{m<n} |rho_mn|, exact for Schmidt-correlated states.
double negativity_ladder(const LadderState& ls);

double purity(const CMatrix& rho);
inline double purity(const LadderState& ls) { return purity(ls.rho); }
inline double purity(const FullState& fs) { return purity(fs.rho); }

struct SchmidtInfo {
    std::vector<double> coefficients;  ///< singular values of C, descending
    long rank = 0;
    double participation = 0.0;  ///< (sum c^2)^2 / sum c^4
};

/// Schmidt data of sum_ij C_ij |i>|j>. C must have unit Frobenius norm (1e-9).
SchmidtInfo schmidt_rank_pure(const CMatrix& coeffs, double tol = kExactRankCutoff);

HsSpectrum hs_spectrum(const LadderState& ls);
HsSpectrum hs_spectrum(const FullState& fs);

/// Dense reshape rho_{(ik),(jl)} -> M_{(ij),(kl)} used for full states.
CMatrix operator_reshape(const FullState& fs);

/// (sum sigma^2)^2 / sum sigma^4 of the unit-normalized superket.
double hs_participation(const HsSpectrum& spec);

/// Count of sigma_i > rel_tol * sigma_1.
long hs_rank(const HsSpectrum& spec, double rel_tol = kExactRankCutoff);

/// Smallest n with sqrt(sum_{i>n} sigma_i^2) / hs_norm < eps.
long effective_rank(const std::vector<double>& descending, double eps);
long effective_hs_rank(const HsSpectrum& spec, double eps = kDefaultRankEpsilon);

/// (omega1 <n1>, omega2 <n2>) of a ladder state.
std::pair<double, double> local_energies(const LadderState& ls, const OscillatorSpec& osc);

/// All per-sample measures of a ladder state.
CorrelationRecord measure(double t, const LadderState& ls, const OscillatorSpec& osc,
                          double eps = kDefaultRankEpsilon);

}  // namespace dephcorr
