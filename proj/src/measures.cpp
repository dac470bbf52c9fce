#include "dephcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dephcorr/errors.hpp"

namespace dephcorr {

namespace {

void require_consistent(const FullState& fs)
{
    if (fs.rho.rows() != fs.n1 * fs.n2 || fs.rho.cols() != fs.n1 * fs.n2) {
        throw DimensionError("FullState: rho is not (n1*n2)x(n1*n2)");
    }
}

HsSpectrum spectrum_from(std::vector<double> sigmas)
{
    std::sort(sigmas.begin(), sigmas.end(), std::greater<>());
    double sum_sq = 0.0;
    for (double s : sigmas) sum_sq += s * s;
    return HsSpectrum{std::move(sigmas), std::sqrt(sum_sq)};
}

}  // namespace

CMatrix partial_transpose(const FullState& fs)
{
    require_consistent(fs);
    const Index n1 = fs.n1;
    const Index n2 = fs.n2;
    CMatrix out(n1 * n2, n1 * n2);
    for (Index i = 0; i < n1; ++i) {
        for (Index j = 0; j < n1; ++j) {
            // <i k| rho |j l>  ->  <j k| rho^T_a |i l>
            out.block(j * n2, i * n2, n2, n2) = fs.rho.block(i * n2, j * n2, n2, n2);
        }
    }
    return out;
}

double negativity_full(const FullState& fs)
{
    const auto ev = hermitian_eigenvalues(partial_transpose(fs));
    double neg = 0.0;
    for (double e : ev) {
        if (e < 0.0) neg -= e;
    }
    return neg;
}

double negativity_ladder(const LadderState& ls)
{
    double sum = 0.0;
    const Index d = ls.rho.rows();
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) sum += std::abs(ls.rho(i, j));
    }
    return sum;
}

double purity(const CMatrix& rho)
{
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.cwiseAbs2().sum();
}

SchmidtInfo schmidt_rank_pure(const CMatrix& coeffs, double tol)
{
    const double norm = coeffs.norm();
    if (norm == 0.0) throw ParameterError("schmidt_rank_pure: zero coefficient matrix");
    if (std::abs(norm - 1.0) > 1e-9) {
        throw ParameterError("schmidt_rank_pure: coefficient matrix is not normalized");
    }
    SchmidtInfo out;
    out.coefficients = singular_values(coeffs);
    const double top = out.coefficients.front();
    double s2 = 0.0, s4 = 0.0;
    for (double c : out.coefficients) {
        if (c > tol * top) ++out.rank;
        s2 += c * c;
        s4 += c * c * c * c;
    }
    out.participation = s2 * s2 / s4;
    return out;
}

HsSpectrum hs_spectrum(const LadderState& ls)
{
    // Row (m,n) and column (l_m,l_n) of the reshape hold a single nonzero
    // entry each, so the singular values are the entry magnitudes.
    std::vector<double> sigmas;
    sigmas.reserve(static_cast<std::size_t>(ls.rho.size()));
    for (Index j = 0; j < ls.rho.cols(); ++j) {
        for (Index i = 0; i < ls.rho.rows(); ++i) sigmas.push_back(std::abs(ls.rho(i, j)));
    }
    return spectrum_from(std::move(sigmas));
}

CMatrix operator_reshape(const FullState& fs)
{
    require_consistent(fs);
    const Index n1 = fs.n1;
    const Index n2 = fs.n2;
    CMatrix m(n1 * n1, n2 * n2);
    for (Index i = 0; i < n1; ++i) {
        for (Index j = 0; j < n1; ++j) {
            for (Index k = 0; k < n2; ++k) {
                for (Index l = 0; l < n2; ++l) {
                    m(i * n1 + j, k * n2 + l) = fs.rho(i * n2 + k, j * n2 + l);
                }
            }
        }
    }
    return m;
}

HsSpectrum hs_spectrum(const FullState& fs)
{
    return spectrum_from(singular_values(operator_reshape(fs)));
}

double hs_participation(const HsSpectrum& spec)
{
    if (!(spec.hs_norm > 0.0)) throw ParameterError("hs_participation: zero spectrum");
    double s2 = 0.0, s4 = 0.0;
    for (double s : spec.sigmas) {
        const double x = (s / spec.hs_norm) * (s / spec.hs_norm);
        s2 += x;
        s4 += x * x;
    }
    return s2 * s2 / s4;
}

long hs_rank(const HsSpectrum& spec, double rel_tol)
{
    if (spec.sigmas.empty()) return 0;
    const double top = spec.sigmas.front();
    return static_cast<long>(std::count_if(spec.sigmas.begin(), spec.sigmas.end(),
                                           [&](double s) { return s > rel_tol * top; }));
}

long effective_rank(const std::vector<double>& descending, double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("effective rank: eps must be in (0,1)");
    const std::size_t n = descending.size();
    if (n == 0) return 0;
    // tail[i] = sum_{j >= i} sigma_j^2, accumulated from the small end.
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + descending[i] * descending[i];
    const double total = tail[0];
    if (!(total > 0.0)) throw ParameterError("effective rank: zero spectrum");
    for (std::size_t keep = 1; keep <= n; ++keep) {
        if (std::sqrt(tail[keep] / total) < eps) return static_cast<long>(keep);
    }
    return static_cast<long>(n);
}

long effective_hs_rank(const HsSpectrum& spec, double eps)
{
    return effective_rank(spec.sigmas, eps);
}

std::pair<double, double> local_energies(const LadderState& ls, const OscillatorSpec& osc)
{
    double n1 = 0.0, n2 = 0.0;
    for (Index i = 0; i < ls.ladder.size(); ++i) {
        const double p = ls.rho(i, i).real();
        n1 += ls.ladder.m_values[i] * p;
        n2 += ls.ladder.l_values[i] * p;
    }
    return {osc.omega1 * n1, osc.omega2 * n2};
}

CorrelationRecord measure(double t, const LadderState& ls, const OscillatorSpec& osc, double eps)
{
    const HsSpectrum spec = hs_spectrum(ls);
    const auto [e1, e2] = local_energies(ls, osc);
    CorrelationRecord rec;
    rec.t = t;
    rec.negativity = negativity_ladder(ls);
    rec.purity = purity(ls);
    rec.hs_participation = hs_participation(spec);
    rec.effective_hs_rank = effective_hs_rank(spec, eps);
    rec.energy1 = e1;
    rec.energy2 = e2;
    return rec;
}

}  // namespace dephcorr
