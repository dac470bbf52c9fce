#include "dephcorr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dephcorr/errors.hpp"

namespace dephcorr {

double WidthProfile::max_width() const
{
    return widths.empty() ? 0.0 : *std::max_element(widths.begin(), widths.end());
}

namespace {

Ladder band_limited_ladder(int k)
{
    InteractionSpec inter;
    inter.kind = InteractionKind::BandLimited;
    return build_ladder(k, inter);
}

}  // namespace

LadderState bath_driven_state(double t, int k, const OscillatorSpec& osc, const BathSpec& bath)
{
    if (t < 0.0) throw ParameterError("bath_driven_state: t must be >= 0");
    const Ladder lad = band_limited_ladder(k);
    InteractionSpec none;
    const LadderGenerators gen = build_generators(lad, osc, bath, none);
    LadderState st = maximally_correlated_state(lad);
    for (Index i = 0; i < lad.size(); ++i) {
        for (Index j = 0; j < lad.size(); ++j) {
            const double de = osc.omega1 * (lad.m_values[i] - lad.m_values[j]) +
                              osc.omega2 * (lad.l_values[i] - lad.l_values[j]);
            st.rho(i, j) *= std::exp(-(gen.deph(i, j) + Complex(0.0, de)) * t);
        }
    }
    return st;
}

double bath_driven_negativity(double t, int k, const OscillatorSpec& osc, const BathSpec& bath)
{
    if (t < 0.0) throw ParameterError("bath_driven_negativity: t must be >= 0");
    if (k < 1) throw ParameterError("bath_driven_negativity: k must be >= 1");
    // Only the real part of each exponent changes |rho_mn|.
    double sum = 0.0;
    for (int m = 0; m <= k; ++m) {
        for (int n = m + 1; n <= k; ++n) {
            const double dm = m - n;
            const double dl = -dm;
            double rate;
            if (bath.kind == BathKind::Gaussian) {
                rate = bath.gamma1 * osc.omega1 * osc.omega1 * dm * dm +
                       bath.gamma2 * osc.omega2 * osc.omega2 * dl * dl;
            } else {
                rate = bath.gamma1 * (1.0 - std::cos(osc.omega1 * dm * bath.phi)) +
                       bath.gamma2 * (1.0 - std::cos(osc.omega2 * dl * bath.phi));
            }
            sum += std::exp(-rate * t);
        }
    }
    return sum / (k + 1);
}

Complex single_oscillator_element(double t, int m, int n, double omega, BathKind kind, double rate,
                                  double phi)
{
    if (t < 0.0) throw ParameterError("single_oscillator_element: t must be >= 0");
    const double w = omega * (m - n);
    const Complex free = std::polar(1.0, -w * t);
    if (kind == BathKind::Gaussian) return free * std::exp(-rate * w * w * t);
    return free * std::exp(rate * (std::polar(1.0, -w * phi) - 1.0) * t);
}

double log_binomial(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<Complex> isolated_linear_state(double t, int k, double omega, double gamma)
{
    if (t < 0.0) throw ParameterError("isolated_linear_state: t must be >= 0");
    if (k < 0) throw ParameterError("isolated_linear_state: k must be >= 0");
    const double c = std::cos(gamma * t);
    const double s = std::sin(gamma * t);
    const Complex energy_phase = std::polar(1.0, -omega * k * t);
    // a1^dag(t) = cos(gt) a1^dag - i sin(gt) a2^dag, so
    // c_n = sqrt(C(k,n)) cos^n (-i sin)^(k-n).
    std::vector<Complex> out(static_cast<std::size_t>(k + 1));
    for (int n = 0; n <= k; ++n) {
        const int j = k - n;
        double magnitude;
        if ((n > 0 && c == 0.0) || (j > 0 && s == 0.0)) {
            magnitude = 0.0;
        } else if (k <= 30) {
            magnitude = std::sqrt(std::exp(log_binomial(k, n))) * std::pow(std::abs(c), n) *
                        std::pow(std::abs(s), j);
        } else {
            double log_mag = 0.5 * log_binomial(k, n);
            if (n > 0) log_mag += n * std::log(std::abs(c));
            if (j > 0) log_mag += j * std::log(std::abs(s));
            magnitude = std::exp(log_mag);
        }
        double sign = 1.0;
        if (c < 0.0 && (n % 2) == 1) sign = -sign;
        if (s < 0.0 && (j % 2) == 1) sign = -sign;
        static constexpr Complex minus_i_powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
        out[n] = sign * magnitude * minus_i_powers[j % 4] * energy_phase;
    }
    return out;
}

double isolated_linear_schmidt_width(int k)
{
    if (k < 1) throw ParameterError("isolated_linear_schmidt_width: k must be >= 1");
    return std::sqrt(static_cast<double>(k));
}

WidthProfile width_boundary(int k, double gamma_over_Gamma, const InteractionSpec& inter)
{
    if (!(gamma_over_Gamma > 0.0)) throw ParameterError("width_boundary: gamma/Gamma must be > 0");
    const Ladder lad = build_ladder(k, inter);
    WidthProfile out;
    out.k = k;
    out.m_values = lad.m_values;
    out.widths.reserve(lad.m_values.size());

    if (inter.kind == InteractionKind::BandLimited) {
        const double width = std::sqrt(2.0 * gamma_over_Gamma);
        out.widths.assign(lad.m_values.size(), width);
        out.upper_bound = width;
        return out;
    }

    // (g/2G) (r/s)^{r/2} sqrt[(k-m)^r m^s + n^s (k-n)^r] / (2 (m-n)^2) = 1,
    // bracket evaluated at n = m, solved for Delta = 2|m-n|.
    const double r = lad.r;
    const double s = lad.s;
    const double prefactor = gamma_over_Gamma * std::pow(r / s, r / 2.0);
    for (int m : lad.m_values) {
        const double bracket = 2.0 * std::pow(k - m, r) * std::pow(m, s);
        out.widths.push_back(std::sqrt(prefactor * std::sqrt(bracket)));
    }
    if (lad.r == 1 && lad.s == 1) {
        out.upper_bound = std::pow(2.0, 0.75) * std::sqrt(gamma_over_Gamma * k);
    } else if (lad.r == 1 && lad.s == 2) {
        out.upper_bound = std::sqrt(gamma_over_Gamma) * std::pow(k, 0.75);
    }
    return out;
}

}  // namespace dephcorr
