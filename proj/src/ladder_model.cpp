#include "dephcorr/ladder_model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "dephcorr/errors.hpp"

namespace dephcorr {

void BathSpec::validate() const
{
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0)) {
        throw ParameterError("bath rates must be nonnegative");
    }
    if (!std::isfinite(gamma1) || !std::isfinite(gamma2) || !std::isfinite(phi)) {
        throw ParameterError("bath parameters must be finite");
    }
}

void InteractionSpec::validate() const
{
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw ParameterError("coupling gamma must be finite and nonnegative");
    }
    if (r < 1 || s < 1) {
        throw ParameterError("interaction exponents r, s must be >= 1");
    }
}

void OscillatorSpec::validate() const
{
    if (!(omega1 > 0.0) || !(omega2 > 0.0) || !std::isfinite(omega1) || !std::isfinite(omega2)) {
        throw ParameterError("oscillator frequencies must be positive and finite");
    }
}

Index Ladder::position_of(int m) const
{
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        if (m_values[i] == m) return static_cast<Index>(i);
    }
    return -1;
}

Ladder build_ladder(int k, const InteractionSpec& inter)
{
    if (k < 1) throw ParameterError("build_ladder: k must be >= 1");
    inter.validate();

    Ladder lad;
    lad.k = k;
    lad.kind = inter.kind;
    lad.r = inter.charge_r();
    lad.s = inter.charge_s();

    // The chain reachable from |k 0> moves m down by s and l up by r per hop.
    const int first = k % lad.s;
    for (int m = first; m <= k; m += lad.s) {
        const int l = lad.r * (k - m) / lad.s;
        lad.m_values.push_back(m);
        lad.l_values.push_back(l);
    }
    if (lad.m_values.empty() || lad.m_values.back() != k || lad.l_values.back() != 0) {
        throw DimensionError("build_ladder: ladder does not contain |k 0>");
    }
    return lad;
}

double nonlinear_matrix_element(int m, int l, int r, int s)
{
    if (l < r) return 0.0;
    std::uint64_t prod = 1;
    bool overflow = false;
    auto mul = [&](std::uint64_t f) {
        if (prod > std::numeric_limits<std::uint64_t>::max() / f) overflow = true;
        else prod *= f;
    };
    for (int p = 1; p <= s && !overflow; ++p) mul(static_cast<std::uint64_t>(m + p));
    for (int q = 0; q < r && !overflow; ++q) mul(static_cast<std::uint64_t>(l - q));
    if (!overflow) return std::sqrt(static_cast<double>(prod));

    long double log_prod = 0.0L;
    for (int p = 1; p <= s; ++p) log_prod += std::log(static_cast<long double>(m + p));
    for (int q = 0; q < r; ++q) log_prod += std::log(static_cast<long double>(l - q));
    return static_cast<double>(std::exp(0.5L * log_prod));
}

LadderGenerators build_generators(const Ladder& lad, const OscillatorSpec& osc,
                                  const std::optional<BathSpec>& bath,
                                  const InteractionSpec& inter)
{
    osc.validate();
    inter.validate();
    if (bath) bath->validate();
    if (inter.kind != lad.kind || inter.charge_r() != lad.r || inter.charge_s() != lad.s) {
        throw UnsupportedScenario("build_generators: ladder was built for a different interaction");
    }

    const Index d = lad.size();
    LadderGenerators gen{CMatrix::Zero(d, d), CMatrix::Zero(d, d)};

    for (Index i = 0; i < d; ++i) {
        gen.h_eff(i, i) = osc.omega1 * lad.m_values[i] + osc.omega2 * lad.l_values[i];
    }
    // Entry i+1 has m larger by s and l smaller by r than entry i.
    for (Index i = 0; i + 1 < d; ++i) {
        double element = 1.0;
        if (inter.kind == InteractionKind::Nonlinear) {
            element = nonlinear_matrix_element(lad.m_values[i], lad.l_values[i], lad.r, lad.s);
        }
        gen.h_eff(i + 1, i) = inter.gamma * element;
        gen.h_eff(i, i + 1) = inter.gamma * element;
    }

    if (!bath) return gen;

    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            if (i == j) continue;
            const double dm = lad.m_values[i] - lad.m_values[j];
            const double dl = lad.l_values[i] - lad.l_values[j];
            if (bath->kind == BathKind::Gaussian) {
                gen.deph(i, j) = bath->gamma1 * osc.omega1 * osc.omega1 * dm * dm +
                                 bath->gamma2 * osc.omega2 * osc.omega2 * dl * dl;
            } else {
                const Complex kick1 = std::polar(1.0, -osc.omega1 * dm * bath->phi);
                const Complex kick2 = std::polar(1.0, -osc.omega2 * dl * bath->phi);
                gen.deph(i, j) = bath->gamma1 * (1.0 - kick1) + bath->gamma2 * (1.0 - kick2);
            }
        }
    }
    return gen;
}

LadderState initial_state(const Ladder& lad)
{
    const Index pos = lad.position_of(lad.k);
    if (pos < 0 || lad.l_values[pos] != 0) {
        throw DimensionError("initial_state: ladder does not contain |k 0>");
    }
    LadderState st{lad, CMatrix::Zero(lad.size(), lad.size())};
    st.rho(pos, pos) = 1.0;
    return st;
}

LadderState maximally_correlated_state(const Ladder& lad)
{
    if (lad.kind != InteractionKind::BandLimited) {
        throw UnsupportedScenario("maximally_correlated_state requires a BandLimited ladder");
    }
    const Index d = lad.size();
    return LadderState{lad, CMatrix::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0))};
}

void validate_state(const LadderState& state, double tol)
{
    const CMatrix& rho = state.rho;
    if (rho.rows() != state.ladder.size() || rho.cols() != state.ladder.size()) {
        throw DimensionError("validate_state: rho does not match ladder size");
    }
    if (hermiticity_defect(rho) > tol) throw ParameterError("validate_state: rho is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > tol) throw ParameterError("validate_state: trace is not 1");
    const CMatrix sym = 0.5 * (rho + rho.adjoint());
    if (hermitian_eigenvalues(sym).front() < -tol) {
        throw ParameterError("validate_state: rho has a negative eigenvalue");
    }
}

}  // namespace dephcorr
