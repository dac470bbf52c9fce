#include "dephcorr/full_model.hpp"

#include <cmath>
#include <string>

#include "dephcorr/errors.hpp"

namespace dephcorr {

namespace {

CMatrix number_operator(Index n)
{
    CMatrix out = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) out(i, i) = static_cast<double>(i);
    return out;
}

// a|n> = sqrt(n)|n-1>, truncated to n levels.
CMatrix annihilation(Index n)
{
    CMatrix out = CMatrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) out(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
    return out;
}

// Unit-element lowering operator, (A)_{m,n} = delta_{m,n-1}.
CMatrix unit_lowering(Index n)
{
    CMatrix out = CMatrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) out(i, i + 1) = 1.0;
    return out;
}

CMatrix power(const CMatrix& m, int p)
{
    CMatrix out = CMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < p; ++i) out = out * m;
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix diagonal_exp(const CMatrix& h, double scale)
{
    CMatrix out = CMatrix::Zero(h.rows(), h.cols());
    for (Index i = 0; i < h.rows(); ++i) out(i, i) = std::exp(Complex(0.0, scale) * h(i, i));
    return out;
}

}  // namespace

Truncation truncation_for(int k, const InteractionSpec& inter)
{
    const int r = inter.charge_r();
    const int s = inter.charge_s();
    return {static_cast<Index>(k + 1), static_cast<Index>((r * k + s - 1) / s + 1)};
}

FullGenerator::FullGenerator(const OscillatorSpec& osc, const std::optional<BathSpec>& bath,
                             const InteractionSpec& inter, Index n1, Index n2)
    : n1_(n1), n2_(n2), bath_(bath)
{
    osc.validate();
    inter.validate();
    if (bath_) bath_->validate();
    if (n1 < 1 || n2 < 1) throw DimensionError("FullGenerator: truncations must be >= 1");

    const CMatrix id1 = CMatrix::Identity(n1, n1);
    const CMatrix id2 = CMatrix::Identity(n2, n2);
    h1_ = kron(osc.omega1 * number_operator(n1), id2);
    h2_ = kron(id1, osc.omega2 * number_operator(n2));

    CMatrix h12;
    if (inter.kind == InteractionKind::BandLimited) {
        const CMatrix a1 = unit_lowering(n1);
        const CMatrix a2 = unit_lowering(n2);
        h12 = kron(a1.adjoint(), a2) + kron(a1, a2.adjoint());
    } else {
        const CMatrix a1 = annihilation(n1);
        const CMatrix a2 = annihilation(n2);
        h12 = kron(power(a1.adjoint(), inter.s), power(a2, inter.r));
        h12 += h12.adjoint().eval();
    }
    h_total_ = h1_ + h2_ + inter.gamma * h12;

    if (bath_ && bath_->kind == BathKind::Poissonian) {
        u1_ = diagonal_exp(h1_, -bath_->phi);
        u2_ = diagonal_exp(h2_, -bath_->phi);
    }
}

void FullGenerator::apply(const CMatrix& rho, CMatrix& drho) const
{
    const Index n = n1_ * n2_;
    if (rho.rows() != n || rho.cols() != n) {
        throw DimensionError("FullGenerator: state is " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + ", expected " + std::to_string(n));
    }
    const Complex minus_i(0.0, -1.0);
    drho.noalias() = minus_i * (h_total_ * rho);
    drho.noalias() -= minus_i * (rho * h_total_);
    if (!bath_) return;

    auto dissipate = [&](const CMatrix& h, const CMatrix& u, double rate) {
        if (rate == 0.0) return;
        if (bath_->kind == BathKind::Gaussian) {
            const CMatrix inner = h * rho - rho * h;
            drho.noalias() -= rate * (h * inner - inner * h);
        } else {
            drho.noalias() -= rate * (rho - u * rho * u.adjoint());
        }
    };
    dissipate(h1_, u1_, bath_->gamma1);
    dissipate(h2_, u2_, bath_->gamma2);
}

CMatrix FullGenerator::operator()(const CMatrix& rho) const
{
    CMatrix out(rho.rows(), rho.cols());
    apply(rho, out);
    return out;
}

FullGenerator build_full_rhs(const OscillatorSpec& osc, const std::optional<BathSpec>& bath,
                             const InteractionSpec& inter, Index n1, Index n2)
{
    return FullGenerator(osc, bath, inter, n1, n2);
}

FullState embed(const LadderState& ls, Index n1, Index n2)
{
    const Ladder& lad = ls.ladder;
    for (Index i = 0; i < lad.size(); ++i) {
        if (lad.m_values[i] >= n1 || lad.l_values[i] >= n2) {
            throw DimensionError("embed: truncation too small for ladder entry (" +
                                 std::to_string(lad.m_values[i]) + "," +
                                 std::to_string(lad.l_values[i]) + ")");
        }
    }
    FullState fs{n1, n2, CMatrix::Zero(n1 * n2, n1 * n2)};
    for (Index i = 0; i < lad.size(); ++i) {
        const Index a = lad.m_values[i] * n2 + lad.l_values[i];
        for (Index j = 0; j < lad.size(); ++j) {
            const Index b = lad.m_values[j] * n2 + lad.l_values[j];
            fs.rho(a, b) = ls.rho(i, j);
        }
    }
    return fs;
}

Projection project(const FullState& fs, const Ladder& lad)
{
    Projection out{LadderState{lad, CMatrix::Zero(lad.size(), lad.size())}, 0.0};
    std::vector<Index> idx(static_cast<std::size_t>(lad.size()), -1);
    for (Index i = 0; i < lad.size(); ++i) {
        if (lad.m_values[i] < fs.n1 && lad.l_values[i] < fs.n2) {
            idx[i] = lad.m_values[i] * fs.n2 + lad.l_values[i];
        }
    }
    double block_population = 0.0;
    for (Index i = 0; i < lad.size(); ++i) {
        if (idx[i] < 0) continue;
        block_population += fs.rho(idx[i], idx[i]).real();
        for (Index j = 0; j < lad.size(); ++j) {
            if (idx[j] >= 0) out.state.rho(i, j) = fs.rho(idx[i], idx[j]);
        }
    }
    out.leakage = fs.rho.trace().real() - block_population;
    return out;
}

double charge_expectation(const FullState& fs, int r, int s)
{
    double acc = 0.0;
    for (Index i = 0; i < fs.n1; ++i) {
        for (Index j = 0; j < fs.n2; ++j) {
            const Index a = i * fs.n2 + j;
            acc += (r * i + s * j) * fs.rho(a, a).real();
        }
    }
    return acc;
}

}  // namespace dephcorr
