#include "dephcorr/evolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dephcorr/errors.hpp"

namespace dephcorr {

void TimeGrid::validate() const
{
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("TimeGrid: t_end must be > 0");
    if (samples < 2) throw ParameterError("TimeGrid: need at least 2 samples");
    if (!(max_step > 0.0)) throw ParameterError("TimeGrid: max_step must be > 0");
}

std::vector<double> TimeGrid::times() const
{
    validate();
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) out[i] = t_end * i / (samples - 1);
    out.back() = t_end;
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double error_norm(const CMatrix& err, const CMatrix& y0, const CMatrix& y1, double atol, double rtol)
{
    double worst = 0.0;
    for (Index j = 0; j < err.cols(); ++j) {
        for (Index i = 0; i < err.rows(); ++i) {
            const double scale = atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            worst = std::max(worst, std::abs(err(i, j)) / scale);
        }
    }
    return worst;
}

CMatrix checked_sample(const CMatrix& y, double t, double drift_tol)
{
    const Complex tr = y.trace();
    const double trace_drift = std::abs(tr - Complex(1.0));
    const double herm_drift = hermiticity_defect(y);
    if (!(trace_drift < drift_tol)) {
        throw IntegrityError("trace drifted by " + std::to_string(trace_drift), t);
    }
    if (!(herm_drift < drift_tol)) {
        throw IntegrityError("Hermiticity drifted by " + std::to_string(herm_drift), t);
    }
    CMatrix out = 0.5 * (y + y.adjoint());
    out /= out.trace().real();
    return out;
}

}  // namespace

Trajectory<CMatrix> integrate(const MatrixRhs& rhs, const CMatrix& initial, const TimeGrid& grid,
                              const IntegratorOptions& opts)
{
    const std::vector<double> times = grid.times();
    Trajectory<CMatrix> out;
    out.times = times;
    out.states.reserve(times.size());
    out.states.push_back(checked_sample(initial, 0.0, opts.drift_tolerance));

    const Index rows = initial.rows();
    const Index cols = initial.cols();
    CMatrix y = initial;
    CMatrix y_new(rows, cols), tmp(rows, cols), err(rows, cols);
    std::array<CMatrix, 7> k;
    for (auto& m : k) m.resize(rows, cols);

    rhs(y, k[0]);

    // Initial step from the scale of the state and its derivative.
    double h;
    {
        const double y_scale = std::max(max_abs(y), 1e-300);
        const double f_scale = max_abs(k[0]);
        h = f_scale > 0.0 ? 0.01 * y_scale / f_scale : grid.max_step;
        h = std::min({h, grid.max_step, grid.t_end});
        h = std::max(h, 1e-6 * grid.t_end);
    }

    double t = 0.0;
    std::size_t next = 1;
    std::size_t steps = 0;
    bool last_rejected = false;

    while (next < times.size()) {
        if (++steps > opts.max_steps) throw IntegrationError("step budget exhausted", t);
        h = std::min(h, grid.t_end - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow", t);

        tmp = y + h * (a21 * k[0]);
        rhs(tmp, k[1]);
        tmp = y + h * (a31 * k[0] + a32 * k[1]);
        rhs(tmp, k[2]);
        tmp = y + h * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
        rhs(tmp, k[3]);
        tmp = y + h * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
        rhs(tmp, k[4]);
        tmp = y + h * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
        rhs(tmp, k[5]);
        y_new = y + h * (a71 * k[0] + a73 * k[2] + a74 * k[3] + a75 * k[4] + a76 * k[5]);
        rhs(y_new, k[6]);
        err = h * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);

        const double en = error_norm(err, y, y_new, opts.atol, opts.rtol);
        if (!std::isfinite(en)) throw IntegrationError("non-finite error estimate", t);

        if (en <= 1.0) {
            const double t_new = (grid.t_end - (t + h) < 1e-12 * grid.t_end) ? grid.t_end : t + h;
            // Emit every sample inside (t, t_new] from the continuous extension.
            if (next < times.size() && times[next] <= t_new) {
                const CMatrix ydiff = y_new - y;
                const CMatrix bspl = h * k[0] - ydiff;
                const CMatrix r4 = ydiff - h * k[6] - bspl;
                const CMatrix r5 =
                    h * (d1 * k[0] + d3 * k[2] + d4 * k[3] + d5 * k[4] + d6 * k[5] + d7 * k[6]);
                while (next < times.size() && times[next] <= t_new) {
                    const double theta = std::clamp((times[next] - t) / h, 0.0, 1.0);
                    const double theta1 = 1.0 - theta;
                    CMatrix ys = y + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                    if (next + 1 == times.size() && t_new == grid.t_end) ys = y_new;
                    out.states.push_back(checked_sample(ys, times[next], opts.drift_tolerance));
                    ++next;
                }
            }
            t = t_new;
            y.swap(y_new);
            k[0].swap(k[6]);  // FSAL

            double factor = en > 0.0 ? 0.9 * std::pow(en, -0.2) : 5.0;
            factor = std::clamp(factor, 0.2, 5.0);
            if (last_rejected) factor = std::min(factor, 1.0);
            h = std::min(h * factor, grid.max_step);
            last_rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
        }
    }
    return out;
}

void ladder_rhs(const LadderGenerators& gen, const CMatrix& rho, CMatrix& drho)
{
    if (rho.rows() != gen.h_eff.rows() || rho.cols() != gen.h_eff.cols()) {
        throw DimensionError("ladder_rhs: state shape does not match generators");
    }
    const Complex minus_i(0.0, -1.0);
    drho.noalias() = minus_i * (gen.h_eff * rho);
    drho.noalias() -= minus_i * (rho * gen.h_eff);
    drho -= gen.deph.cwiseProduct(rho);
}

CMatrix ladder_rhs(const LadderGenerators& gen, const CMatrix& rho)
{
    CMatrix out(rho.rows(), rho.cols());
    ladder_rhs(gen, rho, out);
    return out;
}

Trajectory<LadderState> integrate_ladder(const LadderGenerators& gen, const LadderState& initial,
                                         const TimeGrid& grid, const IntegratorOptions& opts)
{
    auto raw = integrate([&gen](const CMatrix& r, CMatrix& d) { ladder_rhs(gen, r, d); },
                         initial.rho, grid, opts);
    Trajectory<LadderState> out;
    out.times = std::move(raw.times);
    out.states.reserve(raw.states.size());
    for (auto& s : raw.states) out.states.push_back(LadderState{initial.ladder, std::move(s)});
    return out;
}

Trajectory<FullState> integrate_full(const FullGenerator& gen, const FullState& initial,
                                     const TimeGrid& grid, const IntegratorOptions& opts)
{
    if (initial.n1 != gen.n1() || initial.n2 != gen.n2()) {
        throw DimensionError("integrate_full: state truncation does not match generator");
    }
    auto raw = integrate([&gen](const CMatrix& r, CMatrix& d) { gen.apply(r, d); }, initial.rho,
                         grid, opts);
    Trajectory<FullState> out;
    out.times = std::move(raw.times);
    out.states.reserve(raw.states.size());
    for (auto& s : raw.states) out.states.push_back(FullState{initial.n1, initial.n2, std::move(s)});
    return out;
}

}  // namespace dephcorr
