#include "dephcorr/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dephcorr/errors.hpp"

namespace dephcorr {

namespace {

void require_square(const CMatrix& m, const char* what)
{
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

CMatrix cmatrix_from_row_major(Index rows, Index cols, std::span<const Complex> entries)
{
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != entries.size()) {
        throw DimensionError("cmatrix_from_row_major: " + std::to_string(entries.size()) +
                             " entries cannot fill a " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " matrix");
    }
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            const Complex z = entries[static_cast<std::size_t>(i * cols + j)];
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw ParameterError("cmatrix_from_row_major: non-finite entry at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
            }
            m(i, j) = z;
        }
    }
    return m;
}

double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const CMatrix& m)
{
    require_square(m, "hermiticity_defect");
    return max_abs(m - m.adjoint());
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m)
{
    require_square(m, "hermitian_eigenvalues");
    if (m.size() == 0) return {};
    const double scale = max_abs(m);
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance * scale) {
        throw SymmetryError("hermitian_eigenvalues: asymmetry " + std::to_string(defect) +
                            " exceeds tolerance relative to norm " + std::to_string(scale));
    }
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> singular_values(const CMatrix& m)
{
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<CMatrix> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double trace_norm(const CMatrix& m)
{
    require_square(m, "trace_norm");
    const auto sv = singular_values(m);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

}  // namespace dephcorr
