#pragma once

// Small dense complex-matrix kernel. Everything is a pure function of its
// arguments, safe to call concurrently.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dephcorr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Relative tolerance for treating a nearly-Hermitian matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

/// Builds a matrix from row-major entries. Throws DimensionError on a size
/// mismatch and ParameterError on NaN/Inf entries.
CMatrix cmatrix_from_row_major(Index rows, Index cols, std::span<const Complex> entries);

/// Largest |m_ij|.
double max_abs(const CMatrix& m);

/// max |m - m^dagger|, zero for Hermitian input.
double hermiticity_defect(const CMatrix& m);

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// before the solve when its asymmetry is within kHermitianTolerance * max_abs(m).
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// Singular values, descending.
std::vector<double> singular_values(const CMatrix& m);

/// Tr sqrt(m^dagger m) of a square matrix.
double trace_norm(const CMatrix& m);

}  // namespace dephcorr
