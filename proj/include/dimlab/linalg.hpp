#pragma once

#include <vector>

#include "dimlab/matrix.hpp"

namespace dimlab {

/// Eigenvalues sorted non-increasing; `vectors` holds matching orthonormal columns
/// when requested (empty otherwise).
struct EigenSpectrum {
  std::vector<double> values;
  Matrix vectors;
};

/// Full spectrum of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops to 1e-14 * ||A||_F; gives up
/// (ConvergenceError) after 100 sweeps. Rejects non-finite or non-symmetric input
/// (relative tolerance 1e-12 against the largest entry).
EigenSpectrum sym_eigen(const Matrix& a, bool want_vectors = true);

/// Eigenvalues only (non-increasing), by Householder tridiagonalization and
/// implicit QL. Much cheaper than sym_eigen for the many small covariance
/// matrices the local estimators decompose. Same input validation.
std::vector<double> sym_eigenvalues(const Matrix& a);

/// Clamp eigenvalues that are negative by rounding to exactly zero. Covariance
/// spectra are PSD by construction.
void clamp_nonnegative(EigenSpectrum& spectrum);

/// Orthogonal factor of a Householder QR decomposition of a square matrix, with
/// columns sign-fixed so the triangular factor has a non-negative diagonal.
Matrix orthogonal_factor(const Matrix& a);

/// Singular values (non-increasing) by one-sided Jacobi on the columns.
std::vector<double> singular_values(const Matrix& a);

}  // namespace dimlab
