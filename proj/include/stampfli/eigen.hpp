#pragma once

#include <vector>

#include "stampfli/matrix.hpp"

namespace stampfli {

/// Spectral decomposition of a Hermitian matrix. Values ascending, vector
/// columns orthonormal; H * vectors.col(k) = values[k] * vectors.col(k).
struct HermEigen {
  std::vector<double> values;
  CMatrix vectors;
};

/// Cyclic Jacobi on the symmetrized input. Sweeps until the off-diagonal
/// Frobenius mass drops below 1e-14*||H||_F, cap 64 sweeps. Rejects inputs
/// that deviate from Hermitian by more than 1e-12*||H||_F.
HermEigen hermitian_eigen(const CMatrix& H);

/// Largest singular value, sqrt(lambda_max(A*A)). Deterministic.
double operator_norm(const CMatrix& A);

/// All n eigenvalues with multiplicity. n <= 3 uses closed-form quadratic or
/// cubic formulas with a guarded Newton polish; n > 3 uses Hessenberg
/// reduction plus Wilkinson-shifted QR (iteration cap 100*n).
std::vector<Complex> eigenvalues(const CMatrix& A);

struct SchurForm {
  CMatrix U;  // unitary
  CMatrix T;  // upper triangular, diag(T) follows the requested order
};

/// Unitary triangularization U*AU = T with diag(T) matching `order`, which
/// must be a permutation of eigenvalues(A) up to clustering noise.
SchurForm schur_triangularize(const CMatrix& A, const std::vector<Complex>& order);

struct SpectrumCluster {
  Complex center;    // multiplicity-weighted mean of members
  int multiplicity;
};

/// Single-linkage clustering with threshold threshold_rel*(1 + scale).
/// Returned clusters are sorted by (Re, Im) of the center.
std::vector<SpectrumCluster> cluster_spectrum(const std::vector<Complex>& eigs, double scale,
                                              double threshold_rel = 1e-7);

}  // namespace stampfli
