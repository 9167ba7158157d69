#pragma once

#include <vector>

#include "stampfli/matrix.hpp"

namespace stampfli {

/// Support-function sampling of a convex region in C. angles is a strictly
/// increasing uniform grid on [0, 2pi); support[k] = max Re(e^{-i angle} z)
/// over the region; witnesses[k] attains it.
struct PolygonRegion {
  std::vector<double> angles;
  std::vector<double> support;
  std::vector<Complex> witnesses;
};

struct SupportSample {
  double value;
  Complex witness;
};

/// value = lambda_max((e^{-i theta} A + e^{i theta} A*) / 2), witness = <Ax,x>
/// for the corresponding top unit eigenvector x.
SupportSample support_function(const CMatrix& A, double theta);

/// K-angle outer approximation of cl W(A); witnesses lie in W(A). K >= 16.
PolygonRegion nr_boundary(const CMatrix& A, int K = 720);

struct CompressionResult {
  CMatrix B;         // compression of A onto the top eigenspace of A*A
  CMatrix isometry;  // n x n, first subspace_dim columns span the eigenspace
  int subspace_dim;
  double top_value;  // max eigenvalue of A*A
};

/// Compression of A onto the eigenspace of A*A for eigenvalues within
/// tau_top*top of the maximum. Rejects A = 0 (the direction of W0 is
/// undefined there).
CompressionResult compress_to_top(const CMatrix& A, double tau_top = 1e-8);

/// W0(A) = W(B) with B the top compression; evaluated as nr_boundary(B, K).
PolygonRegion max_numerical_range(const CMatrix& A, int K = 720, double tau_top = 1e-8);

struct ZeroMembership {
  bool contains;
  double margin;  // min over angles of the support values
};

/// A convex set contains 0 iff its support function is everywhere
/// nonnegative; tolerance tau_m = 1e-7 relative to scale.
ZeroMembership contains_zero(const PolygonRegion& R, double scale);

}  // namespace stampfli
