#include "stampfli/numrange.hpp"

#include <algorithm>
#include <cmath>

#include "stampfli/eigen.hpp"

namespace stampfli {

SupportSample support_function(const CMatrix& A, double theta) {
  const int n = A.size();
  if (n == 1) {
    const Complex a = A(0, 0);
    return {(std::polar(1.0, -theta) * a).real(), a};
  }
  const Complex e = std::polar(1.0, -theta);
  CMatrix H(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      H(i, j) = 0.5 * (e * A(i, j) + std::conj(e * A(j, i)));  // exactly Hermitian
  const HermEigen g = hermitian_eigen(H);
  CVector x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = g.vectors(i, n - 1);
  return {g.values.back(), quadratic_form(A, x)};
}

PolygonRegion nr_boundary(const CMatrix& A, int K) {
  if (K < 16) throw InputError("nr_boundary: need at least 16 angles");
  if (!A.all_finite()) throw InputError("nr_boundary: non-finite entries");
  PolygonRegion R;
  R.angles.resize(static_cast<size_t>(K));
  R.support.resize(static_cast<size_t>(K));
  R.witnesses.resize(static_cast<size_t>(K));
  const double step = 2.0 * M_PI / K;
  for (int k = 0; k < K; ++k) {
    const double th = step * k;
    const SupportSample s = support_function(A, th);
    R.angles[static_cast<size_t>(k)] = th;
    R.support[static_cast<size_t>(k)] = s.value;
    R.witnesses[static_cast<size_t>(k)] = s.witness;
  }
  return R;
}

CompressionResult compress_to_top(const CMatrix& A, double tau_top) {
  if (!A.all_finite()) throw InputError("compress_to_top: non-finite entries");
  if (A.frobenius_norm() == 0.0)
    throw InputError("compress_to_top: zero matrix has no top eigenspace direction");
  const int n = A.size();
  const HermEigen g = hermitian_eigen(A.adjoint() * A);
  const double top = g.values.back();
  int d = 0;
  for (int k = n - 1; k >= 0; --k) {
    if (g.values[static_cast<size_t>(k)] >= top - tau_top * top)
      ++d;
    else
      break;
  }
  CMatrix B(d);
  // B = P* A P with P the top-d eigenvector columns (ascending order puts them last)
  std::vector<CVector> cols(static_cast<size_t>(d));
  for (int c = 0; c < d; ++c) {
    CVector p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = g.vectors(i, n - d + c);
    cols[static_cast<size_t>(c)] = std::move(p);
  }
  for (int r = 0; r < d; ++r) {
    const CVector Ap = matvec(A, cols[static_cast<size_t>(r)]);
    for (int c = 0; c < d; ++c) B(c, r) = inner(cols[static_cast<size_t>(c)], Ap);
  }
  CompressionResult out;
  out.B = std::move(B);
  out.isometry = CMatrix(n);
  for (int c = 0; c < d; ++c)
    for (int i = 0; i < n; ++i) out.isometry(i, c) = cols[static_cast<size_t>(c)][static_cast<size_t>(i)];
  out.subspace_dim = d;
  out.top_value = top;
  return out;
}

PolygonRegion max_numerical_range(const CMatrix& A, int K, double tau_top) {
  const CompressionResult c = compress_to_top(A, tau_top);
  return nr_boundary(c.B, K);
}

ZeroMembership contains_zero(const PolygonRegion& R, double scale) {
  double margin = R.support.empty() ? 0.0 : R.support.front();
  for (double s : R.support) margin = std::min(margin, s);
  return {margin >= -1e-7 * scale, margin};
}

}  // namespace stampfli
