#include "stampfli/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "stampfli/eigen.hpp"

namespace stampfli {

Complex st_2x2(const CMatrix& A) {
  if (A.size() != 2) throw InputError("st_2x2: matrix must be 2x2");
  return trace(A) / 2.0;
}

double norm_2x2_shifted(Complex lam1, Complex lam2, double c, Complex lambda) {
  const double m1 = std::norm(lam1 - lambda);
  const double m2 = std::norm(lam2 - lambda);
  const double c2 = c * c;
  const double root = std::sqrt((m1 - m2) * (m1 - m2) + c2 * c2 + 2.0 * c2 * (m1 + m2));
  return std::sqrt(0.5 * (m1 + m2 + c2 + root));
}

double norm_2x2(const CMatrix& A, Complex lambda) {
  if (A.size() != 2) throw InputError("norm_2x2: matrix must be 2x2");
  const SchurForm s = schur_triangularize(A, eigenvalues(A));
  return norm_2x2_shifted(s.T(0, 0), s.T(1, 1), std::abs(s.T(0, 1)), lambda);
}

std::optional<Complex> st_block_scalar(const CMatrix& A, int n1, int n2, double tol) {
  const int n = A.size();
  if (n1 < 1 || n2 < 1 || n1 + n2 != n)
    throw InputError("st_block_scalar: invalid partition");
  const double nu = A.frobenius_norm();
  if (nu == 0.0) return Complex(0.0);

  Complex a1 = 0.0, a2 = 0.0;
  for (int i = 0; i < n1; ++i) a1 += A(i, i);
  for (int i = n1; i < n; ++i) a2 += A(i, i);
  a1 /= n1;
  a2 /= n2;

  // diagonal blocks must be scalar (checks at unit Frobenius scale)
  double dev = 0.0;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) dev = std::max(dev, std::abs(A(i, j) - (i == j ? a1 : 0.0)));
  for (int i = n1; i < n; ++i)
    for (int j = n1; j < n; ++j) dev = std::max(dev, std::abs(A(i, j) - (i == j ? a2 : 0.0)));
  if (dev > tol * nu) return std::nullopt;

  const Complex st = 0.5 * (a1 + a2);
  if (std::abs(a1 - a2) <= tol * nu) return st;  // same scalar: no conditions on X, Y

  // normality of X Y* and Y* X, on the unit-scale copy
  CMatrix M1(n1), M2(n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n2; ++k) s += A(i, n1 + k) * A(n1 + k, j) / (nu * nu);
      M1(i, j) = s;
    }
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n1; ++k) s += A(n1 + i, k) * A(k, n1 + j) / (nu * nu);
      M2(i, j) = s;
    }
  const auto commutator_norm = [](const CMatrix& M) {
    const CMatrix C = M * M.adjoint() - M.adjoint() * M;
    return C.frobenius_norm();
  };
  if (commutator_norm(M1) > tol || commutator_norm(M2) > tol) return std::nullopt;
  return st;
}

QuadraticFit fit_quadratic(const CMatrix& A, double tol) {
  const int n = A.size();
  const CMatrix A2 = A * A;
  const double g11 = A.frobenius_norm() * A.frobenius_norm();
  const Complex trA = trace(A);
  const Complex g12 = std::conj(trA);
  const Complex g21 = trA;
  const double g22 = static_cast<double>(n);
  Complex r1 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r1 -= std::conj(A(i, j)) * A2(i, j);
  const Complex r2 = -trace(A2);

  const double detg = g11 * g22 - std::norm(trA);
  Complex p, q;
  if (detg <= 1e-14 * g22 * std::max(g11, 1e-300)) {
    // A is (numerically) scalar: A = cI, so (A - cI)^2 = 0
    const Complex c = trA / static_cast<double>(n);
    p = -2.0 * c;
    q = c * c;
  } else {
    p = (g22 * r1 - g12 * r2) / detg;
    q = (g11 * r2 - g21 * r1) / detg;
  }
  CMatrix R = A2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) += p * A(i, j) + (i == j ? q : Complex(0.0));
  const double residual = R.frobenius_norm();
  const bool accepted = residual <= tol * std::max(g11, 1e-300);
  return {p, q, residual, accepted};
}

std::optional<Complex> st_quadratic(const CMatrix& A, double tol) {
  const QuadraticFit fit = fit_quadratic(A, tol);
  if (!fit.accepted) return std::nullopt;
  return -fit.p / 2.0;
}

std::optional<Complex> st_tridiagonal_constant(const CMatrix& A, double tol) {
  const int n = A.size();
  const double nu = A.frobenius_norm();
  if (nu == 0.0) return Complex(0.0);
  Complex a = trace(A) / static_cast<double>(n);
  for (int i = 0; i < n; ++i)
    if (std::abs(A(i, i) - a) > tol * nu) return std::nullopt;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || ((i - j) % 2) != 0) continue;
      if (std::abs(A(i, j)) > tol * nu) return std::nullopt;
    }
  return a;
}

std::optional<TriangularForm3> canonical_3x3(const CMatrix& A, double cluster_tol_rel) {
  if (A.size() != 3) throw InputError("canonical_3x3: matrix must be 3x3");
  const std::vector<Complex> eigs = eigenvalues(A);
  const double scale = A.frobenius_norm();
  const std::vector<SpectrumCluster> clusters = cluster_spectrum(eigs, scale, cluster_tol_rel);
  TriangularForm3 F;
  std::vector<Complex> order;
  if (clusters.size() == 1) {
    F.singleton = true;
    F.mu = F.lam = clusters[0].center;
    order = {F.mu, F.mu, F.mu};
  } else if (clusters.size() == 2) {
    F.singleton = false;
    const SpectrumCluster& rep = clusters[0].multiplicity == 2 ? clusters[0] : clusters[1];
    const SpectrumCluster& simple = clusters[0].multiplicity == 2 ? clusters[1] : clusters[0];
    F.mu = rep.center;
    F.lam = simple.center;
    order = {F.mu, F.mu, F.lam};
  } else {
    return std::nullopt;  // three distinct eigenvalues: out of scope for this form
  }
  const SchurForm s = schur_triangularize(A, order);
  CMatrix T = s.T;
  CMatrix U = s.U;
  // diagonal unitary making entries (1,2) and (2,3) real nonnegative
  const Complex t12 = T(0, 1);
  const Complex d2 = (std::abs(t12) > 0.0) ? std::conj(t12) / std::abs(t12) : Complex(1.0);
  const Complex e23 = std::conj(d2) * T(1, 2);
  const Complex d3 = (std::abs(e23) > 0.0) ? std::conj(e23) / std::abs(e23) : Complex(1.0);
  const Complex d[3] = {1.0, d2, d3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T(i, j) = std::conj(d[i]) * T(i, j) * d[j];
      U(i, j) = U(i, j) * d[j];
    }
  T(0, 1) = std::abs(t12);
  T(1, 2) = std::abs(e23);
  F.u = T(0, 1).real();
  F.w = T(1, 2).real();
  F.v = std::abs(T(0, 2));
  F.rho = std::abs(F.lam - F.mu);
  const Complex prod = T(0, 1) * std::conj(T(0, 2)) * T(1, 2);
  F.phi = (F.u * F.v * F.w > 0.0) ? std::arg(prod) : 0.0;
  F.U = std::move(U);
  F.T = std::move(T);
  return F;
}

namespace {

double offdiag_scale(const TriangularForm3& F) {
  return std::sqrt(F.u * F.u + F.v * F.v + F.w * F.w);
}

}  // namespace

std::optional<Complex> st_singleton_xyz0(const TriangularForm3& F) {
  const double s = offdiag_scale(F);
  if (F.u * F.v * F.w <= 1e-9 * s * s * s) return F.lam;
  return std::nullopt;
}

RealPolynomial build_PA(double u, double v, double w) {
  if (!(u > 0.0) || !(v > 0.0) || !(w > 0.0))
    throw InputError("build_PA: parameters must be positive");
  const double u2 = u * u, v2 = v * v, w2 = w * w;
  const double c5 = 4.0 * (u2 + v2) *
                    (u2 * u2 * u2 + 3.0 * u2 * u2 * (v2 + w2) + std::pow(v2 + w2, 3) +
                     3.0 * u2 * (v2 * v2 - 7.0 * v2 * w2 + w2 * w2));
  const double c4 = 4.0 * u * v * w *
                    (4.0 * u2 * u2 * u2 + 6.0 * u2 * u2 * (2.0 * v2 - 3.0 * w2) +
                     (v2 + w2) * (v2 + w2) * (4.0 * v2 + w2) +
                     6.0 * u2 * (2.0 * v2 * v2 - 6.0 * v2 * w2 + w2 * w2));
  const double c3 = 3.0 * u2 * w2 *
                    (2.0 * u2 * u2 * u2 + 7.0 * v2 * v2 * v2 + 13.0 * v2 * v2 * w2 +
                     6.0 * v2 * w2 * w2 + u2 * u2 * (11.0 * v2 - 5.0 * w2) +
                     2.0 * u2 * (8.0 * v2 * v2 - 14.0 * v2 * w2 + w2 * w2));
  const double c2 = u2 * u * v * w2 * w *
                    (9.0 * u2 * u2 + 7.0 * v2 * v2 + 18.0 * v2 * w2 + 6.0 * w2 * w2 +
                     4.0 * u2 * (4.0 * v2 - 3.0 * w2));
  const double c1 = u2 * u2 * v2 * w2 * w2 * (-5.0 * v2 + 3.0 * w2);
  const double c0 = -3.0 * u2 * u2 * u * v2 * v * w2 * w2 * w;
  return RealPolynomial({c0, c1, c2, c3, c4, c5});
}

double resultant_res(double x, double y, double z) {
  const double a1 = 2.0 * x;
  const double a2 = -3.0 * x * z;
  const double a3 = x * z * z;
  const double a4 = 2.0 * y - x * z;
  const double b1 = 4.0 * x * x + y * y + z * z - x * y * z;
  const double b2 = -(z * z * z + x * x * z + y * y * z + 6.0 * x * y - x * y * z * z);
  const double b3 = x * x + 4.0 * y * y + z * z - x * y * z;
  double M[5][5] = {{a1, 0, b1, 0, 0},
                    {a2, a1, b2, b1, 0},
                    {a3, a2, b3, b2, b1},
                    {a4, a3, 0, b3, b2},
                    {0, a4, 0, 0, b3}};
  // LU with partial pivoting
  double d = 1.0;
  for (int k = 0; k < 5; ++k) {
    int piv = k;
    for (int i = k + 1; i < 5; ++i)
      if (std::abs(M[i][k]) > std::abs(M[piv][k])) piv = i;
    if (M[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(M[piv], M[k]);
      d = -d;
    }
    d *= M[k][k];
    for (int i = k + 1; i < 5; ++i) {
      const double f = M[i][k] / M[k][k];
      for (int j = k; j < 5; ++j) M[i][j] -= f * M[k][j];
    }
  }
  return d;
}

double st_toe_abs(double u, double v) {
  if (!(u > 0.0) || v < 0.0) throw InputError("st_toe_abs: need u > 0 and v >= 0");
  const double threshold = 2.0 - std::sqrt(3.0);  // sqrt(7 - 4 sqrt(3)) without cancellation
  if (v / u <= threshold) return u * u * v / (u * u - v * v);
  return u * u * (2.0 * std::sqrt(6.0 * u * u + v * v) - v) / (2.0 * (8.0 * u * u + v * v));
}

StampfliResult st_3x3_singleton(const CMatrix& A, double tol) {
  const std::optional<TriangularForm3> Fo = canonical_3x3(A);
  if (!Fo || !Fo->singleton)
    throw InputError("st_3x3_singleton: spectrum does not cluster to a single point");
  const TriangularForm3& F = *Fo;
  StampfliResult res;
  const double cert_scale = 1.0 + A.frobenius_norm();

  if (const std::optional<Complex> lam = st_singleton_xyz0(F)) {
    res.point = *lam;
    res.method = StMethod::singleton3_xyz0;
    res.min_norm = operator_norm(shift(A, res.point));
    res.certificate_margin = certificate(A, res.point).margin;
    return res;
  }

  const double s3 = offdiag_scale(F);
  if (std::abs(F.u - F.w) <= 1e-9 * s3) {
    const double r = st_toe_abs(0.5 * (F.u + F.w), F.v);
    res.point = F.lam + std::polar(r, F.phi);
    res.method = StMethod::singleton3_toe;
    res.min_norm = operator_norm(shift(A, res.point));
    res.certificate_margin = certificate(A, res.point).margin;
    return res;
  }

  const RealPolynomial P = build_PA(F.u, F.v, F.w);
  res.candidate_roots = positive_roots(P);
  for (size_t k = 0; k < res.candidate_roots.size(); ++k) {
    const Complex cand = F.lam + std::polar(res.candidate_roots[k], F.phi);
    const double margin = certificate(A, cand).margin;
    if (margin >= -1e-6 * cert_scale) {
      res.point = cand;
      res.method = StMethod::singleton3_general;
      res.selected_root = static_cast<int>(k);
      res.root_warning = k > 0;
      if (res.root_warning)
        std::cerr << "st_3x3_singleton: membership passed at a non-smallest root (index " << k
                  << ")\n";
      res.min_norm = operator_norm(shift(A, res.point));
      res.certificate_margin = margin;
      return res;
    }
  }

  // no root passed the membership test: fall back to the oracle and flag it
  StampfliResult fb = st_oracle(A, std::max(tol, 1e-12));
  fb.method = StMethod::fallback;
  fb.candidate_roots = res.candidate_roots;
  return fb;
}

bool multiple_eig_st_criterion(const TriangularForm3& F, double tol) {
  const double s = offdiag_scale(F) + F.rho;
  if (F.rho == 0.0 || F.singleton) return F.u * F.v * F.w <= 1e-9 * std::pow(offdiag_scale(F), 3);
  const double s2 = s * s;
  const double s4 = s2 * s2;
  // conj(x) y conj(z) (lam - mu), with x = u and z = w real in the canonical form
  const Complex y = F.T(0, 2);
  const Complex g = F.u * y * F.w * (F.lam - F.mu);
  if (std::abs(g.imag()) > tol * s4) return false;
  if (g.real() > tol * s4) return false;
  const double lhs = std::abs(F.rho * F.v - F.u * F.w);
  const double rhs2 = (F.u * F.u - F.rho * F.rho) * (F.w * F.w + F.rho * F.rho);
  if (lhs > std::sqrt(std::max(0.0, rhs2)) + tol * s2) return false;
  const double eq = F.v * F.w * std::pow(F.rho, 3) + F.u * F.v * F.v * F.rho * F.rho +
                    F.v * F.w * (F.v * F.v + F.w * F.w - F.u * F.u) * F.rho -
                    F.u * F.v * F.v * F.w * F.w;
  return std::abs(eq) <= tol * s4;
}

bool multiple_eig_st_criterion(const CMatrix& A, double tol) {
  if (A.size() != 3) throw InputError("multiple_eig_st_criterion: matrix must be 3x3");
  const std::optional<TriangularForm3> F = canonical_3x3(A);
  if (!F) throw InputError("multiple_eig_st_criterion: spectrum has three distinct points");
  return multiple_eig_st_criterion(*F, tol);
}

namespace {

// contiguous 2-partition candidates from runs of (approximately) constant diagonal
std::optional<StampfliResult> try_block_scalar(const CMatrix& A, double tol) {
  const int n = A.size();
  if (n < 2) return std::nullopt;
  const double nu = A.frobenius_norm();
  std::vector<int> breaks;  // i such that diag entries i-1 and i differ
  for (int i = 1; i < n; ++i)
    if (std::abs(A(i, i) - A(i - 1, i - 1)) > tol * nu) breaks.push_back(i);
  std::vector<int> candidates;
  if (breaks.empty()) {
    for (int n1 = 1; n1 < n; ++n1) candidates.push_back(n1);
  } else if (breaks.size() == 1) {
    candidates.push_back(breaks[0]);
  } else {
    return std::nullopt;
  }
  for (int n1 : candidates) {
    if (const std::optional<Complex> st = st_block_scalar(A, n1, n - n1, tol)) {
      StampfliResult r;
      r.point = *st;
      r.method = StMethod::block_scalar;
      return r;
    }
  }
  return std::nullopt;
}

std::optional<StampfliResult> dispatch_closed_only(const CMatrix& A, double tol) {
  const int n = A.size();
  StampfliResult res;
  bool have = false;
  if (n == 2) {
    res.point = st_2x2(A);
    res.method = StMethod::two_by_two;
    have = true;
  }
  if (!have) {
    if (const std::optional<Complex> st = st_quadratic(A, tol)) {
      res.point = *st;
      res.method = StMethod::quadratic;
      have = true;
    }
  }
  if (!have) {
    if (const std::optional<Complex> st = st_tridiagonal_constant(A, tol)) {
      res.point = *st;
      res.method = StMethod::tridiagonal;
      have = true;
    }
  }
  if (!have) {
    if (std::optional<StampfliResult> r = try_block_scalar(A, tol)) {
      res = *r;
      have = true;
    }
  }
  if (!have && n == 3) {
    const std::optional<TriangularForm3> F = canonical_3x3(A);
    if (F && F->singleton) {
      StampfliResult r = st_3x3_singleton(A, tol);
      if (r.method == StMethod::fallback) return std::nullopt;
      return r;
    }
  }
  if (!have) return std::nullopt;
  res.min_norm = operator_norm(shift(A, res.point));
  res.certificate_margin = certificate(A, res.point).margin;
  return res;
}

}  // namespace

std::optional<StampfliResult> st_dispatch_closed(const CMatrix& A, double tol) {
  if (!A.all_finite()) throw InputError("st_dispatch: non-finite entries");
  std::optional<StampfliResult> r = dispatch_closed_only(A, tol);
  if (!r) return std::nullopt;
  const double cert_scale = 1.0 + operator_norm(A);
  if (r->certificate_margin < -1e-6 * cert_scale) return std::nullopt;
  return r;
}

StampfliResult st_dispatch(const CMatrix& A, double tol) {
  if (!A.all_finite()) throw InputError("st_dispatch: non-finite entries");
  const std::optional<StampfliResult> r = dispatch_closed_only(A, tol);
  if (r) {
    const double cert_scale = 1.0 + operator_norm(A);
    if (r->certificate_margin >= -1e-6 * cert_scale) return *r;
    StampfliResult fb = st_oracle(A, std::max(tol, 1e-12));
    fb.method = StMethod::fallback;
    return fb;
  }
  return st_oracle(A, std::max(tol, 1e-12));
}

CMatrix gen_almost_normal(const std::vector<Complex>& lams, const std::vector<double>& bs,
                          Complex mu) {
  if (lams.size() != bs.size())
    throw InputError("gen_almost_normal: lams and bs must have equal length");
  const int n = static_cast<int>(lams.size()) + 1;
  for (double b : bs)
    if (b < 0.0) throw InputError("gen_almost_normal: bs entries must be nonnegative");
  CMatrix A(n);
  for (int j = 0; j + 1 < n; ++j) {
    A(j, j) = lams[static_cast<size_t>(j)];
    A(j, n - 1) = bs[static_cast<size_t>(j)];
  }
  A(n - 1, n - 1) = mu;
  return A;
}

}  // namespace stampfli
