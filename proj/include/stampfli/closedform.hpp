#pragma once

#include <optional>
#include <vector>

#include "stampfli/matrix.hpp"
#include "stampfli/oracle.hpp"
#include "stampfli/poly.hpp"

namespace stampfli {

/// Canonical parameters of an upper-triangular 3x3 form with the repeated
/// eigenvalue leading: entries (1,2) and (2,3) made real nonnegative by a
/// diagonal unitary. u = |x|, v = |y|, w = |z|, rho = |lam - mu|,
/// phi = arg(x conj(y) z) (invariant under the phase choice, 0 when uvw = 0).
struct TriangularForm3 {
  Complex lam;  // simple eigenvalue (equals mu for singleton spectra)
  Complex mu;   // repeated eigenvalue
  double u = 0, v = 0, w = 0;
  double rho = 0;
  double phi = 0;
  bool singleton = false;
  CMatrix U;  // unitary with U* A U = T
  CMatrix T;  // the canonical triangle
};

/// St(A) = trace(A)/2 for 2x2 matrices.
Complex st_2x2(const CMatrix& A);

/// Closed-form ||A - lambda I|| for the triangle [[lam1, c], [0, lam2]];
/// 2*norm^2 = m1 + m2 + c^2 + sqrt((m1 - m2)^2 + c^4 + 2c^2(m1 + m2)).
double norm_2x2_shifted(Complex lam1, Complex lam2, double c, Complex lambda);

/// Same value for a general 2x2 matrix, reduced to triangular form first.
double norm_2x2(const CMatrix& A, Complex lambda);

/// St for [[a1 I, X], [Y*, a2 I]] with XY*, Y*X normal (no condition on X, Y
/// when a1 = a2): returns (a1 + a2)/2, or nullopt on a structural reject.
/// Structural tolerances are evaluated at unit Frobenius scale.
std::optional<Complex> st_block_scalar(const CMatrix& A, int n1, int n2, double tol);

struct QuadraticFit {
  Complex p, q;
  double residual;  // ||A^2 + pA + qI||_F
  bool accepted;
};

/// Least-squares fit of A^2 + pA + qI = 0 over span{A, I}; accepted when the
/// residual is below tol * ||A||_F^2.
QuadraticFit fit_quadratic(const CMatrix& A, double tol);

/// St(A) = -p/2 for quadratic operators; nullopt when A is not quadratic.
std::optional<Complex> st_quadratic(const CMatrix& A, double tol);

/// St(A) = a for matrices with a_ij = 0 whenever i - j is even and nonzero
/// and a constant main diagonal a; nullopt on a structural reject.
std::optional<Complex> st_tridiagonal_constant(const CMatrix& A, double tol);

/// Canonical triangular form of a 3x3 matrix whose spectrum clusters to one
/// or two points; nullopt when it clusters to three.
std::optional<TriangularForm3> canonical_3x3(const CMatrix& A, double cluster_tol_rel = 1e-7);

/// For a singleton-spectrum form: St = lam iff uvw vanishes (relative to the
/// off-diagonal scale sqrt(u^2+v^2+w^2)); nullopt when uvw does not vanish.
std::optional<Complex> st_singleton_xyz0(const TriangularForm3& F);

/// The degree-5 displacement polynomial in s = |zeta| for singleton-spectrum
/// 3x3 matrices with parameters u, v, w. Genuinely vanishing leading
/// coefficients (e.g. u = v = w) are trimmed.
RealPolynomial build_PA(double u, double v, double w);

/// The 5x5 resultant-style determinant whose vanishing characterizes forms
/// with lam = 1, x,z > 0, y < 0 and St = 0. Satisfies
/// resultant_res(u/s, -v/s, w/s) * s^13 = build_PA(u, v, w)(s).
double resultant_res(double x, double y, double z);

/// |zeta| for the |x| = |z| = u case: u^2 v / (u^2 - v^2) when v/u <= 2-sqrt(3),
/// else u^2 (2 sqrt(6u^2 + v^2) - v) / (2 (8u^2 + v^2)).
double st_toe_abs(double u, double v);

/// Full singleton-spectrum 3x3 pipeline: canonical form, the xyz=0 and
/// |x|=|z| shortcuts, otherwise positive roots of build_PA filtered by the
/// W0 zero-membership certificate (smallest passing root wins).
StampfliResult st_3x3_singleton(const CMatrix& A, double tol);

/// Criterion for St(A) to equal the repeated eigenvalue mu of a 3x3 matrix
/// with a doubleton spectrum: arg condition, the |rho v - u w| inequality and
/// the quartic identity, each with slack tol at the appropriate power of the
/// off-diagonal scale. Accepts singleton forms too (then reduces to uvw = 0).
bool multiple_eig_st_criterion(const CMatrix& A, double tol = 1e-7);
bool multiple_eig_st_criterion(const TriangularForm3& F, double tol = 1e-7);

/// Structure-detecting dispatcher: 2x2, quadratic, constant-diagonal
/// parity pattern, scalar-diagonal 2x2 block partition, 3x3 singleton, and
/// the oracle otherwise. Every closed-form result is certificate-checked and
/// reruns through the oracle (method "fallback") if the margin fails.
StampfliResult st_dispatch(const CMatrix& A, double tol = 1e-9);

/// Closed forms only: nullopt when no structure is detected or the
/// certificate rejects the closed-form value.
std::optional<StampfliResult> st_dispatch_closed(const CMatrix& A, double tol = 1e-9);

/// Almost-normal generator: diag(lams) in the leading block, column bs, and
/// corner mu. bs entries must be nonnegative.
CMatrix gen_almost_normal(const std::vector<Complex>& lams, const std::vector<double>& bs,
                          Complex mu);

}  // namespace stampfli
