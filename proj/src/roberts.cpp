#include "stampfli/roberts.hpp"

#include <cmath>

#include "stampfli/closedform.hpp"
#include "stampfli/eigen.hpp"
#include "stampfli/numrange.hpp"
#include "stampfli/oracle.hpp"

namespace stampfli {

const char* roberts_class_name(RobertsClass c) {
  switch (c) {
    case RobertsClass::nilpotent_quadratic: return "nilpotent_quadratic";
    case RobertsClass::scaled_involution: return "scaled_involution";
    case RobertsClass::reducible_scalar_plus_nilpotent2: return "reducible_scalar_plus_nilpotent2";
    case RobertsClass::nilpotent3_circular: return "nilpotent3_circular";
    case RobertsClass::not_orthogonal: return "not_orthogonal";
    case RobertsClass::unclassified: return "unclassified";
  }
  return "unknown";
}

std::optional<RobertsClass> classify_quadratic(const CMatrix& A, double tol) {
  const QuadraticFit fit = fit_quadratic(A, tol);
  if (!fit.accepted) return std::nullopt;
  const double s = 1.0 + A.frobenius_norm();
  const bool p0 = std::abs(fit.p) <= tol * s;
  const bool q0 = std::abs(fit.q) <= tol * s * s;
  if (p0 && q0) return RobertsClass::nilpotent_quadratic;
  if (p0) return RobertsClass::scaled_involution;
  return RobertsClass::not_orthogonal;
}

std::optional<RobertsClass> classify_circular3(const CMatrix& A, double tol) {
  if (A.size() != 3) return std::nullopt;
  const double s = 1.0 + A.frobenius_norm();
  const std::optional<TriangularForm3> Fo = canonical_3x3(A);
  if (!Fo) return std::nullopt;
  const TriangularForm3& F = *Fo;
  // repeated eigenvalue must be zero for the canonical circular-disk form
  if (std::abs(F.mu) > tol * s) return std::nullopt;
  const Complex lam = F.singleton ? Complex(0.0) : F.lam;
  const Complex y = F.T(0, 2);
  // x conj(y) z = -lam (|y|^2 + |z|^2)
  const Complex lhs = F.u * std::conj(y) * F.w;
  const Complex rhs = -lam * (F.v * F.v + F.w * F.w);
  if (std::abs(lhs - rhs) > tol * s * s * s) return std::nullopt;
  // |x|^2 + |y|^2 + |z|^2 >= 4 |lam|^2
  if (F.u * F.u + F.v * F.v + F.w * F.w < 4.0 * std::norm(lam) - tol * s * s) return std::nullopt;
  // cross-check: the support function of a disk centered at 0 is constant
  const PolygonRegion R = nr_boundary(A, 64);
  double lo = R.support.front(), hi = lo;
  for (double v : R.support) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo > 1e-6 * s) return std::nullopt;

  if (std::abs(lam) <= tol * s) return RobertsClass::nilpotent3_circular;
  if (F.v <= tol * s && F.w <= tol * s && 2.0 * std::abs(lam) <= F.u + tol * s)
    return RobertsClass::reducible_scalar_plus_nilpotent2;
  return RobertsClass::not_orthogonal;
}

RobertsReport roberts_numeric(const CMatrix& A, double tol) {
  if (!A.all_finite()) throw InputError("roberts_numeric: non-finite entries");
  const double nrm = operator_norm(A);
  if (nrm == 0.0) throw InputError("roberts_numeric: zero matrix");

  RobertsReport rep{};
  rep.max_asymmetry = -1.0;
  for (int i = 0; i < 25; ++i) {
    const double r = 1e-3 * nrm * std::pow(1e6, i / 24.0);
    for (int j = 0; j < 32; ++j) {
      const double th = 2.0 * M_PI * j / 32.0;
      const Complex nu = std::polar(r, th);
      const double plus = operator_norm(shift(A, -nu));   // ||A + nu I||
      const double minus = operator_norm(shift(A, nu));   // ||A - nu I||
      const double asym = std::abs(plus - minus) / (nrm + r);
      if (asym > rep.max_asymmetry) {
        rep.max_asymmetry = asym;
        rep.worst_nu = nu;
      }
    }
  }
  rep.orthogonal = rep.max_asymmetry <= tol;

  const StampfliResult st = st_oracle(A, 1e-9);
  rep.stampfli_zero = std::abs(st.point) <= 1e-6 * nrm;

  if (const std::optional<RobertsClass> q = classify_quadratic(A, 1e-8)) {
    rep.classification = *q;
  } else if (const std::optional<RobertsClass> c = classify_circular3(A, 1e-6)) {
    rep.classification = *c;
  } else {
    rep.classification = rep.orthogonal ? RobertsClass::unclassified : RobertsClass::not_orthogonal;
  }
  return rep;
}

}  // namespace stampfli
