#pragma once

#include <optional>

#include "stampfli/matrix.hpp"

namespace stampfli {

enum class RobertsClass {
  nilpotent_quadratic,
  scaled_involution,
  reducible_scalar_plus_nilpotent2,
  nilpotent3_circular,
  not_orthogonal,
  unclassified,
};

const char* roberts_class_name(RobertsClass c);

struct RobertsReport {
  bool orthogonal;        // sampled verdict for ||A + nu I|| = ||A - nu I||
  double max_asymmetry;   // max over nu of |...| / (||A|| + |nu|)
  Complex worst_nu;
  bool stampfli_zero;     // |St(A)| <= 1e-6 ||A||
  RobertsClass classification;
};

/// Sampled Roberts-orthogonality test of A against the identity: 25
/// log-spaced moduli in [1e-3 ||A||, 1e3 ||A||] times 32 angles. This is a
/// necessary-condition check; the classification theorems supply the
/// sufficient direction where they apply.
RobertsReport roberts_numeric(const CMatrix& A, double tol = 1e-8);

/// For quadratic A (A^2 + pA + qI = 0): nilpotent (p,q ~ 0), scaled
/// involution (p ~ 0, q != 0), or not orthogonal (p != 0). nullopt when A is
/// not quadratic within tol.
std::optional<RobertsClass> classify_quadratic(const CMatrix& A, double tol = 1e-8);

/// For 3x3 matrices whose numerical range is a circular disk centered at 0
/// (verified via the canonical form conditions plus support-function
/// constancy): nilpotent, a scalar direct sum with a nilpotent 2x2 block, or
/// not orthogonal. nullopt when the circularity precondition fails.
std::optional<RobertsClass> classify_circular3(const CMatrix& A, double tol = 1e-6);

}  // namespace stampfli
