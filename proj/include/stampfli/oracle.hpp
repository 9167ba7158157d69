#pragma once

#include <optional>
#include <vector>

#include "stampfli/matrix.hpp"
#include "stampfli/numrange.hpp"

namespace stampfli {

enum class StMethod {
  oracle,
  two_by_two,
  block_scalar,
  quadratic,
  tridiagonal,
  singleton3_xyz0,
  singleton3_toe,
  singleton3_general,
  fallback,
};

const char* method_name(StMethod m);

struct StampfliResult {
  Complex point{};                      // the minimizer lambda*
  double min_norm = 0.0;                // ||A - point*I||
  StMethod method = StMethod::oracle;
  double certificate_margin = 0.0;      // contains_zero margin of W0(A - point*I)
  long iterations = 0;
  std::vector<double> candidate_roots;  // 3x3 singleton path diagnostics
  int selected_root = -1;
  bool root_warning = false;            // a non-smallest root passed membership
};

/// Convergence failure carrying the best point found so far.
class StConvergenceError : public ConvergenceError {
 public:
  StConvergenceError(const std::string& msg, StampfliResult r)
      : ConvergenceError(msg), best(std::move(r)) {}
  StampfliResult best;
};

struct Certificate {
  double margin;
  std::optional<CVector> witness;  // unit vector with <(A-lambda)x,x> near 0, when dim <= 3
};

/// Zero-membership certificate for W0(A - lambda I).
Certificate certificate(const CMatrix& A, Complex lambda, int K = 720);

/// Reference minimizer of ||A - lambda I||: coarse grid over the numerical
/// range bounding box, Nelder-Mead refinement with restarts, and a Newton
/// polish on the analytic gradient when the top singular value is simple.
StampfliResult st_oracle(const CMatrix& A, double tol = 1e-9);

/// Batch evaluation of ||A - lambda I||.
std::vector<double> f_profile(const CMatrix& A, const std::vector<Complex>& points);

}  // namespace stampfli
