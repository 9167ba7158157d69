#pragma once

#include <vector>

#include "stampfli/matrix.hpp"

namespace stampfli {

/// Real-coefficient polynomial, coeffs[k] multiplies s^k. Leading
/// coefficients below 1e-14 of the largest magnitude are trimmed.
struct RealPolynomial {
  std::vector<double> coeffs;

  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> c) : coeffs(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  double eval(double s) const {
    double v = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
    return v;
  }
  Complex eval(Complex s) const {
    Complex v = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
    return v;
  }
  Complex deriv_eval(Complex s) const {
    Complex v = 0.0;
    for (size_t k = coeffs.size(); k-- > 1;) v = v * s + static_cast<double>(k) * coeffs[k];
    return v;
  }

  void trim() {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * m) coeffs.pop_back();
  }
};

/// All complex roots via the balanced companion matrix, Newton-polished.
std::vector<Complex> all_roots(const RealPolynomial& p);

/// Real roots exceeding 1e-12 of the root scale, ascending. A root counts as
/// real when |imag| <= 1e-8*|root|.
std::vector<double> positive_roots(const RealPolynomial& p);

/// Quotient and remainder of p / d.
void poly_divide(const RealPolynomial& p, const RealPolynomial& d, RealPolynomial& q,
                 RealPolynomial& r);

/// Pointwise product.
RealPolynomial poly_multiply(const RealPolynomial& a, const RealPolynomial& b);

}  // namespace stampfli
