#include "stampfli/poly.hpp"

#include <algorithm>
#include <cmath>

#include "stampfli/eigen.hpp"

namespace stampfli {

namespace {

// Parlett-Reinsch style balancing with powers of two.
void balance(CMatrix& A) {
  const int n = A.size();
  bool again = true;
  int guard = 0;
  while (again && guard++ < 32) {
    again = false;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        r += std::abs(A(i, j));
        c += std::abs(A(j, i));
      }
      if (r == 0.0 || c == 0.0) continue;
      double f = 1.0;
      const double s = r + c;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c > r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s && f != 1.0) {
        again = true;
        for (int j = 0; j < n; ++j) A(i, j) /= f;
        for (int j = 0; j < n; ++j) A(j, i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<Complex> all_roots(const RealPolynomial& p) {
  const int d = p.degree();
  if (d < 1) throw InputError("all_roots: polynomial is constant or empty");
  const double lead = p.coeffs.back();
  CMatrix C(d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -p.coeffs[static_cast<size_t>(i)] / lead;
  balance(C);
  std::vector<Complex> roots = eigenvalues(C);
  for (Complex& r : roots) {
    for (int step = 0; step < 2; ++step) {
      const Complex dv = p.deriv_eval(r);
      if (std::abs(dv) == 0.0) break;
      const Complex r1 = r - p.eval(r) / dv;
      if (std::abs(p.eval(r1)) < std::abs(p.eval(r)))
        r = r1;
      else
        break;
    }
  }
  return roots;
}

std::vector<double> positive_roots(const RealPolynomial& p) {
  const std::vector<Complex> roots = all_roots(p);
  double rmax = 0.0;
  for (const Complex& r : roots) rmax = std::max(rmax, std::abs(r));
  std::vector<double> pos;
  for (const Complex& r : roots) {
    if (std::abs(r.imag()) > 1e-8 * std::abs(r)) continue;
    if (r.real() > 1e-12 * rmax) pos.push_back(r.real());
  }
  std::sort(pos.begin(), pos.end());
  return pos;
}

void poly_divide(const RealPolynomial& p, const RealPolynomial& d, RealPolynomial& q,
                 RealPolynomial& r) {
  if (d.degree() < 0 || (d.degree() == 0 && d.coeffs[0] == 0.0))
    throw InputError("poly_divide: division by zero polynomial");
  std::vector<double> rem = p.coeffs;
  const int dd = d.degree();
  const int dp = p.degree();
  std::vector<double> quot(static_cast<size_t>(std::max(dp - dd + 1, 1)), 0.0);
  for (int k = dp - dd; k >= 0; --k) {
    const double f = rem[static_cast<size_t>(k + dd)] / d.coeffs.back();
    quot[static_cast<size_t>(k)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(k + j)] -= f * d.coeffs[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(std::max(dd, 1)));
  q = RealPolynomial(std::move(quot));
  r.coeffs = std::move(rem);  // keep tiny remainders untrimmed so callers can bound them
}

RealPolynomial poly_multiply(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return RealPolynomial(std::move(c));
}

}  // namespace stampfli
