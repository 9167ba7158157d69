#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "stampfli/matrix.hpp"

namespace testutil {

using stampfli::CMatrix;
using stampfli::Complex;
using stampfli::CVector;

/// Deterministic uniform/gaussian draws on top of mt19937 raw output, so
/// seeded corpora are identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint32_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    const uint64_t hi = gen_();
    const uint64_t lo = gen_();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double gaussian() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }
  Complex complex_uniform_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, uniform(0.0, 2.0 * M_PI));
  }

  CMatrix random_matrix(int n, double scale = 1.0) {
    CMatrix A(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = scale * complex_gaussian();
    return A;
  }

  /// Haar-ish random unitary via Gram-Schmidt on a Gaussian matrix.
  CMatrix random_unitary(int n) {
    CMatrix G = random_matrix(n);
    for (int c = 0; c < n; ++c) {
      for (int prev = 0; prev < c; ++prev) {
        Complex proj = 0.0;
        for (int i = 0; i < n; ++i) proj += std::conj(G(i, prev)) * G(i, c);
        for (int i = 0; i < n; ++i) G(i, c) -= proj * G(i, prev);
      }
      double nrm = 0.0;
      for (int i = 0; i < n; ++i) nrm += std::norm(G(i, c));
      nrm = std::sqrt(nrm);
      for (int i = 0; i < n; ++i) G(i, c) /= nrm;
    }
    return G;
  }

 private:
  std::mt19937 gen_;
};

inline CMatrix conjugate(const CMatrix& U, const CMatrix& A) { return U.adjoint() * A * U; }

/// Upper-triangular 3x3 with constant diagonal lam and entries x, y, z.
inline CMatrix triangle3(Complex lam, Complex x, Complex y, Complex z) {
  CMatrix A(3);
  A(0, 0) = A(1, 1) = A(2, 2) = lam;
  A(0, 1) = x;
  A(0, 2) = y;
  A(1, 2) = z;
  return A;
}

/// The (me)-style doubleton form: diag (mu, mu, lam) with entries x, y, z.
inline CMatrix doubleton3(Complex mu, Complex lam, Complex x, Complex y, Complex z) {
  CMatrix A = triangle3(mu, x, y, z);
  A(2, 2) = lam;
  return A;
}

}  // namespace testutil
