#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace stampfli {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Thrown when an argument violates an operation's preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative solver exceeds its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense square complex matrix, row-major storage.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
    if (n < 1) throw InputError("CMatrix: dimension must be positive");
  }
  CMatrix(int n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw InputError("CMatrix: dimension must be positive");
    if (a_.size() != static_cast<size_t>(n) * n)
      throw InputError("CMatrix: entry count does not match dimension");
  }

  static CMatrix identity(int n) {
    CMatrix I(n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
  }
  static CMatrix diagonal(const CVector& d) {
    CMatrix D(static_cast<int>(d.size()));
    for (int i = 0; i < D.size(); ++i) D(i, i) = d[static_cast<size_t>(i)];
    return D;
  }

  int size() const { return n_; }
  Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  const std::vector<Complex>& entries() const { return a_; }

  CMatrix adjoint() const {
    CMatrix B(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) B(j, i) = std::conj((*this)(i, j));
    return B;
  }

  bool all_finite() const {
    for (const Complex& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

inline CMatrix operator*(const CMatrix& A, const CMatrix& B) {
  if (A.size() != B.size()) throw InputError("matrix product: dimension mismatch");
  const int n = A.size();
  CMatrix C(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = A(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

inline CMatrix operator+(const CMatrix& A, const CMatrix& B) {
  if (A.size() != B.size()) throw InputError("matrix sum: dimension mismatch");
  CMatrix C = A;
  for (int i = 0; i < A.size(); ++i)
    for (int j = 0; j < A.size(); ++j) C(i, j) += B(i, j);
  return C;
}

inline CMatrix operator-(const CMatrix& A, const CMatrix& B) {
  if (A.size() != B.size()) throw InputError("matrix difference: dimension mismatch");
  CMatrix C = A;
  for (int i = 0; i < A.size(); ++i)
    for (int j = 0; j < A.size(); ++j) C(i, j) -= B(i, j);
  return C;
}

inline CMatrix operator*(Complex c, const CMatrix& A) {
  CMatrix B = A;
  for (int i = 0; i < A.size(); ++i)
    for (int j = 0; j < A.size(); ++j) B(i, j) *= c;
  return B;
}

/// A - lambda*I.
inline CMatrix shift(const CMatrix& A, Complex lambda) {
  CMatrix B = A;
  for (int i = 0; i < A.size(); ++i) B(i, i) -= lambda;
  return B;
}

inline Complex trace(const CMatrix& A) {
  Complex t = 0.0;
  for (int i = 0; i < A.size(); ++i) t += A(i, i);
  return t;
}

inline CVector matvec(const CMatrix& A, const CVector& x) {
  const int n = A.size();
  CVector y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) s += A(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

inline Complex inner(const CVector& x, const CVector& y) {
  Complex s = 0.0;
  for (size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

inline double vec_norm(const CVector& x) { return std::sqrt(std::abs(inner(x, x))); }

/// x*Ax for a unit (or any) vector x.
inline Complex quadratic_form(const CMatrix& A, const CVector& x) { return inner(x, matvec(A, x)); }

/// Determinant by LU with partial pivoting; intended for small n.
Complex det(const CMatrix& A);

}  // namespace stampfli
