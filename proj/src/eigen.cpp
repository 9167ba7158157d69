#include "stampfli/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stampfli {

namespace {

double off_diagonal_mass(const CMatrix& A) {
  double s = 0.0;
  for (int i = 0; i < A.size(); ++i)
    for (int j = 0; j < A.size(); ++j)
      if (i != j) s += std::norm(A(i, j));
  return std::sqrt(s);
}

}  // namespace

Complex det(const CMatrix& A) {
  const int n = A.size();
  CMatrix M = A;
  Complex d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(M(i, k)) > std::abs(M(piv, k))) piv = i;
    if (std::abs(M(piv, k)) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
      d = -d;
    }
    d *= M(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = M(i, k) / M(k, k);
      for (int j = k; j < n; ++j) M(i, j) -= f * M(k, j);
    }
  }
  return d;
}

HermEigen hermitian_eigen(const CMatrix& H) {
  const int n = H.size();
  const double hnorm = H.frobenius_norm();
  double dev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dev += std::norm(H(i, j) - std::conj(H(j, i)));
  if (std::sqrt(dev) > 1e-12 * hnorm)
    throw InputError("hermitian_eigen: matrix is not Hermitian within tolerance");

  CMatrix A(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (H(i, j) + std::conj(H(j, i)));
  CMatrix V = CMatrix::identity(n);

  const double target = 1e-14 * hnorm;
  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_mass(A) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = A(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase = apq / g;  // e^{i phi}
        const double alpha = A(p, p).real();
        const double beta = A(q, q).real();
        const double tau = (beta - alpha) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // R acts on columns (p,q): R = [[c*phase, s*phase], [-s, c]]
        const Complex r11 = c * phase, r12 = s * phase;
        const Complex r21 = -s, r22 = c;
        for (int i = 0; i < n; ++i) {
          const Complex aip = A(i, p), aiq = A(i, q);
          A(i, p) = aip * r11 + aiq * r21;
          A(i, q) = aip * r12 + aiq * r22;
        }
        for (int j = 0; j < n; ++j) {
          const Complex apj = A(p, j), aqj = A(q, j);
          A(p, j) = std::conj(r11) * apj + std::conj(r21) * aqj;
          A(q, j) = std::conj(r12) * apj + std::conj(r22) * aqj;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        for (int i = 0; i < n; ++i) {
          const Complex vip = V(i, p), viq = V(i, q);
          V(i, p) = vip * r11 + viq * r21;
          V(i, q) = vip * r12 + viq * r22;
        }
      }
    }
  }

  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return A(i, i).real() < A(j, j).real(); });

  HermEigen out;
  out.values.resize(static_cast<size_t>(n));
  out.vectors = CMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[static_cast<size_t>(k)] = A(idx[static_cast<size_t>(k)], idx[static_cast<size_t>(k)]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = V(i, idx[static_cast<size_t>(k)]);
  }
  return out;
}

double operator_norm(const CMatrix& A) {
  if (!A.all_finite()) throw InputError("operator_norm: non-finite entries");
  const CMatrix M = A.adjoint() * A;
  const HermEigen e = hermitian_eigen(M);
  return std::sqrt(std::max(0.0, e.values.back()));
}

namespace {

// Horner evaluation of a monic-free polynomial given ascending coefficients.
Complex poly_eval(const std::vector<Complex>& c, Complex z) {
  Complex v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

Complex poly_deriv_eval(const std::vector<Complex>& c, Complex z) {
  Complex v = 0.0;
  for (size_t k = c.size(); k-- > 1;) v = v * z + static_cast<double>(k) * c[k];
  return v;
}

// One Newton step, applied only when it reduces the residual.
Complex polish_root(const std::vector<Complex>& c, Complex z) {
  const Complex d = poly_deriv_eval(c, z);
  if (std::abs(d) == 0.0) return z;
  const Complex z1 = z - poly_eval(c, z) / d;
  return std::abs(poly_eval(c, z1)) < std::abs(poly_eval(c, z)) ? z1 : z;
}

std::vector<Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
  const Complex tr = a + d;
  const Complex dt = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * dt);
  const Complex s = (std::abs(tr + disc) >= std::abs(tr - disc)) ? disc : -disc;
  Complex r1 = 0.5 * (tr + s);
  Complex r2 = tr - r1;
  const std::vector<Complex> p = {dt, -tr, 1.0};
  r1 = polish_root(p, r1);
  r2 = polish_root(p, r2);
  return {r1, r2};
}

std::vector<Complex> eig3(const CMatrix& A) {
  const Complex c2 = trace(A);
  const Complex c1 = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) +
                     (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) +
                     (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1));
  const Complex c0 = det(A);
  // lambda^3 - c2 lambda^2 + c1 lambda - c0, depressed by lambda = t + c2/3
  const Complex m = c2 / 3.0;
  const Complex p = c1 - c2 * c2 / 3.0;
  const Complex q = -2.0 * c2 * c2 * c2 / 27.0 + c1 * c2 / 3.0 - c0;
  std::vector<Complex> roots;
  if (std::abs(p) == 0.0 && std::abs(q) == 0.0) {
    roots = {m, m, m};
  } else {
    const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u3 = -q / 2.0 + disc;
    if (std::abs(-q / 2.0 - disc) > std::abs(u3)) u3 = -q / 2.0 - disc;
    const Complex u = std::pow(u3, 1.0 / 3.0);
    const Complex v = (std::abs(u) > 0.0) ? -p / (3.0 * u) : Complex(0.0);
    const Complex w(-0.5, std::sqrt(3.0) / 2.0);  // primitive cube root of unity
    roots = {u + v + m, w * u + std::conj(w) * v + m,
             std::conj(w) * u + w * v + m};
  }
  const std::vector<Complex> chi = {-c0, c1, -c2, 1.0};
  for (Complex& r : roots) r = polish_root(chi, r);
  return roots;
}

// Hessenberg reduction by Householder reflectors (eigenvalues only, no Q).
void hessenberg(CMatrix& A) {
  const int n = A.size();
  for (int k = 0; k < n - 2; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(A(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = A(k + 1, k);
    const Complex phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * xnorm;
    CVector u(static_cast<size_t>(n), 0.0);
    for (int i = k + 1; i < n; ++i) u[static_cast<size_t>(i)] = A(i, k);
    u[static_cast<size_t>(k + 1)] -= alpha;
    double un = 0.0;
    for (const Complex& z : u) un += std::norm(z);
    if (un == 0.0) continue;
    // A <- P A P with P = I - 2 u u*/u*u
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int i = k + 1; i < n; ++i) s += std::conj(u[static_cast<size_t>(i)]) * A(i, j);
      s *= 2.0 / un;
      for (int i = k + 1; i < n; ++i) A(i, j) -= s * u[static_cast<size_t>(i)];
    }
    for (int i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (int j = k + 1; j < n; ++j) s += A(i, j) * u[static_cast<size_t>(j)];
      s *= 2.0 / un;
      for (int j = k + 1; j < n; ++j) A(i, j) -= s * std::conj(u[static_cast<size_t>(j)]);
    }
    for (int i = k + 2; i < n; ++i) A(i, k) = 0.0;
    A(k + 1, k) = alpha;
  }
}

std::vector<Complex> eig_qr(CMatrix H) {
  const int n = H.size();
  hessenberg(H);
  std::vector<Complex> eigs;
  eigs.reserve(static_cast<size_t>(n));
  int m = n - 1;
  const long cap = 100L * n;
  long iters = 0;
  int stagnation = 0;
  const double eps = 1e-15;
  while (m >= 0) {
    if (m == 0) {
      eigs.push_back(H(0, 0));
      break;
    }
    // deflate negligible subdiagonals
    int l = m;
    while (l > 0) {
      const double sub = std::abs(H(l, l - 1));
      if (sub <= eps * (std::abs(H(l - 1, l - 1)) + std::abs(H(l, l)))) {
        H(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == m) {
      eigs.push_back(H(m, m));
      --m;
      stagnation = 0;
      continue;
    }
    if (l == m - 1 && std::abs(H(m, m - 1)) == 0.0) {
      eigs.push_back(H(m, m));
      --m;
      stagnation = 0;
      continue;
    }
    if (++iters > cap)
      throw ConvergenceError("eigenvalues: QR iteration cap exceeded");
    // Wilkinson shift from the trailing 2x2 of the active block
    Complex mu;
    {
      const std::vector<Complex> e2 =
          eig2(H(m - 1, m - 1), H(m - 1, m), H(m, m - 1), H(m, m));
      mu = (std::abs(e2[0] - H(m, m)) <= std::abs(e2[1] - H(m, m))) ? e2[0] : e2[1];
    }
    if (++stagnation % 12 == 0) mu = H(m, m) + std::abs(H(m, m - 1)) * 1.5;
    // explicit shifted QR step on the active block [l..m] via Givens
    for (int i = l; i <= m; ++i) H(i, i) -= mu;
    const int bs = m - l + 1;
    std::vector<Complex> cs(static_cast<size_t>(bs - 1)), sn(static_cast<size_t>(bs - 1));
    for (int k = l; k < m; ++k) {
      const Complex a = H(k, k), b = H(k + 1, k);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      Complex c = 1.0, s = 0.0;
      if (r > 0.0) {
        c = a / r;
        s = b / r;
      }
      cs[static_cast<size_t>(k - l)] = c;
      sn[static_cast<size_t>(k - l)] = s;
      for (int j = k; j <= m; ++j) {
        const Complex h1 = H(k, j), h2 = H(k + 1, j);
        H(k, j) = std::conj(c) * h1 + std::conj(s) * h2;
        H(k + 1, j) = -s * h1 + c * h2;
      }
      H(k + 1, k) = 0.0;
    }
    for (int k = l; k < m; ++k) {
      const Complex c = cs[static_cast<size_t>(k - l)], s = sn[static_cast<size_t>(k - l)];
      for (int i = l; i <= std::min(m, k + 1); ++i) {
        const Complex h1 = H(i, k), h2 = H(i, k + 1);
        H(i, k) = h1 * c + h2 * s;
        H(i, k + 1) = -h1 * std::conj(s) + h2 * std::conj(c);
      }
    }
    for (int i = l; i <= m; ++i) H(i, i) += mu;
  }
  return eigs;
}

}  // namespace

std::vector<Complex> eigenvalues(const CMatrix& A) {
  if (!A.all_finite()) throw InputError("eigenvalues: non-finite entries");
  const int n = A.size();
  if (n == 1) return {A(0, 0)};
  // exactly triangular input: the diagonal, free of the root-splitting noise
  // the characteristic-polynomial route would introduce on defective spectra
  bool upper = true, lower = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j && A(i, j) != 0.0) upper = false;
      if (i < j && A(i, j) != 0.0) lower = false;
    }
  if (upper || lower) {
    std::vector<Complex> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = A(i, i);
    return d;
  }
  if (n == 2) return eig2(A(0, 0), A(0, 1), A(1, 0), A(1, 1));
  if (n == 3) return eig3(A);
  return eig_qr(A);
}

SchurForm schur_triangularize(const CMatrix& A, const std::vector<Complex>& order) {
  const int n = A.size();
  if (static_cast<int>(order.size()) != n)
    throw InputError("schur_triangularize: order length must equal dimension");
  const std::vector<Complex> eigs = eigenvalues(A);
  double scale = A.frobenius_norm();
  // validate: order must match the spectrum up to clustering noise
  {
    const double match_tol = 1e-5 * (1.0 + scale);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (const Complex& o : order) {
      int best = -1;
      double bd = 0.0;
      for (int i = 0; i < n; ++i) {
        if (used[static_cast<size_t>(i)]) continue;
        const double d = std::abs(eigs[static_cast<size_t>(i)] - o);
        if (best < 0 || d < bd) {
          best = i;
          bd = d;
        }
      }
      if (best < 0 || bd > match_tol)
        throw InputError("schur_triangularize: order is not a permutation of the spectrum");
      used[static_cast<size_t>(best)] = true;
    }
  }

  CMatrix U = CMatrix::identity(n);
  CMatrix T = A;
  for (int k = 0; k < n - 1; ++k) {
    const int m = n - k;
    // unit null-direction of (M - lambda I) via the smallest eigenpair of its Gram matrix
    CMatrix M(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) M(i, j) = T(k + i, k + j);
    const CMatrix Ms = shift(M, order[static_cast<size_t>(k)]);
    const HermEigen g = hermitian_eigen(Ms.adjoint() * Ms);
    CVector v(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] = g.vectors(i, 0);
    // Hermitian reflector P with P v = gamma e1; then (P M P) e1 = lambda e1
    const Complex v0 = v[0];
    const Complex gamma = (std::abs(v0) > 0.0) ? -(v0 / std::abs(v0)) : Complex(-1.0);
    CVector u = v;
    u[0] -= gamma;
    double un = 0.0;
    for (const Complex& z : u) un += std::norm(z);
    if (un > 0.0) {
      const auto reflect_rows = [&](CMatrix& X, int row0, int col0, int col1) {
        for (int j = col0; j < col1; ++j) {
          Complex s = 0.0;
          for (int i = 0; i < m; ++i) s += std::conj(u[static_cast<size_t>(i)]) * X(row0 + i, j);
          s *= 2.0 / un;
          for (int i = 0; i < m; ++i) X(row0 + i, j) -= s * u[static_cast<size_t>(i)];
        }
      };
      const auto reflect_cols = [&](CMatrix& X, int col0, int row0, int row1) {
        for (int i = row0; i < row1; ++i) {
          Complex s = 0.0;
          for (int j = 0; j < m; ++j) s += X(i, col0 + j) * u[static_cast<size_t>(j)];
          s *= 2.0 / un;
          for (int j = 0; j < m; ++j) X(i, col0 + j) -= s * std::conj(u[static_cast<size_t>(j)]);
        }
      };
      reflect_rows(T, k, 0, n);
      reflect_cols(T, k, 0, n);
      reflect_cols(U, k, 0, n);
    }
    for (int i = k + 1; i < n; ++i) T(i, k) = 0.0;
  }
  return {U, T};
}

std::vector<SpectrumCluster> cluster_spectrum(const std::vector<Complex>& eigs, double scale,
                                              double threshold_rel) {
  const double tau = threshold_rel * (1.0 + scale);
  std::vector<std::vector<Complex>> groups;
  for (const Complex& e : eigs) groups.push_back({e});
  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    double best = tau;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < groups.size(); ++i)
      for (size_t j = i + 1; j < groups.size(); ++j)
        for (const Complex& a : groups[i])
          for (const Complex& b : groups[j])
            if (std::abs(a - b) <= best) {
              best = std::abs(a - b);
              bi = i;
              bj = j;
              merged = true;
            }
    if (merged) {
      groups[bi].insert(groups[bi].end(), groups[bj].begin(), groups[bj].end());
      groups.erase(groups.begin() + static_cast<long>(bj));
    }
  }
  std::vector<SpectrumCluster> out;
  for (const auto& g : groups) {
    Complex c = 0.0;
    for (const Complex& e : g) c += e;
    out.push_back({c / static_cast<double>(g.size()), static_cast<int>(g.size())});
  }
  std::sort(out.begin(), out.end(), [](const SpectrumCluster& a, const SpectrumCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

}  // namespace stampfli
