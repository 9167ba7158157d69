#include "stampfli/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stampfli/eigen.hpp"

namespace stampfli {

const char* method_name(StMethod m) {
  switch (m) {
    case StMethod::oracle: return "oracle";
    case StMethod::two_by_two: return "two_by_two";
    case StMethod::block_scalar: return "block_scalar";
    case StMethod::quadratic: return "quadratic";
    case StMethod::tridiagonal: return "tridiagonal";
    case StMethod::singleton3_xyz0: return "singleton3_xyz0";
    case StMethod::singleton3_toe: return "singleton3_toe";
    case StMethod::singleton3_general: return "singleton3_general";
    case StMethod::fallback: return "fallback";
  }
  return "unknown";
}

namespace {

// Minimize |y* B y| over unit y by Nelder-Mead on the real coordinates,
// seeded from coordinate vectors. B is at most 3x3 here.
CVector min_quadratic_form_vector(const CMatrix& B) {
  const int d = B.size();
  const auto objective = [&](const std::vector<double>& xs) {
    CVector y(static_cast<size_t>(d));
    double nrm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      y[static_cast<size_t>(i)] = Complex(xs[static_cast<size_t>(2 * i)], xs[static_cast<size_t>(2 * i + 1)]);
      nrm2 += std::norm(y[static_cast<size_t>(i)]);
    }
    if (nrm2 < 1e-12) return 1e100;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (Complex& z : y) z *= inv;
    return std::abs(quadratic_form(B, y));
  };
  std::vector<double> best(2 * static_cast<size_t>(d), 0.0);
  double bestv = 1e300;
  for (int seed = 0; seed < d; ++seed) {
    std::vector<double> x(2 * static_cast<size_t>(d), 0.0);
    x[static_cast<size_t>(2 * seed)] = 1.0;
    if (objective(x) < bestv) {
      bestv = objective(x);
      best = x;
    }
  }
  for (int s1 = 0; s1 < d; ++s1)
    for (int s2 = s1 + 1; s2 < d; ++s2)
      for (double ph : {0.0, M_PI / 2, M_PI, 3 * M_PI / 2}) {
        std::vector<double> x(2 * static_cast<size_t>(d), 0.0);
        x[static_cast<size_t>(2 * s1)] = 1.0;
        x[static_cast<size_t>(2 * s2)] = std::cos(ph);
        x[static_cast<size_t>(2 * s2 + 1)] = std::sin(ph);
        if (objective(x) < bestv) {
          bestv = objective(x);
          best = x;
        }
      }
  // simple Nelder-Mead over R^{2d}
  const size_t dim = best.size();
  std::vector<std::vector<double>> simp(dim + 1, best);
  for (size_t i = 0; i < dim; ++i) simp[i + 1][i] += 0.25;
  std::vector<double> fv(dim + 1);
  for (size_t i = 0; i <= dim; ++i) fv[i] = objective(simp[i]);
  for (int it = 0; it < 400; ++it) {
    std::vector<size_t> ord(dim + 1);
    for (size_t i = 0; i <= dim; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> ns(dim + 1);
    std::vector<double> nf(dim + 1);
    for (size_t i = 0; i <= dim; ++i) {
      ns[i] = simp[ord[i]];
      nf[i] = fv[ord[i]];
    }
    simp = ns;
    fv = nf;
    if (fv[0] < 1e-15 || std::abs(fv[dim] - fv[0]) < 1e-16) break;
    std::vector<double> centroid(dim, 0.0);
    for (size_t i = 0; i < dim; ++i)
      for (size_t k = 0; k < dim; ++k) centroid[k] += simp[i][k] / static_cast<double>(dim);
    auto combine = [&](double t) {
      std::vector<double> x(dim);
      for (size_t k = 0; k < dim; ++k) x[k] = centroid[k] + t * (centroid[k] - simp[dim][k]);
      return x;
    };
    const std::vector<double> xr = combine(1.0);
    const double fr = objective(xr);
    if (fr < fv[0]) {
      const std::vector<double> xe = combine(2.0);
      const double fe = objective(xe);
      if (fe < fr) {
        simp[dim] = xe;
        fv[dim] = fe;
      } else {
        simp[dim] = xr;
        fv[dim] = fr;
      }
    } else if (fr < fv[dim - 1]) {
      simp[dim] = xr;
      fv[dim] = fr;
    } else {
      const std::vector<double> xc = combine(-0.5);
      const double fc = objective(xc);
      if (fc < fv[dim]) {
        simp[dim] = xc;
        fv[dim] = fc;
      } else {
        for (size_t i = 1; i <= dim; ++i) {
          for (size_t k = 0; k < dim; ++k) simp[i][k] = 0.5 * (simp[i][k] + simp[0][k]);
          fv[i] = objective(simp[i]);
        }
      }
    }
  }
  CVector y(static_cast<size_t>(d));
  double nrm2 = 0.0;
  for (int i = 0; i < d; ++i) {
    y[static_cast<size_t>(i)] = Complex(simp[0][static_cast<size_t>(2 * i)], simp[0][static_cast<size_t>(2 * i + 1)]);
    nrm2 += std::norm(y[static_cast<size_t>(i)]);
  }
  const double inv = 1.0 / std::sqrt(nrm2);
  for (Complex& z : y) z *= inv;
  return y;
}

}  // namespace

Certificate certificate(const CMatrix& A, Complex lambda, int K) {
  const CMatrix M = shift(A, lambda);
  if (M.frobenius_norm() == 0.0) {
    CVector e1(static_cast<size_t>(A.size()), 0.0);
    e1[0] = 1.0;
    return {0.0, e1};  // W0 of the zero operator is {0}
  }
  const CompressionResult c = compress_to_top(M, 1e-8);
  const PolygonRegion R = nr_boundary(c.B, K);
  double margin = R.support.front();
  for (double s : R.support) margin = std::min(margin, s);
  Certificate out{margin, std::nullopt};
  if (c.subspace_dim <= 3) {
    const CVector y = min_quadratic_form_vector(c.B);
    CVector x(static_cast<size_t>(A.size()), 0.0);
    for (int i = 0; i < A.size(); ++i) {
      Complex s = 0.0;
      for (int j = 0; j < c.subspace_dim; ++j) s += c.isometry(i, j) * y[static_cast<size_t>(j)];
      x[static_cast<size_t>(i)] = s;
    }
    out.witness = std::move(x);
  }
  return out;
}

namespace {

struct Vertex {
  double x, y, f;
};

// Standard Nelder-Mead on (Re lambda, Im lambda); returns iterations used.
template <typename F>
long nelder_mead(const F& f, Vertex& best, double h0, double diam_tol, int max_iter) {
  std::array<Vertex, 3> s;
  s[0] = best;
  s[1] = {best.x + h0, best.y, 0.0};
  s[2] = {best.x, best.y + h0, 0.0};
  s[1].f = f(s[1].x, s[1].y);
  s[2].f = f(s[2].x, s[2].y);
  long it = 0;
  for (; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double diam = std::max({std::hypot(s[0].x - s[1].x, s[0].y - s[1].y),
                                  std::hypot(s[0].x - s[2].x, s[0].y - s[2].y),
                                  std::hypot(s[1].x - s[2].x, s[1].y - s[2].y)});
    if (diam < diam_tol) break;
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    Vertex r{cx + (cx - s[2].x), cy + (cy - s[2].y), 0.0};
    r.f = f(r.x, r.y);
    if (r.f < s[0].f) {
      Vertex e{cx + 2.0 * (cx - s[2].x), cy + 2.0 * (cy - s[2].y), 0.0};
      e.f = f(e.x, e.y);
      s[2] = (e.f < r.f) ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      Vertex c{cx - 0.5 * (cx - s[2].x), cy - 0.5 * (cy - s[2].y), 0.0};
      c.f = f(c.x, c.y);
      if (c.f < s[2].f) {
        s[2] = c;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = 0.5 * (s[i].x + s[0].x);
          s[i].y = 0.5 * (s[i].y + s[0].y);
          s[i].f = f(s[i].x, s[i].y);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  best = s[0];
  return it;
}

// Gradient of sigma_max(A - lambda I) at a point where it is simple:
// grad = (-Re(u*v), Im(u*v)) for the top singular pair (u, v).
// Returns false when the top eigenvalue of M*M is too close to the next one.
bool sigma_gradient(const CMatrix& A, double x, double y, double* gx, double* gy) {
  const CMatrix M = shift(A, Complex(x, y));
  const HermEigen g = hermitian_eigen(M.adjoint() * M);
  const int n = A.size();
  const double top = g.values.back();
  if (top <= 0.0) return false;
  if (n > 1 && g.values[static_cast<size_t>(n - 2)] > top * (1.0 - 1e-8)) return false;
  CVector v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = g.vectors(i, n - 1);
  const CVector Mv = matvec(M, v);
  const double sigma = std::sqrt(top);
  CVector u = Mv;
  for (Complex& z : u) z /= sigma;
  const Complex gamma = inner(u, v);
  *gx = -gamma.real();
  *gy = gamma.imag();
  return true;
}

}  // namespace

StampfliResult st_oracle(const CMatrix& A, double tol) {
  if (!A.all_finite()) throw InputError("st_oracle: non-finite entries");
  if (tol < 1e-12) throw InputError("st_oracle: tol must be at least 1e-12");
  const int n = A.size();
  const double scale = 1.0 + operator_norm(A);
  const auto f = [&](double x, double y) { return operator_norm(shift(A, Complex(x, y))); };

  StampfliResult res;
  res.method = StMethod::oracle;

  // scalar matrices: the minimizer is the diagonal value
  {
    const Complex c = trace(A) / static_cast<double>(n);
    if (shift(A, c).frobenius_norm() <= 1e-14 * scale) {
      res.point = c;
      res.min_norm = f(c.real(), c.imag());
      res.certificate_margin = certificate(A, c).margin;
      return res;
    }
  }

  // bounding box of cl W(A) from four support directions, inflated 5%
  const double sup0 = support_function(A, 0.0).value;
  const double supPi = support_function(A, M_PI).value;
  const double supHalf = support_function(A, M_PI / 2).value;
  const double sup3Half = support_function(A, 3 * M_PI / 2).value;
  double cx = 0.5 * (sup0 - supPi), cy = 0.5 * (supHalf - sup3Half);
  double hx = 0.5 * (sup0 + supPi), hy = 0.5 * (supHalf + sup3Half);
  hx = std::max(1.05 * hx, 1e-6 * scale);
  hy = std::max(1.05 * hy, 1e-6 * scale);

  // coarse 21x21 grid seed; ties broken lexicographically by (Re, Im)
  Vertex best{cx, cy, f(cx, cy)};
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j) {
      const double x = cx - hx + 2.0 * hx * i / 20.0;
      const double y = cy - hy + 2.0 * hy * j / 20.0;
      const double v = f(x, y);
      if (v < best.f) best = {x, y, v};
    }

  const double diam_tol = tol * scale;
  long iters = nelder_mead(f, best, std::max(hx, hy) / 10.0, diam_tol, 5000);
  if (iters >= 5000) {
    res.point = Complex(best.x, best.y);
    res.min_norm = best.f;
    res.iterations = iters;
    throw StConvergenceError("st_oracle: simplex iteration cap exceeded", res);
  }
  for (int restart = 0; restart < 2; ++restart) {
    const double h = std::max(1000.0 * diam_tol, 1e-7 * scale);
    iters += nelder_mead(f, best, h, diam_tol, 5000);
  }

  // Newton polish on the analytic gradient, only in the smooth regime. The
  // finite-difference step for the Hessian follows |grad| down so the probes
  // stay inside the current smooth sheet of the top singular value.
  {
    double gx, gy;
    if (sigma_gradient(A, best.x, best.y, &gx, &gy)) {
      double px = best.x, py = best.y;
      double gnorm = std::hypot(gx, gy);
      double bx = px, by = py, bg = gnorm;
      for (int step = 0; step < 40; ++step) {
        if (gnorm < 1e-14) break;
        const double hstep =
            std::clamp(0.3 * gnorm, 1e-9 * scale, 3e-6 * scale);
        double gpx, gpy, gmx, gmy, gqx, gqy, grx, gry;
        if (!sigma_gradient(A, px + hstep, py, &gpx, &gpy) ||
            !sigma_gradient(A, px - hstep, py, &gmx, &gmy) ||
            !sigma_gradient(A, px, py + hstep, &gqx, &gqy) ||
            !sigma_gradient(A, px, py - hstep, &grx, &gry))
          break;
        double hxx = (gpx - gmx) / (2 * hstep);
        double hxy = 0.5 * ((gpy - gmy) / (2 * hstep) + (gqx - grx) / (2 * hstep));
        double hyy = (gqy - gry) / (2 * hstep);
        // keep the Newton system positive definite
        const double tr2 = 0.5 * (hxx + hyy);
        const double dsc = std::sqrt(std::max(0.0, tr2 * tr2 - (hxx * hyy - hxy * hxy)));
        const double lmin = tr2 - dsc;
        if (lmin < 1e-12) {
          const double boost = 1e-12 - lmin;
          hxx += boost;
          hyy += boost;
        }
        const double dd = hxx * hyy - hxy * hxy;
        if (dd <= 0.0) break;
        const double dx = -(hyy * gx - hxy * gy) / dd;
        const double dy = -(-hxy * gx + hxx * gy) / dd;
        if (!std::isfinite(dx) || !std::isfinite(dy) || std::hypot(dx, dy) > 0.2 * scale) break;
        // damped step accepted only when it reduces |grad|
        bool moved = false;
        for (double t : {1.0, 0.5, 0.25, 0.1}) {
          double nx = px + t * dx, ny = py + t * dy, ngx, ngy;
          if (!sigma_gradient(A, nx, ny, &ngx, &ngy)) continue;
          if (std::hypot(ngx, ngy) < gnorm) {
            px = nx;
            py = ny;
            gx = ngx;
            gy = ngy;
            gnorm = std::hypot(gx, gy);
            moved = true;
            break;
          }
        }
        ++iters;
        if (!moved) break;
        if (gnorm < bg) {
          bx = px;
          by = py;
          bg = gnorm;
        }
        if (std::hypot(dx, dy) < 1e-13 * scale) break;
      }
      const double fp = f(bx, by);
      if (std::isfinite(fp) && fp <= best.f * (1.0 + 4e-15)) {
        best = {bx, by, fp};
      }
    }
  }

  res.point = Complex(best.x, best.y);
  res.min_norm = f(best.x, best.y);
  res.iterations = iters;
  res.certificate_margin = certificate(A, res.point).margin;
  return res;
}

std::vector<double> f_profile(const CMatrix& A, const std::vector<Complex>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Complex& p : points) out.push_back(operator_norm(shift(A, p)));
  return out;
}

}  // namespace stampfli
