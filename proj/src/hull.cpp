#include "stampfli/hull.hpp"

#include <algorithm>
#include <cmath>

namespace stampfli {

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(Complex a, Complex b, Complex p) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Complex> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double hull_signed_distance(const std::vector<Complex>& hull, Complex p) {
  if (hull.empty()) return -std::abs(p);
  if (hull.size() == 1) return -std::abs(p - hull[0]);
  if (hull.size() == 2) return -segment_distance(hull[0], hull[1], p);
  double d = 1e300;
  for (size_t i = 0; i < hull.size(); ++i) {
    const Complex a = hull[i];
    const Complex b = hull[(i + 1) % hull.size()];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    d = std::min(d, cross(a, b, p) / len);  // positive on the interior side (ccw hull)
  }
  return d;
}

}  // namespace stampfli
