#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stampfli/eigen.hpp"
#include "stampfli/numrange.hpp"
#include "support/testutil.hpp"

using namespace stampfli;
using testutil::Rng;

TEST_CASE("support_function on diag(0,1) and the Jordan block") {
  const CMatrix D = CMatrix::diagonal({0.0, 1.0});
  const SupportSample s0 = support_function(D, 0.0);
  CHECK(s0.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s0.witness - Complex(1.0)) <= 1e-12);
  const SupportSample spi = support_function(D, M_PI);
  CHECK(spi.value == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(spi.witness) <= 1e-12);

  CMatrix J(2);
  J(0, 1) = 1.0;
  for (double th : {0.0, 0.7, 2.0, 4.4}) {
    CHECK(support_function(J, th).value == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("nr_boundary: Hermitian segment, circular disk, normal triangle") {
  CHECK_THROWS_AS(nr_boundary(CMatrix::identity(2), 8), InputError);

  const CMatrix H = CMatrix::diagonal({0.0, 1.0});
  const PolygonRegion rh = nr_boundary(H, 64);
  for (const Complex& w : rh.witnesses) {
    CHECK(std::abs(w.imag()) <= 1e-10);
    CHECK(w.real() >= -1e-10);
    CHECK(w.real() <= 1.0 + 1e-10);
  }

  CMatrix F1(3);  // circular numerical range centered at 0
  F1(0, 1) = Complex(2, -1);
  F1(1, 2) = Complex(0, 2);
  const PolygonRegion rc = nr_boundary(F1, 128);
  double lo = rc.support.front(), hi = lo;
  for (double s : rc.support) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo <= 1e-8);

  const CMatrix N = CMatrix::diagonal({0.0, 1.0, Complex(0, 1)});
  const PolygonRegion rn = nr_boundary(N, 64);
  CHECK(rn.support[0] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("PolygonRegion invariants: witnesses against supporting half-planes") {
  Rng rng(201);
  const CMatrix A = rng.random_matrix(4);
  const double scale = operator_norm(A);
  const PolygonRegion R = nr_boundary(A, 96);
  for (size_t j = 0; j < R.witnesses.size(); ++j) {
    // each witness attains its own support value
    const double v = (std::polar(1.0, -R.angles[j]) * R.witnesses[j]).real();
    CHECK(std::abs(v - R.support[j]) <= 1e-9 * scale);
    // and stays inside every other half-plane
    for (size_t k = 0; k < R.angles.size(); k += 7) {
      const double proj = (std::polar(1.0, -R.angles[k]) * R.witnesses[j]).real();
      CHECK(proj <= R.support[k] + 1e-9 * scale);
    }
  }
}

TEST_CASE("compress_to_top: Jordan block, indefinite diagonal, identity") {
  CMatrix J(2);
  J(0, 1) = 1.0;
  const CompressionResult c = compress_to_top(J);
  CHECK(c.subspace_dim == 1);
  CHECK(c.top_value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c.B(0, 0)) <= 1e-14);
  CHECK(std::abs(std::abs(c.isometry(1, 0)) - 1.0) <= 1e-12);  // span{e2}

  const CMatrix D = CMatrix::diagonal({2.0, -2.0, 1.0});
  const CompressionResult cd = compress_to_top(D);
  CHECK(cd.subspace_dim == 2);
  CHECK(cd.top_value == doctest::Approx(4.0).epsilon(1e-14));
  const auto be = eigenvalues(cd.B);
  CHECK(std::abs(std::abs(be[0]) - 2.0) <= 1e-12);
  CHECK(std::abs(std::abs(be[1]) - 2.0) <= 1e-12);
  CHECK(std::abs(be[0] + be[1]) <= 1e-12);  // {2, -2}

  const CompressionResult ci = compress_to_top(CMatrix::identity(3));
  CHECK(ci.subspace_dim == 3);

  CHECK_THROWS_AS(compress_to_top(CMatrix(2)), InputError);
}

TEST_CASE("max_numerical_range: singleton, segment, xyz0 membership") {
  CMatrix J(2);
  J(0, 1) = 1.0;
  const PolygonRegion r = max_numerical_range(J, 64);
  for (double s : r.support) CHECK(std::abs(s) <= 1e-12);  // the singleton {0}

  const CMatrix D = CMatrix::diagonal({2.0, -2.0, 1.0});
  const PolygonRegion rd = max_numerical_range(D, 64);
  CHECK(rd.support[0] == doctest::Approx(2.0).epsilon(1e-12));   // theta = 0
  CHECK(rd.support[16] == doctest::Approx(0.0).epsilon(1e-12));  // theta = pi/2
  CHECK(contains_zero(rd, 2.0).contains);

  // triangular form with z = 0 and x = y != 0: W0 contains 0
  const CMatrix A = testutil::triangle3(0.0, 1.3, 1.3, 0.0);
  const ZeroMembership z = contains_zero(max_numerical_range(A, 128), operator_norm(A));
  CHECK(z.contains);
}

TEST_CASE("contains_zero margins") {
  PolygonRegion R;
  for (int k = 0; k < 32; ++k) {
    R.angles.push_back(2 * M_PI * k / 32);
    R.support.push_back(0.0);  // the singleton {0}
    R.witnesses.push_back(0.0);
  }
  const ZeroMembership z = contains_zero(R, 1.0);
  CHECK(z.contains);
  CHECK(z.margin == doctest::Approx(0.0));

  // disk of radius 1 centered at 2: support = 2 cos(theta) + 1
  PolygonRegion Rd;
  for (int k = 0; k < 64; ++k) {
    const double th = 2 * M_PI * k / 64;
    Rd.angles.push_back(th);
    Rd.support.push_back(2.0 * std::cos(th) + 1.0);
    Rd.witnesses.push_back(2.0 + std::polar(1.0, th));
  }
  const ZeroMembership zd = contains_zero(Rd, 3.0);
  CHECK(!zd.contains);
  CHECK(zd.margin == doctest::Approx(-1.0).epsilon(1e-12));

  // segment [-2, 2]
  const ZeroMembership zs =
      contains_zero(max_numerical_range(CMatrix::diagonal({2.0, -2.0}), 64), 2.0);
  CHECK(zs.contains);
  CHECK(zs.margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("W0 is contained in cl W(A)") {
  Rng rng(202);
  for (int t = 0; t < 8; ++t) {
    const int n = 2 + t % 4;
    const CMatrix A = rng.random_matrix(n);
    const int K = 72;
    const PolygonRegion w = nr_boundary(A, K);
    const PolygonRegion w0 = max_numerical_range(A, K);
    const double nrm = operator_norm(A);
    for (int k = 0; k < K; ++k)
      CHECK(w0.support[static_cast<size_t>(k)] <=
            w.support[static_cast<size_t>(k)] + 1e-8 * nrm);
  }
}

TEST_CASE("rotation and shift equivariance of W(A)") {
  Rng rng(203);
  const CMatrix A = rng.random_matrix(3);
  const double nrm = operator_norm(A);
  for (double alpha : {0.3, 1.2, -0.8}) {
    const CMatrix B = Complex(std::polar(1.0, alpha)) * A;
    for (double th : {0.1, 1.0, 3.0, 5.5}) {
      CHECK(std::abs(support_function(B, th).value - support_function(A, th - alpha).value) <=
            1e-9 * nrm);
    }
  }
  for (const Complex c : {Complex(0.7, -0.4), Complex(-2.0, 1.0)}) {
    const CMatrix B = shift(A, -c);  // A + cI
    for (double th : {0.0, 0.9, 2.6, 4.1}) {
      const double expected =
          support_function(A, th).value + (std::polar(1.0, -th) * c).real();
      CHECK(std::abs(support_function(B, th).value - expected) <= 1e-9 * (nrm + std::abs(c)));
    }
  }
}
