#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "stampfli/eigen.hpp"
#include "support/testutil.hpp"

using namespace stampfli;
using testutil::Rng;

namespace {

double residual_eigenpair(const CMatrix& H, const HermEigen& e, int k) {
  CVector v(static_cast<size_t>(H.size()));
  for (int i = 0; i < H.size(); ++i) v[static_cast<size_t>(i)] = e.vectors(i, k);
  CVector Hv = matvec(H, v);
  for (int i = 0; i < H.size(); ++i)
    Hv[static_cast<size_t>(i)] -= e.values[static_cast<size_t>(k)] * v[static_cast<size_t>(i)];
  return vec_norm(Hv);
}

}  // namespace

TEST_CASE("operator_norm basics") {
  CHECK(operator_norm(CMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-14));

  CMatrix J(2);
  J(0, 1) = 1.0;
  CHECK(operator_norm(J) == doctest::Approx(1.0).epsilon(1e-14));

  // ||A + I|| and ||A - I|| for the 3x3 example with a circular range
  CMatrix A(3);
  A(0, 1) = 1.0;
  A(0, 2) = 1.0;
  A(1, 2) = 1.0;
  A(2, 2) = -0.5;
  CHECK(operator_norm(shift(A, Complex(-1.0))) == doctest::Approx(2.1617).epsilon(3e-4));
  CHECK(operator_norm(shift(A, Complex(1.0))) == doctest::Approx(2.1366).epsilon(3e-4));

  CMatrix N(2);
  N(0, 0) = std::nan("");
  CHECK_THROWS_AS(operator_norm(N), InputError);
}

TEST_CASE("operator_norm of the adjoint matches") {
  Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    const CMatrix A = rng.random_matrix(2 + t % 5);
    const double n1 = operator_norm(A);
    const double n2 = operator_norm(A.adjoint());
    CHECK(std::abs(n1 - n2) <= 1e-12 * n1);
  }
}

TEST_CASE("unitary invariance of the operator norm") {
  Rng rng(102);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    const CMatrix A = rng.random_matrix(n);
    const CMatrix U = rng.random_unitary(n);
    const CMatrix V = rng.random_unitary(n);
    const double base = operator_norm(A);
    CHECK(std::abs(operator_norm(U * A * V) - base) <= 1e-10 * base);
  }
}

TEST_CASE("hermitian_eigen diagonal and 2x2") {
  const CMatrix D = CMatrix::diagonal({3.0, 1.0, 2.0});
  const HermEigen e = hermitian_eigen(D);
  REQUIRE(e.values.size() == 3);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e.values[2] == doctest::Approx(3.0).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) {
    int nonzero = 0;
    for (int i = 0; i < 3; ++i)
      if (std::abs(e.vectors(i, k)) > 1e-8) ++nonzero;
    CHECK(nonzero == 1);  // permutation of the standard basis
  }

  CMatrix H(2);
  H(0, 0) = 2.0;
  H(0, 1) = 1.0;
  H(1, 0) = 1.0;
  H(1, 1) = 2.0;
  const HermEigen e2 = hermitian_eigen(H);
  CHECK(e2.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e2.values[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen of A*A for the normalized doubleton form") {
  // x = 1, y = 0, z = 1: A*A = diag(0, 1, z^2 + 1)
  const CMatrix A = testutil::doubleton3(0.0, 1.0, 1.0, 0.0, 1.0);
  const HermEigen e = hermitian_eigen(A.adjoint() * A);
  CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[2] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  CMatrix H(2);
  H(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigen(H), InputError);
}

TEST_CASE("hermitian_eigen residuals and orthonormality on random input") {
  Rng rng(103);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 6;
    CMatrix G = rng.random_matrix(n);
    const CMatrix H = G + G.adjoint();
    const double hn = H.frobenius_norm();
    const HermEigen e = hermitian_eigen(H);
    for (int k = 0; k < n; ++k) CHECK(residual_eigenpair(H, e, k) <= 1e-10 * hn);
    const CMatrix VtV = e.vectors.adjoint() * e.vectors;
    CHECK((VtV - CMatrix::identity(n)).frobenius_norm() <= 1e-10);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST_CASE("eigenvalues: triangular, involution, figure matrix") {
  CMatrix T(3);
  T(0, 0) = 1.0;
  T(1, 1) = Complex(0, 2);
  T(2, 2) = -3.0;
  T(0, 1) = 5.0;
  T(1, 2) = 2.0;
  auto e = eigenvalues(T);
  std::sort(e.begin(), e.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(e[0] - Complex(-3.0)) <= 1e-12);
  CHECK(std::abs(e[1] - Complex(0, 2)) <= 1e-12);
  CHECK(std::abs(e[2] - Complex(1.0)) <= 1e-12);

  CMatrix S(2);
  S(0, 1) = 1.0;
  S(1, 0) = 1.0;
  auto es = eigenvalues(S);
  std::sort(es.begin(), es.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(es[0] + 1.0) <= 1e-14);
  CHECK(std::abs(es[1] - 1.0) <= 1e-14);

  // diag of the almost-normal figure matrix
  CMatrix F(3);
  F(0, 0) = Complex(2, 1);
  F(0, 2) = Complex(2, -2);
  F(1, 1) = Complex(0, 1);
  F(1, 2) = 2.0;
  F(2, 2) = -5.0;
  auto ef = eigenvalues(F);
  std::sort(ef.begin(), ef.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(ef[0] + 5.0) <= 1e-12);
  CHECK(std::abs(ef[1] - Complex(0, 1)) <= 1e-12);
  CHECK(std::abs(ef[2] - Complex(2, 1)) <= 1e-12);
}

TEST_CASE("eigenvalues satisfy trace and determinant identities") {
  Rng rng(104);
  for (int t = 0; t < 24; ++t) {
    const int n = 2 + t % 6;  // exercises both closed forms and QR
    const CMatrix A = rng.random_matrix(n);
    const auto e = eigenvalues(A);
    REQUIRE(static_cast<int>(e.size()) == n);
    Complex sum = 0.0, prod = 1.0;
    for (const Complex& z : e) {
      sum += z;
      prod *= z;
    }
    const double tolscale = 1e-8 * std::pow(1.0 + operator_norm(A), n);
    CHECK(std::abs(sum - trace(A)) <= tolscale);
    CHECK(std::abs(prod - det(A)) <= tolscale);
  }
}

TEST_CASE("schur_triangularize: triangular input, normal input, repeated eigenvalue") {
  // already triangular: T must equal A up to diagonal phases, U diagonal
  CMatrix A = testutil::triangle3(1.0, 2.0, -1.0, 0.5);
  A(1, 1) = 3.0;
  A(2, 2) = Complex(0, 1);
  const std::vector<Complex> order = {A(0, 0), A(1, 1), A(2, 2)};
  const SchurForm s = schur_triangularize(A, order);
  CHECK((s.U.adjoint() * A * s.U - s.T).frobenius_norm() <= 1e-9 * A.frobenius_norm());
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s.T(i, i) - order[static_cast<size_t>(i)]) <= 1e-9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(s.U(i, j)) <= 1e-9);

  // normal matrix: T is diagonal within tolerance
  Rng rng(105);
  const CMatrix U = rng.random_unitary(3);
  const CMatrix N = testutil::conjugate(U, CMatrix::diagonal({Complex(1, 1), -2.0, Complex(0, -1)}));
  const auto eN = eigenvalues(N);
  const SchurForm sn = schur_triangularize(N, eN);
  double off = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) off += std::norm(sn.T(i, j));
  CHECK(std::sqrt(off) <= 1e-8 * N.frobenius_norm());

  // sigma = {1, 1, 2} ordered with the repeated eigenvalue first
  const CMatrix M0 = testutil::doubleton3(1.0, 2.0, 0.7, -0.3, 1.1);
  const CMatrix M = testutil::conjugate(rng.random_unitary(3), M0);
  const SchurForm sm = schur_triangularize(M, {1.0, 1.0, 2.0});
  CHECK(std::abs(sm.T(0, 0) - 1.0) <= 1e-6);
  CHECK(std::abs(sm.T(1, 1) - 1.0) <= 1e-6);
  CHECK(std::abs(sm.T(2, 2) - 2.0) <= 1e-6);
  CHECK((sm.U.adjoint() * M * sm.U - sm.T).frobenius_norm() <= 1e-8 * M.frobenius_norm());
}

TEST_CASE("schur_triangularize rejects a wrong order") {
  const CMatrix A = CMatrix::diagonal({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(schur_triangularize(A, {1.0, 2.0, 5.0}), InputError);
}

TEST_CASE("schur residual and unitarity on random 3x3") {
  Rng rng(106);
  for (int t = 0; t < 20; ++t) {
    const CMatrix A = rng.random_matrix(3);
    const SchurForm s = schur_triangularize(A, eigenvalues(A));
    CHECK((s.U.adjoint() * A * s.U - s.T).frobenius_norm() <= 1e-9 * A.frobenius_norm());
    CHECK((s.U.adjoint() * s.U - CMatrix::identity(3)).frobenius_norm() <= 1e-10);
  }
}

TEST_CASE("cluster_spectrum") {
  const auto c1 = cluster_spectrum({{2.0, 0.0}, {2.0, 0.0}, {2.0, 0.0}}, 2.0);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].multiplicity == 3);

  const auto c2 = cluster_spectrum({{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}, 2.0);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0].multiplicity == 2);
  CHECK(std::abs(c2[0].center - Complex(1.0)) <= 1e-14);
  CHECK(c2[1].multiplicity == 1);

  // threshold arithmetic: tau = 1e-7 * (1 + 5) merges {0, 1e-9}
  const auto c3 = cluster_spectrum({{0.0, 0.0}, {1e-9, 0.0}, {5.0, 0.0}}, 5.0);
  REQUIRE(c3.size() == 2);
  CHECK(c3[0].multiplicity == 2);
  CHECK(c3[0].center.real() == doctest::Approx(5e-10).epsilon(1e-9));
  CHECK(c3[1].center.real() == doctest::Approx(5.0));

  int total = 0;
  for (const auto& c : c3) total += c.multiplicity;
  CHECK(total == 3);
}
