#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "stampfli.h"

namespace {

struct Matrix {
  st_matrix* m = nullptr;
  ~Matrix() { st_matrix_free(m); }
};

}  // namespace

TEST_CASE("create, entry access, dimension") {
  const double data[] = {0, 0, 1, 0, 0, 0, 2, 0};  // [[0,1],[0,2]]
  Matrix m;
  REQUIRE(st_matrix_create(2, data, &m.m) == ST_OK);
  CHECK(st_matrix_dim(m.m) == 2);
  double re = 0, im = 0;
  REQUIRE(st_matrix_entry(m.m, 0, 1, &re, &im) == ST_OK);
  CHECK(re == 1.0);
  CHECK(st_matrix_entry(m.m, 2, 0, &re, &im) == ST_ERR_INVALID_ARG);
  CHECK(st_matrix_create(0, data, &m.m) == ST_ERR_INVALID_ARG);

  const double bad[] = {std::nan(""), 0, 0, 0, 0, 0, 0, 0};
  st_matrix* out = nullptr;
  CHECK(st_matrix_create(2, bad, &out) == ST_ERR_INVALID_ARG);
  CHECK(std::strlen(st_last_error()) > 0);
}

TEST_CASE("json parsing and error codes") {
  st_matrix* m = nullptr;
  REQUIRE(st_matrix_parse_json("{\"n\": 2, \"data\": [[0,0],[1,0],[0,0],[2,0]]}", &m) == ST_OK);
  Matrix holder;
  holder.m = m;
  CHECK(st_matrix_dim(m) == 2);

  st_matrix* bad = nullptr;
  CHECK(st_matrix_parse_json("not json", &bad) == ST_ERR_PARSE);
  CHECK(st_matrix_parse_json("{\"n\": 2, \"data\": [[0,0]]}", &bad) == ST_ERR_PARSE);
  CHECK(st_matrix_parse_json("{\"n\": 1, \"data\": [[1e400, 0]]}", &bad) == ST_ERR_PARSE);
}

TEST_CASE("compute modes and result fields") {
  const double data[] = {0, 0, 1, 0, 0, 0, 2, 0};
  Matrix m;
  REQUIRE(st_matrix_create(2, data, &m.m) == ST_OK);

  st_result r{};
  REQUIRE(st_compute(m.m, ST_MODE_AUTO, 1e-9, &r) == ST_OK);
  CHECK(r.method == ST_METHOD_TWO_BY_TWO);
  CHECK(std::abs(r.point_re - 1.0) <= 1e-12);
  CHECK(std::abs(r.point_im) <= 1e-12);
  CHECK(std::string(st_method_name_str(r.method)) == "two_by_two");

  st_result ro{};
  REQUIRE(st_compute(m.m, ST_MODE_ORACLE, 1e-9, &ro) == ST_OK);
  CHECK(std::hypot(ro.point_re - 1.0, ro.point_im) <= 1e-6);
  CHECK(ro.method == ST_METHOD_ORACLE);

  st_result rc{};
  REQUIRE(st_compute(m.m, ST_MODE_CLOSED, 1e-9, &rc) == ST_OK);
  CHECK(rc.method == ST_METHOD_TWO_BY_TWO);

  double nrm = 0;
  REQUIRE(st_operator_norm(m.m, &nrm) == ST_OK);
  // min_norm is consistent with the norm at the shifted matrix
  st_matrix* sh = nullptr;
  REQUIRE(st_matrix_shift(m.m, r.point_re, r.point_im, &sh) == ST_OK);
  Matrix shifted;
  shifted.m = sh;
  double resid = 0;
  REQUIRE(st_operator_norm(sh, &resid) == ST_OK);
  CHECK(std::abs(resid - r.min_norm) <= 1e-12 * (1.0 + nrm));
}

TEST_CASE("closed mode fails when no closed form applies") {
  // diag with three distinct eigenvalues plus a generic top row
  const double data[] = {1, 0, 1, 0, 1, 0, 0, 0, 2, 0, 1, 0, 0, 0, 0, 0, 5, 0};
  Matrix m;
  REQUIRE(st_matrix_create(3, data, &m.m) == ST_OK);
  st_result r{};
  CHECK(st_compute(m.m, ST_MODE_CLOSED, 1e-9, &r) == ST_ERR_INVALID_ARG);
  CHECK(st_compute(m.m, ST_MODE_AUTO, 1e-9, &r) == ST_OK);
  CHECK(r.method == ST_METHOD_ORACLE);
}

TEST_CASE("root diagnostics surface through the C API") {
  const double data[] = {0, 0, 8, 0, -1, 0, 0, 0, 0, 0, 7.5, 0, 0, 0, 0, 0, 0, 0};
  Matrix m;
  REQUIRE(st_matrix_create(3, data, &m.m) == ST_OK);
  st_result r{};
  REQUIRE(st_compute(m.m, ST_MODE_AUTO, 1e-9, &r) == ST_OK);
  CHECK(r.method == ST_METHOD_SINGLETON3_GENERAL);
  CHECK(r.root_count == 3);
  CHECK(r.selected_root == 0);
  CHECK(r.root_warning == 0);
  CHECK(std::abs(r.roots[0] - 0.833) <= 5e-3);
  CHECK(std::abs(r.roots[2] - 2.101) <= 5e-3);
}

TEST_CASE("boundary, w0 and hull endpoints") {
  const double data[] = {0, 0, 1, 0, 0, 0, 0, 0};  // Jordan block
  Matrix m;
  REQUIRE(st_matrix_create(2, data, &m.m) == ST_OK);

  const int K = 32;
  double theta[K], re[K], im[K];
  REQUIRE(st_nr_boundary(m.m, K, theta, re, im) == ST_OK);
  for (int k = 0; k < K; ++k) CHECK(std::hypot(re[k], im[k]) <= 0.5 + 1e-9);

  double support[K], wre[K], wim[K], margin = 0;
  int contains = 0;
  REQUIRE(st_w0_region(m.m, 0, 0, K, theta, support, wre, wim, &margin, &contains) == ST_OK);
  CHECK(contains == 1);
  CHECK(std::abs(margin) <= 1e-9);  // W0 is the singleton {0}

  // shifted so that 0 is no longer a member
  REQUIRE(st_w0_region(m.m, 2.0, 0.0, K, theta, support, wre, wim, &margin, &contains) == ST_OK);
  CHECK(contains == 0);

  const double diag3[] = {1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1};
  Matrix d;
  REQUIRE(st_matrix_create(3, diag3, &d.m) == ST_OK);
  double hre[3], him[3];
  int count = 3;
  REQUIRE(st_spectrum_hull(d.m, hre, him, &count) == ST_OK);
  CHECK(count == 3);
}

TEST_CASE("roberts endpoint") {
  const double data[] = {0, 0, 1, 0, 0, 0, 0, 0};
  Matrix m;
  REQUIRE(st_matrix_create(2, data, &m.m) == ST_OK);
  st_roberts_report r{};
  REQUIRE(st_roberts(m.m, 1e-8, &r) == ST_OK);
  CHECK(r.orthogonal == 1);
  CHECK(r.stampfli_zero == 1);
  CHECK(r.classification == ST_ROBERTS_NILPOTENT_QUADRATIC);
  CHECK(std::string(st_roberts_class_name_str(r.classification)) == "nilpotent_quadratic");
}

TEST_CASE("almost-normal builder") {
  const double lam_pairs[] = {1, 0, 0, 1};
  const double bs[] = {0.5, 0.5};
  st_matrix* m = nullptr;
  REQUIRE(st_matrix_almost_normal(3, lam_pairs, bs, -1, 0, &m) == ST_OK);
  Matrix holder;
  holder.m = m;
  double re = 0, im = 0;
  REQUIRE(st_matrix_entry(m, 0, 2, &re, &im) == ST_OK);
  CHECK(re == 0.5);
  const double neg_b[] = {-0.5, 0.5};
  st_matrix* bad = nullptr;
  CHECK(st_matrix_almost_normal(3, lam_pairs, neg_b, -1, 0, &bad) == ST_ERR_INVALID_ARG);
}

TEST_CASE("status strings") {
  CHECK(std::string(st_status_message(ST_OK)) == "ok");
  CHECK(std::string(st_status_message(ST_ERR_PARSE)) == "parse error");
}
