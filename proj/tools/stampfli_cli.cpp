// Batch CLI for Stampfli-point computations. Talks to the shared library
// exclusively through the C interface in stampfli.h.
//
// Subcommands: st | nr | w0 | roberts | verify | figures
// Exit codes:  0 ok, 1 failed verification, 2 malformed input, 3 convergence.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stampfli.h"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitConvergence = 3;

struct MatrixDeleter {
  void operator()(st_matrix* m) const { st_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<st_matrix, MatrixDeleter>;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  int code;
};

int status_to_exit(st_status s) {
  switch (s) {
    case ST_OK: return 0;
    case ST_ERR_PARSE:
    case ST_ERR_INVALID_ARG: return kExitBadInput;
    default: return kExitConvergence;
  }
}

void check(st_status s, const std::string& context) {
  if (s != ST_OK)
    throw CliError(status_to_exit(s),
                   context + ": " + st_status_message(s) + " (" + st_last_error() + ")");
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

MatrixPtr load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitBadInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  st_matrix* m = nullptr;
  check(st_matrix_parse_json(ss.str().c_str(), &m), path);
  return MatrixPtr(m);
}

// Output sink: --out file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) : to_file_(!path.empty()) {
    if (to_file_) {
      file_.open(path, std::ios::binary);
      if (!file_) throw CliError(kExitBadInput, "cannot write " + path);
    }
  }
  void line(const std::string& s) {
    if (to_file_)
      file_ << s << "\n";
    else
      std::fputs((s + "\n").c_str(), stdout);
  }

 private:
  bool to_file_;
  std::ofstream file_;
};

// Deterministic RNG for the verify corpus (independent of libc distributions).
class Rng {
 public:
  explicit Rng(uint32_t seed) : gen_(seed) {}
  double uniform() {
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

 private:
  std::mt19937 gen_;
};

MatrixPtr make_matrix(int n, const std::vector<std::complex<double>>& entries) {
  std::vector<double> flat;
  flat.reserve(entries.size() * 2);
  for (const auto& z : entries) {
    flat.push_back(z.real());
    flat.push_back(z.imag());
  }
  st_matrix* m = nullptr;
  check(st_matrix_create(n, flat.data(), &m), "matrix construction");
  return MatrixPtr(m);
}

// The four appendix-style reference matrices.
MatrixPtr figure_matrix(int index) {
  using C = std::complex<double>;
  switch (index) {
    case 1: return make_matrix(3, {0, C(2, -1), 0, 0, 0, C(0, 2), 0, 0, 0});
    case 2: return make_matrix(3, {C(2, 1), 0, C(2, -2), 0, C(0, 1), 2, 0, 0, -5});
    case 3: return make_matrix(3, {0, C(3, -4), -5, 0, 0, C(-4, 3), 0, 0, 0});
    default: return make_matrix(3, {0, C(1, -4), C(-3, -2), 0, 0, C(1, 5), 0, 0, 0});
  }
}

st_result compute_or_throw(const st_matrix* m, int mode, double tol) {
  st_result r{};
  check(st_compute(m, mode, tol, &r), "st computation");
  return r;
}

void emit_result_record(Sink& out, const std::string& path, const st_matrix* m,
                        const st_result& r, double elapsed_ms) {
  const int n = st_matrix_dim(m);
  std::vector<double> re(static_cast<size_t>(n)), im(static_cast<size_t>(n));
  check(st_eigenvalues(m, re.data(), im.data()), "eigenvalues");
  std::string rec = "{\"input_path\": \"" + path + "\"";
  rec += ", \"st_point\": [" + fmt17(r.point_re) + ", " + fmt17(r.point_im) + "]";
  rec += ", \"min_norm\": " + fmt17(r.min_norm);
  rec += std::string(", \"method\": \"") + st_method_name_str(r.method) + "\"";
  rec += ", \"certificate_margin\": " + fmt17(r.certificate_margin);
  rec += ", \"spectrum\": [";
  for (int k = 0; k < n; ++k) {
    if (k) rec += ", ";
    rec += "[" + fmt17(re[static_cast<size_t>(k)]) + ", " + fmt17(im[static_cast<size_t>(k)]) + "]";
  }
  rec += "], \"elapsed_ms\": " + fmt17(elapsed_ms) + "}";
  out.line(rec);
}

void emit_nr_table(Sink& out, const st_matrix* m, int samples, double tol, bool with_hull) {
  std::vector<double> theta(static_cast<size_t>(samples)), re(static_cast<size_t>(samples)),
      im(static_cast<size_t>(samples));
  check(st_nr_boundary(m, samples, theta.data(), re.data(), im.data()), "boundary");
  for (int k = 0; k < samples; ++k)
    out.line(fmt17(theta[static_cast<size_t>(k)]) + "," + fmt17(re[static_cast<size_t>(k)]) + "," +
             fmt17(im[static_cast<size_t>(k)]));
  const int n = st_matrix_dim(m);
  std::vector<double> ere(static_cast<size_t>(n)), eim(static_cast<size_t>(n));
  check(st_eigenvalues(m, ere.data(), eim.data()), "eigenvalues");
  for (int k = 0; k < n; ++k)
    out.line("eig," + fmt17(ere[static_cast<size_t>(k)]) + "," + fmt17(eim[static_cast<size_t>(k)]));
  if (with_hull) {
    int hull_count = n;
    std::vector<double> hre(static_cast<size_t>(n)), him(static_cast<size_t>(n));
    check(st_spectrum_hull(m, hre.data(), him.data(), &hull_count), "spectrum hull");
    for (int k = 0; k < hull_count; ++k)
      out.line("hull," + fmt17(hre[static_cast<size_t>(k)]) + "," +
               fmt17(him[static_cast<size_t>(k)]));
  }
  const st_result r = compute_or_throw(m, ST_MODE_AUTO, tol);
  out.line("st," + fmt17(r.point_re) + "," + fmt17(r.point_im));
}

int cmd_st(const std::string& path, const std::string& method, double tol, const std::string& outp) {
  const MatrixPtr m = load_matrix(path);
  int mode = ST_MODE_AUTO;
  if (method == "oracle") mode = ST_MODE_ORACLE;
  if (method == "closed") mode = ST_MODE_CLOSED;
  const auto t0 = std::chrono::steady_clock::now();
  const st_result r = compute_or_throw(m.get(), mode, tol);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  Sink out(outp);
  emit_result_record(out, path, m.get(), r, ms);
  return 0;
}

int cmd_nr(const std::string& path, int samples, double tol, const std::string& outp) {
  const MatrixPtr m = load_matrix(path);
  Sink out(outp);
  emit_nr_table(out, m.get(), samples, tol, /*with_hull=*/false);
  return 0;
}

int cmd_w0(const std::string& path, const std::string& shift_arg, int samples,
           const std::string& outp) {
  const MatrixPtr m = load_matrix(path);
  double sre = 0.0, sim = 0.0;
  if (!shift_arg.empty() &&
      std::sscanf(shift_arg.c_str(), "%lf,%lf", &sre, &sim) != 2)
    throw CliError(kExitBadInput, "--shift expects re,im");
  std::vector<double> theta(static_cast<size_t>(samples)), support(static_cast<size_t>(samples)),
      wre(static_cast<size_t>(samples)), wim(static_cast<size_t>(samples));
  double margin = 0.0;
  int contains = 0;
  check(st_w0_region(m.get(), sre, sim, samples, theta.data(), support.data(), wre.data(),
                     wim.data(), &margin, &contains),
        "w0 region");
  Sink out(outp);
  for (int k = 0; k < samples; ++k)
    out.line(fmt17(theta[static_cast<size_t>(k)]) + "," + fmt17(support[static_cast<size_t>(k)]) +
             "," + fmt17(wre[static_cast<size_t>(k)]) + "," + fmt17(wim[static_cast<size_t>(k)]));
  out.line("margin," + fmt17(margin));
  out.line(std::string("contains,") + (contains ? "1" : "0"));
  return 0;
}

int cmd_roberts(const std::string& path, double tol, const std::string& outp) {
  const MatrixPtr m = load_matrix(path);
  st_roberts_report r{};
  check(st_roberts(m.get(), tol, &r), "roberts report");
  Sink out(outp);
  std::string rec = std::string("{\"orthogonal\": ") + (r.orthogonal ? "true" : "false");
  rec += ", \"max_asymmetry\": " + fmt17(r.max_asymmetry);
  rec += ", \"worst_nu\": [" + fmt17(r.worst_nu_re) + ", " + fmt17(r.worst_nu_im) + "]";
  rec += std::string(", \"stampfli_zero\": ") + (r.stampfli_zero ? "true" : "false");
  rec += std::string(", \"classification\": \"") + st_roberts_class_name_str(r.classification) +
         "\"}";
  out.line(rec);
  return 0;
}

int cmd_figures(const std::string& dir, int samples, double tol) {
  if (dir.empty()) throw CliError(kExitBadInput, "figures: --out directory is required");
  for (int f = 1; f <= 4; ++f) {
    const MatrixPtr m = figure_matrix(f);
    const std::string path = dir + "/fig" + std::to_string(f) + ".csv";
    try {
      Sink out(path);
      emit_nr_table(out, m.get(), samples, tol, /*with_hull=*/true);
    } catch (const CliError&) {
      throw CliError(kExitBadInput, "figures: cannot write " + path);
    }
  }
  return 0;
}

// ---- verify -------------------------------------------------------------

struct VerifyContext {
  int failures = 0;
  void report(const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%-58s %s%s%s\n", name.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    if (!pass) ++failures;
  }
};

double point_dist(const st_result& r, double re, double im) {
  return std::hypot(r.point_re - re, r.point_im - im);
}

void verify_matrix(VerifyContext& ctx, const std::string& label, const st_matrix* m, double tol) {
  const st_result auto_r = compute_or_throw(m, ST_MODE_AUTO, tol);
  const st_result oracle_r = compute_or_throw(m, ST_MODE_ORACLE, tol);
  double nrm = 0.0;
  check(st_operator_norm(m, &nrm), "operator norm");
  const double scale = 1.0 + nrm;
  ctx.report(label + ": closed/auto vs oracle",
             point_dist(auto_r, oracle_r.point_re, oracle_r.point_im) <= 1e-6 * scale,
             std::string("method=") + st_method_name_str(auto_r.method));
  ctx.report(label + ": certificate margin", auto_r.certificate_margin >= -1e-6 * scale,
             "margin=" + fmt17(auto_r.certificate_margin));
  st_matrix* shifted = nullptr;
  check(st_matrix_shift(m, auto_r.point_re, auto_r.point_im, &shifted), "shift");
  const MatrixPtr sh(shifted);
  double resid_norm = 0.0;
  check(st_operator_norm(sh.get(), &resid_norm), "operator norm");
  ctx.report(label + ": min_norm consistency",
             std::abs(resid_norm - auto_r.min_norm) <= 1e-9 * scale);
  if (auto_r.root_count > 0) {
    std::string roots = "roots=" + std::to_string(auto_r.root_count) +
                        " selected=" + std::to_string(auto_r.selected_root);
    ctx.report(label + ": root selection", auto_r.selected_root >= 0, roots);
  }
}

int cmd_verify(const std::string& path, bool suite, double tol) {
  VerifyContext ctx;
  if (!suite) {
    if (path.empty()) throw CliError(kExitBadInput, "verify: need a matrix file or --suite");
    const MatrixPtr m = load_matrix(path);
    verify_matrix(ctx, path, m.get(), tol);
    return ctx.failures ? kExitVerifyFail : 0;
  }

  using C = std::complex<double>;
  // reference matrices
  for (int f = 1; f <= 4; ++f) {
    const MatrixPtr m = figure_matrix(f);
    verify_matrix(ctx, "figure " + std::to_string(f), m.get(), tol);
  }
  // triangular singleton examples with frozen displacements
  {
    const MatrixPtr e1 = make_matrix(3, {0, 8, -1, 0, 0, 7, 0, 0, 0});
    const st_result r1 = compute_or_throw(e1.get(), ST_MODE_AUTO, tol);
    ctx.report("triangle(8,-1,7): St = -0.7003", point_dist(r1, -0.7003, 0.0) <= 5e-4);
    verify_matrix(ctx, "triangle(8,-1,7)", e1.get(), tol);

    const MatrixPtr e2 = make_matrix(3, {0, 8, -1, 0, 0, 7.5, 0, 0, 0});
    const st_result r2 = compute_or_throw(e2.get(), ST_MODE_AUTO, tol);
    ctx.report("triangle(8,-1,7.5): three roots, smallest selected",
               r2.root_count == 3 && r2.selected_root == 0,
               "roots=" + std::to_string(r2.root_count) +
                   " selected=" + std::to_string(r2.selected_root));
    ctx.report("triangle(8,-1,7.5): St = -0.833", point_dist(r2, -0.833, 0.0) <= 5e-4);

    const MatrixPtr e3 = make_matrix(3, {0, 4, -2, 0, 0, 4, 0, 0, 0});
    const st_result r3 = compute_or_throw(e3.get(), ST_MODE_AUTO, tol);
    ctx.report("triangle(4,-2,4): St = -12/11", point_dist(r3, -12.0 / 11.0, 0.0) <= 1e-9);
  }
  // 2x2 batch: St = trace/2
  {
    Rng rng(42);
    int good = 0;
    const int total = 100;
    for (int t = 0; t < total; ++t) {
      std::vector<C> e(4);
      for (auto& z : e) z = C(rng.gaussian(), rng.gaussian());
      const MatrixPtr m = make_matrix(2, e);
      const st_result r = compute_or_throw(m.get(), ST_MODE_AUTO, tol);
      const st_result o = compute_or_throw(m.get(), ST_MODE_ORACLE, tol);
      double nrm = 0.0;
      check(st_operator_norm(m.get(), &nrm), "norm");
      const C tr2 = (e[0] + e[3]) / 2.0;
      const bool ok = r.method == ST_METHOD_TWO_BY_TWO &&
                      point_dist(r, tr2.real(), tr2.imag()) <= 1e-9 &&
                      point_dist(o, tr2.real(), tr2.imag()) <= 1e-7 * (1.0 + nrm);
      if (ok) ++good;
    }
    ctx.report("2x2 batch: trace/2 agreement", good == total,
               std::to_string(good) + "/" + std::to_string(total));
  }
  // scalar-diagonal block forms, Y = c X
  {
    Rng rng(43);
    bool all = true;
    for (int t = 0; t < 3; ++t) {
      const int n1 = 2, n2 = 2, n = 4;
      const C a1(rng.gaussian(), rng.gaussian()), a2(rng.gaussian(), rng.gaussian());
      const C cmul(rng.gaussian(), rng.gaussian());
      std::vector<C> X(static_cast<size_t>(n1 * n2));
      for (auto& z : X) z = C(rng.gaussian(), rng.gaussian());
      std::vector<C> e(static_cast<size_t>(n * n), C(0, 0));
      for (int i = 0; i < n1; ++i) e[static_cast<size_t>(i * n + i)] = a1;
      for (int i = n1; i < n; ++i) e[static_cast<size_t>(i * n + i)] = a2;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          e[static_cast<size_t>(i * n + (n1 + j))] = X[static_cast<size_t>(i * n2 + j)];
          // lower-left block = conj(c) X*
          e[static_cast<size_t>((n1 + j) * n + i)] =
              std::conj(cmul) * std::conj(X[static_cast<size_t>(i * n2 + j)]);
        }
      const MatrixPtr m = make_matrix(n, e);
      const st_result r = compute_or_throw(m.get(), ST_MODE_AUTO, tol);
      const C mid = (a1 + a2) / 2.0;
      double nrm = 0.0;
      check(st_operator_norm(m.get(), &nrm), "norm");
      if (r.method != ST_METHOD_BLOCK_SCALAR && r.method != ST_METHOD_QUADRATIC) all = false;
      if (point_dist(r, mid.real(), mid.imag()) > 1e-6 * (1.0 + nrm)) all = false;
    }
    ctx.report("block-scalar forms: St = (a1+a2)/2", all);
  }
  // tridiagonal with constant diagonal
  {
    Rng rng(44);
    bool all = true;
    for (int n : {5, 7}) {
      const C a(rng.gaussian(), rng.gaussian());
      std::vector<C> e(static_cast<size_t>(n * n), C(0, 0));
      for (int i = 0; i < n; ++i) e[static_cast<size_t>(i * n + i)] = a;
      for (int i = 0; i + 1 < n; ++i) {
        e[static_cast<size_t>(i * n + i + 1)] = C(rng.gaussian(), rng.gaussian());
        e[static_cast<size_t>((i + 1) * n + i)] = C(rng.gaussian(), rng.gaussian());
      }
      const MatrixPtr m = make_matrix(n, e);
      const st_result r = compute_or_throw(m.get(), ST_MODE_AUTO, tol);
      if (r.method != ST_METHOD_TRIDIAGONAL || point_dist(r, a.real(), a.imag()) > 1e-9)
        all = false;
    }
    ctx.report("tridiagonal constant-diagonal: St = a", all);
  }
  // Roberts example with asymmetric norms
  {
    const MatrixPtr m = make_matrix(3, {0, 1, 1, 0, 0, 1, 0, 0, -0.5});
    st_matrix* p = nullptr;
    check(st_matrix_shift(m.get(), -1.0, 0.0, &p), "shift");  // A + I
    const MatrixPtr plus(p);
    check(st_matrix_shift(m.get(), 1.0, 0.0, &p), "shift");
    const MatrixPtr minus(p);
    double nplus = 0.0, nminus = 0.0;
    check(st_operator_norm(plus.get(), &nplus), "norm");
    check(st_operator_norm(minus.get(), &nminus), "norm");
    ctx.report("asymmetry example: ||A+I|| and ||A-I||",
               std::abs(nplus - 2.1617) <= 5e-4 && std::abs(nminus - 2.1366) <= 5e-4,
               fmt17(nplus) + " vs " + fmt17(nminus));
    st_roberts_report rr{};
    check(st_roberts(m.get(), 1e-8, &rr), "roberts");
    const st_result o = compute_or_throw(m.get(), ST_MODE_ORACLE, tol);
    ctx.report("asymmetry example: not orthogonal, St near 0.0203",
               !rr.orthogonal && point_dist(o, 0.0203, 0.0) <= 5e-4);
  }
  // almost-normal instances keep their certificates
  {
    Rng rng(45);
    bool all = true;
    for (int t = 0; t < 3; ++t) {
      const int n = 4;
      std::vector<double> lam_pairs, bs;
      for (int i = 0; i < n - 1; ++i) {
        lam_pairs.push_back(rng.gaussian());
        lam_pairs.push_back(rng.gaussian());
        bs.push_back(rng.uniform(0.4, 1.2));
      }
      st_matrix* am = nullptr;
      check(st_matrix_almost_normal(n, lam_pairs.data(), bs.data(), rng.gaussian(), rng.gaussian(),
                                    &am),
            "almost normal");
      const MatrixPtr m(am);
      const st_result r = compute_or_throw(m.get(), ST_MODE_AUTO, tol);
      double nrm = 0.0;
      check(st_operator_norm(m.get(), &nrm), "norm");
      if (r.certificate_margin < -1e-6 * (1.0 + nrm)) all = false;
    }
    ctx.report("almost-normal instances: certificates", all);
  }

  std::printf("verify: %d failure(s)\n", ctx.failures);
  return ctx.failures ? kExitVerifyFail : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stampfli point toolkit: the minimizer of ||A - lambda I|| and its certificates"};
  app.require_subcommand(1);

  std::string path, outp, method = "auto", shift_arg;
  double tol = 1e-9;
  double roberts_tol = 1e-8;
  int samples = 720;
  bool suite = false;

  CLI::App* st = app.add_subcommand("st", "compute the Stampfli point of a matrix file");
  st->add_option("path", path)->required();
  st->add_option("--method", method)->check(CLI::IsMember({"auto", "oracle", "closed"}));
  st->add_option("--tol", tol);
  st->add_option("--out", outp);

  CLI::App* nr = app.add_subcommand("nr", "numerical range boundary table");
  nr->add_option("path", path)->required();
  nr->add_option("--samples", samples)->check(CLI::Range(16, 1 << 20));
  nr->add_option("--tol", tol);
  nr->add_option("--out", outp);

  CLI::App* w0 = app.add_subcommand("w0", "maximal numerical range of A - shift I");
  w0->add_option("path", path)->required();
  w0->add_option("--shift", shift_arg);
  w0->add_option("--samples", samples)->check(CLI::Range(16, 1 << 20));
  w0->add_option("--out", outp);

  CLI::App* rb = app.add_subcommand("roberts", "Roberts orthogonality report");
  rb->add_option("path", path)->required();
  rb->add_option("--tol", roberts_tol);
  rb->add_option("--out", outp);

  CLI::App* vf = app.add_subcommand("verify", "closed-form vs oracle checks");
  vf->add_option("path", path);
  vf->add_flag("--suite", suite, "run the built-in corpus");
  vf->add_option("--tol", tol);

  CLI::App* fg = app.add_subcommand("figures", "emit the four reference datasets");
  fg->add_option("--out", outp)->required();
  fg->add_option("--samples", samples)->check(CLI::Range(16, 1 << 20));
  fg->add_option("--tol", tol);

  CLI11_PARSE(app, argc, argv);

  try {
    if (st->parsed()) return cmd_st(path, method, tol, outp);
    if (nr->parsed()) return cmd_nr(path, samples, tol, outp);
    if (w0->parsed()) return cmd_w0(path, shift_arg, samples, outp);
    if (rb->parsed()) return cmd_roberts(path, roberts_tol, outp);
    if (vf->parsed()) return cmd_verify(path, suite, tol);
    if (fg->parsed()) return cmd_figures(outp, samples, tol);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConvergence;
  }
  return 0;
}
