#include "stampfli.h"

#include <cstring>
#include <string>

#include "stampfli/closedform.hpp"
#include "stampfli/eigen.hpp"
#include "stampfli/hull.hpp"
#include "stampfli/io.hpp"
#include "stampfli/numrange.hpp"
#include "stampfli/oracle.hpp"
#include "stampfli/roberts.hpp"

struct st_matrix {
  stampfli::CMatrix m;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
st_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ST_OK;
  } catch (const stampfli::ParseError& e) {
    g_last_error = e.what();
    return ST_ERR_PARSE;
  } catch (const stampfli::InputError& e) {
    g_last_error = e.what();
    return ST_ERR_INVALID_ARG;
  } catch (const stampfli::ConvergenceError& e) {
    g_last_error = e.what();
    return ST_ERR_CONVERGENCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ST_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ST_ERR_INTERNAL;
  }
}

void fill_result(const stampfli::StampfliResult& r, st_result* out) {
  out->point_re = r.point.real();
  out->point_im = r.point.imag();
  out->min_norm = r.min_norm;
  out->method = static_cast<int>(r.method);
  out->certificate_margin = r.certificate_margin;
  out->iterations = r.iterations;
  out->root_count = static_cast<int>(r.candidate_roots.size());
  out->selected_root = r.selected_root;
  for (int i = 0; i < 5; ++i)
    out->roots[i] = (i < out->root_count) ? r.candidate_roots[static_cast<size_t>(i)] : 0.0;
  if (out->root_count > 5) out->root_count = 5;
  out->root_warning = r.root_warning ? 1 : 0;
}

}  // namespace

extern "C" {

st_status st_matrix_create(int n, const double* re_im_pairs, st_matrix** out) {
  return guarded([&] {
    if (n < 1 || !re_im_pairs || !out) throw stampfli::InputError("st_matrix_create: bad argument");
    std::vector<stampfli::Complex> e(static_cast<size_t>(n) * n);
    for (size_t k = 0; k < e.size(); ++k)
      e[k] = stampfli::Complex(re_im_pairs[2 * k], re_im_pairs[2 * k + 1]);
    stampfli::CMatrix m(n, std::move(e));
    if (!m.all_finite()) throw stampfli::InputError("st_matrix_create: non-finite entries");
    *out = new st_matrix{std::move(m)};
  });
}

st_status st_matrix_parse_json(const char* text, st_matrix** out) {
  return guarded([&] {
    if (!text || !out) throw stampfli::InputError("st_matrix_parse_json: bad argument");
    *out = new st_matrix{stampfli::matrix_from_json(text)};
  });
}

st_status st_matrix_almost_normal(int n, const double* lam_re_im_pairs, const double* b,
                                  double mu_re, double mu_im, st_matrix** out) {
  return guarded([&] {
    if (n < 2 || !lam_re_im_pairs || !b || !out)
      throw stampfli::InputError("st_matrix_almost_normal: bad argument");
    std::vector<stampfli::Complex> lams(static_cast<size_t>(n - 1));
    std::vector<double> bs(static_cast<size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i) {
      lams[static_cast<size_t>(i)] =
          stampfli::Complex(lam_re_im_pairs[2 * i], lam_re_im_pairs[2 * i + 1]);
      bs[static_cast<size_t>(i)] = b[i];
    }
    *out = new st_matrix{stampfli::gen_almost_normal(lams, bs, {mu_re, mu_im})};
  });
}

st_status st_matrix_shift(const st_matrix* a, double re, double im, st_matrix** out) {
  return guarded([&] {
    if (!a || !out) throw stampfli::InputError("st_matrix_shift: bad argument");
    *out = new st_matrix{stampfli::shift(a->m, {re, im})};
  });
}

void st_matrix_free(st_matrix* m) { delete m; }

int st_matrix_dim(const st_matrix* m) { return m ? m->m.size() : 0; }

st_status st_matrix_entry(const st_matrix* m, int i, int j, double* re, double* im) {
  return guarded([&] {
    if (!m || !re || !im || i < 0 || j < 0 || i >= m->m.size() || j >= m->m.size())
      throw stampfli::InputError("st_matrix_entry: bad argument");
    *re = m->m(i, j).real();
    *im = m->m(i, j).imag();
  });
}

st_status st_compute(const st_matrix* a, int mode, double tol, st_result* out) {
  return guarded([&] {
    if (!a || !out) throw stampfli::InputError("st_compute: bad argument");
    stampfli::StampfliResult r;
    switch (mode) {
      case ST_MODE_AUTO:
        r = stampfli::st_dispatch(a->m, tol);
        break;
      case ST_MODE_ORACLE:
        r = stampfli::st_oracle(a->m, tol);
        break;
      case ST_MODE_CLOSED: {
        const std::optional<stampfli::StampfliResult> c = stampfli::st_dispatch_closed(a->m, tol);
        if (!c) throw stampfli::InputError("st_compute: no closed form applies to this matrix");
        r = *c;
        break;
      }
      default:
        throw stampfli::InputError("st_compute: unknown mode");
    }
    fill_result(r, out);
  });
}

st_status st_operator_norm(const st_matrix* a, double* out) {
  return guarded([&] {
    if (!a || !out) throw stampfli::InputError("st_operator_norm: bad argument");
    *out = stampfli::operator_norm(a->m);
  });
}

st_status st_eigenvalues(const st_matrix* a, double* re, double* im) {
  return guarded([&] {
    if (!a || !re || !im) throw stampfli::InputError("st_eigenvalues: bad argument");
    const std::vector<stampfli::Complex> e = stampfli::eigenvalues(a->m);
    for (size_t k = 0; k < e.size(); ++k) {
      re[k] = e[k].real();
      im[k] = e[k].imag();
    }
  });
}

st_status st_nr_boundary(const st_matrix* a, int samples, double* theta, double* re, double* im) {
  return guarded([&] {
    if (!a || !theta || !re || !im) throw stampfli::InputError("st_nr_boundary: bad argument");
    const stampfli::PolygonRegion R = stampfli::nr_boundary(a->m, samples);
    for (int k = 0; k < samples; ++k) {
      theta[k] = R.angles[static_cast<size_t>(k)];
      re[k] = R.witnesses[static_cast<size_t>(k)].real();
      im[k] = R.witnesses[static_cast<size_t>(k)].imag();
    }
  });
}

st_status st_w0_region(const st_matrix* a, double shift_re, double shift_im, int samples,
                       double* theta, double* support, double* wre, double* wim, double* margin,
                       int* contains) {
  return guarded([&] {
    if (!a || !theta || !support || !wre || !wim || !margin || !contains)
      throw stampfli::InputError("st_w0_region: bad argument");
    const stampfli::CMatrix M = stampfli::shift(a->m, {shift_re, shift_im});
    const stampfli::PolygonRegion R = stampfli::max_numerical_range(M, samples);
    for (int k = 0; k < samples; ++k) {
      theta[k] = R.angles[static_cast<size_t>(k)];
      support[k] = R.support[static_cast<size_t>(k)];
      wre[k] = R.witnesses[static_cast<size_t>(k)].real();
      wim[k] = R.witnesses[static_cast<size_t>(k)].imag();
    }
    const stampfli::ZeroMembership z = stampfli::contains_zero(R, stampfli::operator_norm(M));
    *margin = z.margin;
    *contains = z.contains ? 1 : 0;
  });
}

st_status st_roberts(const st_matrix* a, double tol, st_roberts_report* out) {
  return guarded([&] {
    if (!a || !out) throw stampfli::InputError("st_roberts: bad argument");
    const stampfli::RobertsReport r = stampfli::roberts_numeric(a->m, tol);
    out->orthogonal = r.orthogonal ? 1 : 0;
    out->max_asymmetry = r.max_asymmetry;
    out->worst_nu_re = r.worst_nu.real();
    out->worst_nu_im = r.worst_nu.imag();
    out->stampfli_zero = r.stampfli_zero ? 1 : 0;
    out->classification = static_cast<int>(r.classification);
  });
}

st_status st_spectrum_hull(const st_matrix* a, double* re, double* im, int* count) {
  return guarded([&] {
    if (!a || !re || !im || !count || *count < 1)
      throw stampfli::InputError("st_spectrum_hull: bad argument");
    const std::vector<stampfli::Complex> h = stampfli::convex_hull(stampfli::eigenvalues(a->m));
    if (static_cast<int>(h.size()) > *count)
      throw stampfli::InputError("st_spectrum_hull: capacity too small");
    for (size_t k = 0; k < h.size(); ++k) {
      re[k] = h[k].real();
      im[k] = h[k].imag();
    }
    *count = static_cast<int>(h.size());
  });
}

const char* st_status_message(st_status s) {
  switch (s) {
    case ST_OK: return "ok";
    case ST_ERR_INVALID_ARG: return "invalid argument";
    case ST_ERR_PARSE: return "parse error";
    case ST_ERR_CONVERGENCE: return "convergence failure";
    case ST_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* st_method_name_str(int method) {
  return stampfli::method_name(static_cast<stampfli::StMethod>(method));
}

const char* st_roberts_class_name_str(int cls) {
  return stampfli::roberts_class_name(static_cast<stampfli::RobertsClass>(cls));
}

const char* st_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
