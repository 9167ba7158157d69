/* C interface to the Stampfli-point library: opaque matrix handles, status
 * codes, plain structs. All functions are safe to call from C. */
#ifndef STAMPFLI_H
#define STAMPFLI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct st_matrix st_matrix;

typedef enum {
  ST_OK = 0,
  ST_ERR_INVALID_ARG = 1, /* precondition violated */
  ST_ERR_PARSE = 2,       /* malformed matrix text */
  ST_ERR_CONVERGENCE = 3, /* iteration cap exceeded */
  ST_ERR_INTERNAL = 4
} st_status;

typedef enum {
  ST_METHOD_ORACLE = 0,
  ST_METHOD_TWO_BY_TWO,
  ST_METHOD_BLOCK_SCALAR,
  ST_METHOD_QUADRATIC,
  ST_METHOD_TRIDIAGONAL,
  ST_METHOD_SINGLETON3_XYZ0,
  ST_METHOD_SINGLETON3_TOE,
  ST_METHOD_SINGLETON3_GENERAL,
  ST_METHOD_FALLBACK
} st_method;

typedef enum {
  ST_MODE_AUTO = 0,  /* closed forms with certificate check, oracle otherwise */
  ST_MODE_ORACLE = 1,
  ST_MODE_CLOSED = 2 /* closed forms only; fails when none applies */
} st_mode;

typedef struct {
  double point_re, point_im;  /* the minimizer of ||A - lambda I|| */
  double min_norm;
  int method;                 /* st_method */
  double certificate_margin;  /* min support of W0(A - point I) */
  long iterations;
  int root_count;             /* candidate positive roots on the 3x3 singleton path */
  int selected_root;          /* index of the accepted root, -1 when not applicable */
  double roots[5];
  int root_warning;           /* nonzero when a non-smallest root was accepted */
} st_result;

typedef enum {
  ST_ROBERTS_NILPOTENT_QUADRATIC = 0,
  ST_ROBERTS_SCALED_INVOLUTION,
  ST_ROBERTS_REDUCIBLE_SCALAR_PLUS_NILPOTENT2,
  ST_ROBERTS_NILPOTENT3_CIRCULAR,
  ST_ROBERTS_NOT_ORTHOGONAL,
  ST_ROBERTS_UNCLASSIFIED
} st_roberts_class;

typedef struct {
  int orthogonal;
  double max_asymmetry;
  double worst_nu_re, worst_nu_im;
  int stampfli_zero;
  int classification; /* st_roberts_class */
} st_roberts_report;

/* --- construction ------------------------------------------------------ */

/* re_im_pairs holds 2*n*n doubles, row-major (re, im) per entry. */
st_status st_matrix_create(int n, const double* re_im_pairs, st_matrix** out);

/* Parse the JSON matrix format {"n": N, "data": [[re, im], ...]}. */
st_status st_matrix_parse_json(const char* text, st_matrix** out);

/* Almost-normal builder: diag(lams) block, last column b >= 0, corner mu.
 * lam_re_im_pairs holds 2*(n-1) doubles, b holds n-1. */
st_status st_matrix_almost_normal(int n, const double* lam_re_im_pairs, const double* b,
                                  double mu_re, double mu_im, st_matrix** out);

/* New handle holding A - (re + i im) I. */
st_status st_matrix_shift(const st_matrix* a, double re, double im, st_matrix** out);

void st_matrix_free(st_matrix* m);
int st_matrix_dim(const st_matrix* m);
st_status st_matrix_entry(const st_matrix* m, int i, int j, double* re, double* im);

/* --- computations ------------------------------------------------------ */

st_status st_compute(const st_matrix* a, int mode, double tol, st_result* out);
st_status st_operator_norm(const st_matrix* a, double* out);

/* re, im must hold n doubles each. */
st_status st_eigenvalues(const st_matrix* a, double* re, double* im);

/* Numerical-range boundary samples: theta, re, im must hold `samples`
 * doubles each (witness points of the support sweep). samples >= 16. */
st_status st_nr_boundary(const st_matrix* a, int samples, double* theta, double* re, double* im);

/* Maximal numerical range of A - shift I: support table plus zero-membership
 * margin and verdict. Arrays must hold `samples` doubles each. */
st_status st_w0_region(const st_matrix* a, double shift_re, double shift_im, int samples,
                       double* theta, double* support, double* wre, double* wim, double* margin,
                       int* contains);

st_status st_roberts(const st_matrix* a, double tol, st_roberts_report* out);

/* Convex hull of the spectrum, counterclockwise. On input *count is the
 * capacity of re/im; on output the hull size. */
st_status st_spectrum_hull(const st_matrix* a, double* re, double* im, int* count);

/* --- diagnostics ------------------------------------------------------- */

const char* st_status_message(st_status s);
const char* st_method_name_str(int method);
const char* st_roberts_class_name_str(int cls);

/* Detail message of the last failing call on this thread ("" when none). */
const char* st_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* STAMPFLI_H */
