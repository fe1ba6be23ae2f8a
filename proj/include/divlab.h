/* divlab: C API for the divisor-problem laboratory.
 *
 * Every function returns a status code (DIVLAB_OK on success) and reports
 * results through out-parameters.  On failure the out-parameters are left
 * untouched and divlab_last_error() returns a thread-local message valid
 * until the next failing call on the same thread.
 *
 * Handles are opaque.  A scan borrows its table: the table handle must
 * outlive every scan created from it.  All computations honor the worker
 * count set by divlab_set_threads (deterministic results for any count).
 */
#ifndef DIVLAB_H
#define DIVLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  DIVLAB_OK = 0,
  DIVLAB_E_DOMAIN = 1,      /* argument outside the mathematical domain */
  DIVLAB_E_CAPACITY = 2,    /* exceeds sieve limit or memory budget */
  DIVLAB_E_OVERFLOW = 3,    /* integer overflow in exact arithmetic */
  DIVLAB_E_UNSUPPORTED = 4, /* valid but unimplemented combination */
  DIVLAB_E_POLE = 5,        /* evaluation too close to a pole */
  DIVLAB_E_IO = 6,          /* file read/write failure */
  DIVLAB_E_NUMERICAL = 7,   /* internal cross-check failed */
  DIVLAB_E_UNKNOWN = 8
};

const char* divlab_version(void);
const char* divlab_last_error(void);

int divlab_set_threads(int n); /* n >= 1 */
int divlab_threads(void);

/* ---- divisor tables ---- */

typedef struct divlab_table divlab_table;

int divlab_table_build(int k, uint64_t limit, divlab_table** out);
int divlab_table_load(const char* path, divlab_table** out);
int divlab_table_save(const divlab_table* t, const char* path);
void divlab_table_free(divlab_table* t);

int divlab_table_k(const divlab_table* t);
uint64_t divlab_table_limit(const divlab_table* t);
int divlab_table_value(const divlab_table* t, uint64_t n, uint64_t* out);

/* ---- error-term scans ---- */

typedef struct divlab_scan divlab_scan;

int divlab_scan_new(const divlab_table* t, divlab_scan** out);
void divlab_scan_free(divlab_scan* s);

/* Delta_k(x); primed = 1 halves the last divisor-sum term at integer x. */
int divlab_scan_delta(const divlab_scan* s, double x, int primed,
                      double* out);

/* int_a^b Delta^p du, p in {1,2,4}, panel-exact. */
int divlab_scan_integral_pow(const divlab_scan* s, double a, double b, int p,
                             double* out);

/* Running integrals on an npoints-grid from start to stop (geometric != 0
 * for log spacing).  Each non-NULL output array receives npoints values:
 * x, Delta(x), I1, I2, I4 (k = 2 only), J2 = int I1^2.  want i4/j2 by
 * passing non-NULL pointers. */
int divlab_scan_profile(const divlab_scan* s, double start, double stop,
                        int npoints, int geometric, double* x, double* delta,
                        double* i1, double* i2, double* i4, double* j2);

/* ---- series expansions ---- */

/* Truncated series for int_1^x Delta(u)du (k = 2 table, m terms). */
int divlab_voronoi_integral(const divlab_table* t2, double x, uint64_t m,
                            double* value, double* tail_bound);

/* Truncated expansion of Delta_k itself (n_terms terms); tail_bound is a
 * calibrated heuristic budget for k >= 3. */
int divlab_voronoi_delta_k(const divlab_table* t, double x, uint64_t n_terms,
                           double* value, double* tail_bound);

/* k = 3 short-interval variant, valid for big_x <= x <= 2 big_x. */
int divlab_voronoi_delta3(const divlab_table* t3, double x, double big_x,
                          double* value, double* tail_bound);

/* ---- Perron inversion ---- */

/* Smoothed truncated-Perron indicator weight for y = x/n. */
int divlab_perron_kernel(double y, double c, double big_t, double* out);

/* Truncated Perron integral for Delta_k(x) against the exact value. */
int divlab_perron_delta(const divlab_scan* s, double x, double c,
                        double big_t, double* approx, double* exact);

/* ---- Mellin transforms K_k(s) ---- */

/* method: 0 = direct integral (Re s large), 1 = continuation (k = 2 or 3;
 * main_const is A resp. C3).  xmax bounds the panel integration. */
int divlab_mellin_k(const divlab_scan* s, int method, double s_re,
                    double s_im, double main_const, double xmax,
                    double* out_re, double* out_im);

/* ---- Laplace transform ---- */

int divlab_laplace_check(const divlab_scan* s2, double big_t, double b_const,
                         double* lhs, double* leading, double* residual);

int divlab_laplace_fit_a1(const double* big_t, const double* residual,
                          size_t n, double* a1);

/* ---- constants ---- */

/* B by the zeta identity and by direct summation (with budgets), and the
 * derived A = B/(6 pi^2). */
int divlab_const_b(const divlab_table* t2, double* identity, double* direct,
                   double* budget, double* a);

int divlab_const_c3(const divlab_table* t3, double* direct, double* product,
                    double* budget);

/* ---- fitting ---- */

/* OLS slope of log|v| against log x; drops nonpositive values. */
int divlab_slope_loglog(const double* x, const double* v, size_t n,
                        double* slope, double* ci_lo, double* ci_hi,
                        size_t* dropped);

/* Three-term fit of I2 - main_const x^p against {x log^2 x, x log x, x}
 * on a geometric grid (k = 2: p = 3/2, k = 3: p = 5/3). */
int divlab_fit_remainder(const divlab_scan* s, double start, double stop,
                         int npoints, double main_const, double* a, double* b,
                         double* c);

/* ---- exponent ledger ---- */

/* kind: 0 = theta, 1 = rho, 2 = eta, 3 = beta, 4 = sigmaC.  Writes the
 * exact rational as text ("29/20") into buf. */
int divlab_ledger(int kind, int k, char* buf, size_t buflen);

/* Entire ledger as a JSON object; free with divlab_string_free. */
int divlab_ledger_json(char** out);

void divlab_string_free(char* s);

/* ---- verification ---- */

/* Runs the acceptance suite (quick != 0: sieve limit 1e6 instead of 1e7).
 * report receives the formatted per-criterion lines (free with
 * divlab_string_free); failed receives the number of failed criteria. */
int divlab_verify(int quick, char** report, int* failed);

#ifdef __cplusplus
}
#endif

#endif /* DIVLAB_H */
