/* Exercises the C surface end to end: handle lifecycles, status codes,
 * error paths, and a handful of pinned values.  Compiled as plain C so the
 * header is proven C-clean. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "divlab.h"

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      ++failures;                                                 \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
    }                                                             \
  } while (0)

int main(void) {
  CHECK(strncmp(divlab_version(), "divlab ", 7) == 0);
  CHECK(divlab_set_threads(0) == DIVLAB_E_DOMAIN);
  CHECK(divlab_set_threads(4) == DIVLAB_OK);
  CHECK(divlab_threads() == 4);

  divlab_table* t2 = NULL;
  CHECK(divlab_table_build(2, 100000, &t2) == DIVLAB_OK);
  CHECK(divlab_table_k(t2) == 2);
  CHECK(divlab_table_limit(t2) == 100000);

  uint64_t v = 0;
  CHECK(divlab_table_value(t2, 12, &v) == DIVLAB_OK && v == 6);
  CHECK(divlab_table_value(t2, 0, &v) == DIVLAB_E_DOMAIN);
  CHECK(divlab_table_value(t2, 100001, &v) == DIVLAB_E_DOMAIN);
  CHECK(strlen(divlab_last_error()) > 0);

  /* persistence round trip */
  CHECK(divlab_table_save(t2, "/tmp/capi_t2.bin") == DIVLAB_OK);
  divlab_table* t2b = NULL;
  CHECK(divlab_table_load("/tmp/capi_t2.bin", &t2b) == DIVLAB_OK);
  CHECK(divlab_table_value(t2b, 99991, &v) == DIVLAB_OK);
  uint64_t v2 = 0;
  CHECK(divlab_table_value(t2, 99991, &v2) == DIVLAB_OK && v == v2);
  divlab_table_free(t2b);
  CHECK(divlab_table_load("/tmp/no_such_table.bin", &t2b) == DIVLAB_E_IO);

  divlab_scan* s2 = NULL;
  CHECK(divlab_scan_new(t2, &s2) == DIVLAB_OK);

  double d = 0.0;
  CHECK(divlab_scan_delta(s2, 10.0, 1, &d) == DIVLAB_OK);
  CHECK(fabs(d - 0.17984) < 5e-6);

  double ip = 0.0;
  CHECK(divlab_scan_integral_pow(s2, 1.0, 1000.0, 2, &ip) == DIVLAB_OK);
  CHECK(ip > 0.0);
  CHECK(divlab_scan_integral_pow(s2, 1.0, 1000.0, 3, &ip) ==
        DIVLAB_E_UNSUPPORTED);
  CHECK(divlab_scan_integral_pow(s2, 1.0, 1e9, 2, &ip) == DIVLAB_E_DOMAIN);

  double gx[8], gi2[8];
  CHECK(divlab_scan_profile(s2, 10.0, 10000.0, 8, 1, gx, NULL, NULL, gi2,
                            NULL, NULL) == DIVLAB_OK);
  CHECK(gx[0] == 10.0 && gx[7] == 10000.0);
  CHECK(gi2[7] > gi2[0]);

  double slope = 0.0, lo = 0.0, hi = 0.0;
  size_t dropped = 0;
  CHECK(divlab_slope_loglog(gx, gi2, 8, &slope, &lo, &hi, &dropped) ==
        DIVLAB_OK);
  CHECK(fabs(slope - 1.5) < 0.2 && dropped == 0);

  double val = 0.0, tail = 0.0;
  CHECK(divlab_voronoi_integral(t2, 1000.0, 5000, &val, &tail) == DIVLAB_OK);
  CHECK(tail > 0.0);
  CHECK(divlab_voronoi_delta_k(t2, 5000.5, 50000, &val, &tail) == DIVLAB_OK);
  CHECK(divlab_scan_delta(s2, 5000.5, 1, &d) == DIVLAB_OK);
  CHECK(fabs(val - d) <= tail);

  double kern = 0.0;
  CHECK(divlab_perron_kernel(2.0, 0.9, 1e4, &kern) == DIVLAB_OK);
  CHECK(fabs(kern - 1.0) < 1e-3);

  double approx = 0.0, exact = 0.0;
  CHECK(divlab_perron_delta(s2, 10.5, 0.9, 1000.0, &approx, &exact) ==
        DIVLAB_OK);
  CHECK(fabs(approx - exact) < 0.1);

  double ident = 0.0, direct = 0.0, budget = 0.0, a = 0.0;
  CHECK(divlab_const_b(t2, &ident, &direct, &budget, &a) == DIVLAB_OK);
  CHECK(fabs(ident - 38.745144143901321) < 1e-12);
  CHECK(fabs(ident - direct) <= budget);
  CHECK(fabs(a - 0.654283977508845) < 1e-12);

  double re = 0.0, im = 0.0;
  CHECK(divlab_mellin_k(s2, 0, 2.0, 0.0, 0.0, 100000.0, &re, &im) ==
        DIVLAB_OK);
  double cre = 0.0, cim = 0.0;
  CHECK(divlab_mellin_k(s2, 1, 2.0, 0.0, a, 100000.0, &cre, &cim) ==
        DIVLAB_OK);
  CHECK(fabs(re - cre) < 1e-2 * fabs(cre));
  CHECK(divlab_mellin_k(s2, 2, 2.0, 0.0, a, 1e5, &re, &im) ==
        DIVLAB_E_DOMAIN);

  double lhs = 0.0, leading = 0.0, resid = 0.0;
  CHECK(divlab_laplace_check(s2, 1000.0, ident, &lhs, &leading, &resid) ==
        DIVLAB_OK);
  CHECK(lhs > 0.0 && leading > 0.0);
  CHECK(fabs(lhs - leading - resid) < 1e-9 * lhs);

  double fa = 0.0, fb = 0.0, fc = 0.0;
  CHECK(divlab_fit_remainder(s2, 100.0, 100000.0, 48, a, &fa, &fb, &fc) ==
        DIVLAB_OK);
  CHECK(fa == fa); /* finite */

  char buf[32];
  CHECK(divlab_ledger(0, 10, buf, sizeof buf) == DIVLAB_OK);
  CHECK(strcmp(buf, "29/20") == 0);
  CHECK(divlab_ledger(1, 5, buf, sizeof buf) == DIVLAB_OK);
  CHECK(strcmp(buf, "17/5") == 0);
  CHECK(divlab_ledger(0, 10, buf, 3) == DIVLAB_E_CAPACITY);
  CHECK(divlab_ledger(0, 2, buf, sizeof buf) == DIVLAB_E_DOMAIN);
  CHECK(divlab_ledger(9, 2, buf, sizeof buf) == DIVLAB_E_DOMAIN);

  char* json = NULL;
  CHECK(divlab_ledger_json(&json) == DIVLAB_OK);
  CHECK(json != NULL && strstr(json, "29/20") != NULL);
  divlab_string_free(json);

  /* determinism across worker counts through the C surface */
  double one = 0.0, eight = 0.0;
  CHECK(divlab_set_threads(1) == DIVLAB_OK);
  CHECK(divlab_scan_integral_pow(s2, 1.0, 100000.0, 2, &one) == DIVLAB_OK);
  CHECK(divlab_set_threads(8) == DIVLAB_OK);
  CHECK(divlab_scan_integral_pow(s2, 1.0, 100000.0, 2, &eight) == DIVLAB_OK);
  CHECK(one == eight);

  divlab_scan_free(s2);
  divlab_table_free(t2);
  remove("/tmp/capi_t2.bin");

  if (failures == 0) printf("capi: all checks passed\n");
  return failures;
}
