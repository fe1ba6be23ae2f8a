#include "divlab.h"

#include <complex>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "asymptotics.hpp"
#include "constants.hpp"
#include "divisor_table.hpp"
#include "errors.hpp"
#include "fitting.hpp"
#include "ledger.hpp"
#include "mainterm.hpp"
#include "mellin.hpp"
#include "parallel.hpp"
#include "perron.hpp"
#include "profile.hpp"
#include "voronoi.hpp"

using namespace divlab;

struct divlab_table {
  DivisorTable t;
};

struct divlab_scan {
  MainTermModel model;
  ErrorScan s;
  divlab_scan(const DivisorTable& t)
      : model(main_term_poly(t.k())), s(t, model) {}
};

namespace {

thread_local std::string g_last_error;

// Translates the C++ taxonomy to status codes; every entry point funnels
// through here so no exception crosses the ABI.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return DIVLAB_OK;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return DIVLAB_E_DOMAIN;
  } catch (const CapacityError& e) {
    g_last_error = e.what();
    return DIVLAB_E_CAPACITY;
  } catch (const OverflowError& e) {
    g_last_error = e.what();
    return DIVLAB_E_OVERFLOW;
  } catch (const UnsupportedError& e) {
    g_last_error = e.what();
    return DIVLAB_E_UNSUPPORTED;
  } catch (const PoleError& e) {
    g_last_error = e.what();
    return DIVLAB_E_POLE;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return DIVLAB_E_IO;
  } catch (const NumericalError& e) {
    g_last_error = e.what();
    return DIVLAB_E_NUMERICAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DIVLAB_E_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DIVLAB_E_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return DIVLAB_E_UNKNOWN;
  }
}

int require(bool ok, const char* msg) {
  if (ok) return DIVLAB_OK;
  g_last_error = msg;
  return DIVLAB_E_DOMAIN;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* divlab_version(void) { return "divlab 1.0.0"; }

const char* divlab_last_error(void) { return g_last_error.c_str(); }

int divlab_set_threads(int n) {
  if (int rc = require(n >= 1, "divlab_set_threads: n >= 1")) return rc;
  return guarded([&] { set_worker_count(n); });
}

int divlab_threads(void) { return worker_count(); }

int divlab_table_build(int k, uint64_t limit, divlab_table** out) {
  if (int rc = require(out != nullptr, "null out")) return rc;
  return guarded(
      [&] { *out = new divlab_table{DivisorTable::build(k, limit)}; });
}

int divlab_table_load(const char* path, divlab_table** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] { *out = new divlab_table{DivisorTable::load(path)}; });
}

int divlab_table_save(const divlab_table* t, const char* path) {
  if (int rc = require(t && path, "null argument")) return rc;
  return guarded([&] { t->t.save(path); });
}

void divlab_table_free(divlab_table* t) { delete t; }

int divlab_table_k(const divlab_table* t) { return t ? t->t.k() : 0; }

uint64_t divlab_table_limit(const divlab_table* t) {
  return t ? t->t.limit() : 0;
}

int divlab_table_value(const divlab_table* t, uint64_t n, uint64_t* out) {
  if (int rc = require(t && out, "null argument")) return rc;
  if (int rc = require(n >= 1 && n <= t->t.limit(), "n out of range"))
    return rc;
  *out = t->t.value(n);
  return DIVLAB_OK;
}

int divlab_scan_new(const divlab_table* t, divlab_scan** out) {
  if (int rc = require(t && out, "null argument")) return rc;
  return guarded([&] { *out = new divlab_scan(t->t); });
}

void divlab_scan_free(divlab_scan* s) { delete s; }

int divlab_scan_delta(const divlab_scan* s, double x, int primed,
                      double* out) {
  if (int rc = require(s && out, "null argument")) return rc;
  return guarded([&] { *out = s->s.delta(x, primed != 0); });
}

int divlab_scan_integral_pow(const divlab_scan* s, double a, double b, int p,
                             double* out) {
  if (int rc = require(s && out, "null argument")) return rc;
  return guarded([&] { *out = s->s.integral_pow(a, b, p); });
}

int divlab_scan_profile(const divlab_scan* s, double start, double stop,
                        int npoints, int geometric, double* x, double* delta,
                        double* i1, double* i2, double* i4, double* j2) {
  if (int rc = require(s != nullptr, "null scan")) return rc;
  return guarded([&] {
    const GridSpec grid{start, stop, npoints, geometric != 0};
    const ErrorTermProfile p =
        s->s.profile(grid, i4 != nullptr, j2 != nullptr);
    for (int i = 0; i < npoints; ++i) {
      if (x) x[i] = p.x[i];
      if (delta) delta[i] = p.delta[i];
      if (i1) i1[i] = p.i1[i];
      if (i2) i2[i] = p.i2[i];
      if (i4) i4[i] = p.i4[i];
      if (j2) j2[i] = p.j2[i];
    }
  });
}

int divlab_voronoi_integral(const divlab_table* t2, double x, uint64_t m,
                            double* value, double* tail_bound) {
  if (int rc = require(t2 && value, "null argument")) return rc;
  return guarded([&] {
    const SeriesValue v = voronoi_integral_delta(t2->t, x, m);
    *value = v.value;
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

int divlab_voronoi_delta_k(const divlab_table* t, double x, uint64_t n_terms,
                           double* value, double* tail_bound) {
  if (int rc = require(t && value, "null argument")) return rc;
  return guarded([&] {
    const SeriesValue v = voronoi_delta_k(t->t, x, n_terms);
    *value = v.value;
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

int divlab_voronoi_delta3(const divlab_table* t3, double x, double big_x,
                          double* value, double* tail_bound) {
  if (int rc = require(t3 && value, "null argument")) return rc;
  return guarded([&] {
    const SeriesValue v = voronoi_delta3(t3->t, x, big_x);
    *value = v.value;
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

int divlab_perron_kernel(double y, double c, double big_t, double* out) {
  if (int rc = require(out != nullptr, "null out")) return rc;
  return guarded([&] { *out = perron_kernel(y, c, big_t); });
}

int divlab_perron_delta(const divlab_scan* s, double x, double c,
                        double big_t, double* approx, double* exact) {
  if (int rc = require(s && approx, "null argument")) return rc;
  return guarded([&] {
    const PerronDelta pd = perron_delta(s->s, x, c, big_t);
    *approx = pd.approx;
    if (exact) *exact = pd.exact;
  });
}

int divlab_mellin_k(const divlab_scan* s, int method, double s_re,
                    double s_im, double main_const, double xmax,
                    double* out_re, double* out_im) {
  if (int rc = require(s && out_re, "null argument")) return rc;
  if (int rc = require(method == 0 || method == 1, "method must be 0 or 1"))
    return rc;
  return guarded([&] {
    const std::complex<double> sv(s_re, s_im);
    MellinValue v;
    if (method == 0) {
      v = mellin_K_direct(s->s, sv, xmax);
    } else if (s->s.k() == 2) {
      v = mellin_K2_continued(s->s, sv, main_const, xmax);
    } else if (s->s.k() == 3) {
      v = mellin_K3_continued(s->s, sv, main_const, xmax);
    } else {
      throw UnsupportedError("continuation implemented for k = 2, 3 only");
    }
    *out_re = v.value.real();
    if (out_im) *out_im = v.value.imag();
  });
}

int divlab_laplace_check(const divlab_scan* s2, double big_t, double b_const,
                         double* lhs, double* leading, double* residual) {
  if (int rc = require(s2 && lhs, "null argument")) return rc;
  return guarded([&] {
    const LaplaceCheck lc = laplace_check(s2->s, big_t, b_const);
    *lhs = lc.lhs;
    if (leading) *leading = lc.leading;
    if (residual) *residual = lc.residual;
  });
}

int divlab_laplace_fit_a1(const double* big_t, const double* residual,
                          size_t n, double* a1) {
  if (int rc = require(big_t && residual && a1, "null argument")) return rc;
  return guarded([&] {
    const std::vector<double> ts(big_t, big_t + n);
    const std::vector<double> rs(residual, residual + n);
    *a1 = laplace_fit_a1(ts, rs);
  });
}

int divlab_const_b(const divlab_table* t2, double* identity, double* direct,
                   double* budget, double* a) {
  if (int rc = require(t2 && identity, "null argument")) return rc;
  return guarded([&] {
    const ConstApprox ident = const_B_identity();
    const ConstApprox dir = const_B_direct(t2->t);
    *identity = ident.value;
    if (direct) *direct = dir.value;
    if (budget) *budget = ident.budget + dir.budget;
    if (a) *a = ident.value / (6.0 * 9.869604401089358);  // pi^2
  });
}

int divlab_const_c3(const divlab_table* t3, double* direct, double* product,
                    double* budget) {
  if (int rc = require(t3 && direct, "null argument")) return rc;
  return guarded([&] {
    const ConstApprox d = const_C3_direct(t3->t);
    *direct = d.value;
    if (product) *product = const_C3_product();
    if (budget) *budget = d.budget;
  });
}

int divlab_slope_loglog(const double* x, const double* v, size_t n,
                        double* slope, double* ci_lo, double* ci_hi,
                        size_t* dropped) {
  if (int rc = require(x && v && slope, "null argument")) return rc;
  return guarded([&] {
    const SlopeFit f = slope_loglog(std::vector<double>(x, x + n),
                                    std::vector<double>(v, v + n));
    *slope = f.slope;
    if (ci_lo) *ci_lo = f.ci_lo;
    if (ci_hi) *ci_hi = f.ci_hi;
    if (dropped) *dropped = f.dropped;
  });
}

int divlab_fit_remainder(const divlab_scan* s, double start, double stop,
                         int npoints, double main_const, double* a, double* b,
                         double* c) {
  if (int rc = require(s && a, "null argument")) return rc;
  return guarded([&] {
    const GridSpec grid{start, stop, npoints, true};
    const ThreeTermFit fit =
        fit_F(extract_remainder(s->s, grid, main_const));
    *a = fit.a;
    if (b) *b = fit.b;
    if (c) *c = fit.c;
  });
}

int divlab_ledger(int kind, int k, char* buf, size_t buflen) {
  if (int rc = require(buf && buflen > 0, "null buffer")) return rc;
  if (int rc = require(kind >= 0 && kind <= 4, "kind must be 0..4"))
    return rc;
  return guarded([&] {
    const Rational r = ledger(static_cast<LedgerKind>(kind), k);
    const std::string s = rational_str(r);
    if (s.size() + 1 > buflen)
      throw CapacityError("divlab_ledger: buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

int divlab_ledger_json(char** out) {
  if (int rc = require(out != nullptr, "null out")) return rc;
  return guarded([&] { *out = dup_string(ledger_json()); });
}

void divlab_string_free(char* s) { delete[] s; }

int divlab_verify(int quick, char** report, int* failed) {
  if (int rc = require(report && failed, "null argument")) return rc;
  return guarded([&] {
    AcceptanceOptions opt;
    opt.quick = quick != 0;
    const std::vector<CriterionResult> results = run_acceptance(opt);
    *report = dup_string(format_acceptance(results));
    int nf = 0;
    for (const CriterionResult& r : results) nf += r.pass ? 0 : 1;
    *failed = nf;
  });
}

}  // extern "C"
