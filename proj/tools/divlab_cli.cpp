// divlab command-line front end.  Talks to the library exclusively through
// the C API in divlab.h; exit codes: 0 success, 1 verification/numerical
// failure, 2 usage, 3 capacity.
#include <CLI11.hpp>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "divlab.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

int status_exit(int rc) {
  if (rc == DIVLAB_OK) return 0;
  std::cerr << "error: " << divlab_last_error() << "\n";
  if (rc == DIVLAB_E_CAPACITY) return kExitCapacity;
  if (rc == DIVLAB_E_DOMAIN || rc == DIVLAB_E_UNSUPPORTED) return kExitUsage;
  return kExitFail;
}

// FNV-1a over the canonical flag serialization: stable across runs, so
// identical configs stamp identical provenance headers.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Provenance {
  std::string config;  // canonical key=value lines
  std::uint64_t sieve_limit = 0;

  std::string header() const {
    std::ostringstream os;
    os << "# " << divlab_version() << "\n";
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, fnv1a(config));
    os << "# config " << hex << "\n";
    os << "# sieve_limit " << sieve_limit << "\n";
    return os.str();
  }
};

// Sieve cache: DIVLAB_CACHE_DIR/dk_<k>_<N>_v1.bin.  Builds and stores on
// miss; silently falls back to an in-memory build if the dir is unset.
int acquire_table(int k, std::uint64_t n, divlab_table** out) {
  const char* dir = std::getenv("DIVLAB_CACHE_DIR");
  std::string path;
  if (dir && *dir) {
    std::ostringstream os;
    os << dir << "/dk_" << k << "_" << n << "_v1.bin";
    path = os.str();
    if (std::ifstream(path).good()) {
      const int rc = divlab_table_load(path.c_str(), out);
      if (rc == DIVLAB_OK && divlab_table_k(*out) == k &&
          divlab_table_limit(*out) == n)
        return DIVLAB_OK;
      if (rc == DIVLAB_OK) divlab_table_free(*out);  // stale entry
    }
  }
  const int rc = divlab_table_build(k, n, out);
  if (rc != DIVLAB_OK) return rc;
  if (!path.empty()) divlab_table_save(*out, path.c_str());  // best effort
  return DIVLAB_OK;
}

struct Table {
  divlab_table* t = nullptr;
  ~Table() { divlab_table_free(t); }
};
struct Scan {
  divlab_scan* s = nullptr;
  ~Scan() { divlab_scan_free(s); }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divisor-problem laboratory"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file");
  app.get_config_formatter_base()->valueSeparator('=');

  int threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "worker count")->check(CLI::Range(1, 256));
  app.add_option("--seed", seed, "seed for randomized spot checks");

  int k = 2;
  std::uint64_t n = 1000000;
  double x = 1000.5, start = 1e3, stop = 1e6, c = 0.9, big_t = 1e4;
  double sigma = 2.0, t_im = 0.0, big_x = 0.0, xmax = 0.0;
  std::uint64_t terms = 100000;
  int points = 48;
  bool linear = false, unprimed = false, want_i4 = false, want_j2 = false;
  bool integral_series = false, continued = false, quick = false;
  std::string output;
  std::vector<double> ts;

  CLI::App* sieve = app.add_subcommand("sieve", "build and cache a divisor table");
  sieve->add_option("--k", k)->required();
  sieve->add_option("--n", n)->required();

  CLI::App* delta = app.add_subcommand("delta", "error term at a point");
  delta->add_option("--k", k);
  delta->add_option("--x", x)->required();
  delta->add_option("--n", n);
  delta->add_flag("--unprimed", unprimed);

  CLI::App* integrals = app.add_subcommand("integrals", "running-moment profile CSV");
  integrals->add_option("--k", k);
  integrals->add_option("--n", n);
  integrals->add_option("--start", start);
  integrals->add_option("--stop", stop);
  integrals->add_option("--points", points);
  integrals->add_flag("--linear", linear);
  integrals->add_flag("--i4", want_i4);
  integrals->add_flag("--j2", want_j2);
  integrals->add_option("--output", output);

  CLI::App* voronoi = app.add_subcommand("voronoi", "truncated series evaluation");
  voronoi->add_option("--k", k);
  voronoi->add_option("--x", x)->required();
  voronoi->add_option("--terms", terms);
  voronoi->add_option("--n", n);
  voronoi->add_option("--big-x", big_x, "short-interval anchor (k = 3)");
  voronoi->add_flag("--integral", integral_series, "series for the integral of the error term (k = 2)");

  CLI::App* perron = app.add_subcommand("perron", "truncated Perron inversion");
  perron->add_option("--k", k);
  perron->add_option("--x", x)->required();
  perron->add_option("--c", c);
  perron->add_option("--t", big_t);
  perron->add_option("--n", n);

  CLI::App* mellin = app.add_subcommand("mellin", "K_k(s) evaluation");
  mellin->add_option("--k", k);
  mellin->add_option("--sigma", sigma)->required();
  mellin->add_option("--imag", t_im);
  mellin->add_option("--xmax", xmax);
  mellin->add_option("--n", n);
  mellin->add_flag("--continued", continued);

  CLI::App* laplace = app.add_subcommand("laplace", "Laplace-transform check");
  laplace->add_option("--t", ts, "transform parameter(s)")->required();
  laplace->add_option("--n", n);

  CLI::App* constants = app.add_subcommand("constants", "asymptotic constants");
  constants->add_option("--n", n);

  CLI::App* fit = app.add_subcommand("fit", "three-term remainder fit");
  fit->add_option("--k", k);
  fit->add_option("--n", n);
  fit->add_option("--start", start);
  fit->add_option("--stop", stop);
  fit->add_option("--points", points);

  CLI::App* ledger = app.add_subcommand("ledger", "exponent bounds (exact rationals)");
  std::string kind;
  int ledger_k = 0;
  ledger->add_option("kind", kind, "theta|rho|eta|beta|sigmaC (omit for JSON)");
  ledger->add_option("k", ledger_k);

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", quick, "sieve limit 1e6 instead of 1e7");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (int rc = divlab_set_threads(threads)) return status_exit(rc);

  Provenance prov;
  {
    // thread count and output paths are execution detail, not config:
    // the same computation must stamp the same hash wherever it lands
    // and for any worker count
    std::istringstream in(app.config_to_str(true, false));
    std::ostringstream canon;
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("threads=", 0) == 0) continue;
      if (line.find(".output=") != std::string::npos) continue;
      canon << line << "\n";
    }
    prov.config = canon.str();
  }
  prov.sieve_limit = n;

  if (sieve->parsed()) {
    Table t;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    std::uint64_t last = 0;
    divlab_table_value(t.t, n, &last);
    std::cout << prov.header() << "k,limit,d_k(limit)\n"
              << k << "," << n << "," << last << "\n";
    return 0;
  }

  if (delta->parsed()) {
    if (n < static_cast<std::uint64_t>(x) + 1)
      n = static_cast<std::uint64_t>(x) + 1;
    prov.sieve_limit = n;
    Table t;
    Scan s;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    if (int rc = divlab_scan_new(t.t, &s.s)) return status_exit(rc);
    double d = 0.0;
    if (int rc = divlab_scan_delta(s.s, x, unprimed ? 0 : 1, &d))
      return status_exit(rc);
    std::cout << fmt(d) << "\n";
    return 0;
  }

  if (integrals->parsed()) {
    Table t;
    Scan s;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    if (int rc = divlab_scan_new(t.t, &s.s)) return status_exit(rc);
    std::vector<double> gx(points), gd(points), g1(points), g2(points);
    std::vector<double> g4(want_i4 ? points : 0), gj(want_j2 ? points : 0);
    if (int rc = divlab_scan_profile(
            s.s, start, stop, points, linear ? 0 : 1, gx.data(), gd.data(),
            g1.data(), g2.data(), want_i4 ? g4.data() : nullptr,
            want_j2 ? gj.data() : nullptr))
      return status_exit(rc);
    std::ostringstream os;
    os << prov.header() << "x,delta,I1,I2";
    if (want_i4) os << ",I4";
    if (want_j2) os << ",J2";
    os << "\n";
    for (int i = 0; i < points; ++i) {
      os << fmt(gx[i]) << "," << fmt(gd[i]) << "," << fmt(g1[i]) << ","
         << fmt(g2[i]);
      if (want_i4) os << "," << fmt(g4[i]);
      if (want_j2) os << "," << fmt(gj[i]);
      os << "\n";
    }
    emit(os.str(), output);
    return 0;
  }

  if (voronoi->parsed()) {
    Table t;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    double value = 0.0, tail = 0.0;
    int rc;
    if (integral_series)
      rc = divlab_voronoi_integral(t.t, x, terms, &value, &tail);
    else if (big_x > 0.0)
      rc = divlab_voronoi_delta3(t.t, x, big_x, &value, &tail);
    else
      rc = divlab_voronoi_delta_k(t.t, x, terms, &value, &tail);
    if (rc) return status_exit(rc);
    std::cout << prov.header() << "value,tail_bound\n"
              << fmt(value) << "," << fmt(tail) << "\n";
    return 0;
  }

  if (perron->parsed()) {
    Table t;
    Scan s;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    if (int rc = divlab_scan_new(t.t, &s.s)) return status_exit(rc);
    double approx = 0.0, exact = 0.0;
    if (int rc = divlab_perron_delta(s.s, x, c, big_t, &approx, &exact))
      return status_exit(rc);
    std::cout << prov.header() << "approx,exact,abs_err\n"
              << fmt(approx) << "," << fmt(exact) << ","
              << fmt(std::abs(approx - exact)) << "\n";
    return 0;
  }

  if (mellin->parsed()) {
    Table t;
    Scan s;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    if (int rc = divlab_scan_new(t.t, &s.s)) return status_exit(rc);
    if (xmax <= 0.0) xmax = static_cast<double>(n);
    double main_const = 0.0;
    if (continued) {
      if (k == 2) {
        double ident = 0.0;
        if (int rc = divlab_const_b(t.t, &ident, nullptr, nullptr, &main_const))
          return status_exit(rc);
      } else {
        double product = 0.0;
        if (int rc = divlab_const_c3(t.t, &main_const, &product, nullptr))
          return status_exit(rc);
      }
    }
    double re = 0.0, im = 0.0;
    if (int rc = divlab_mellin_k(s.s, continued ? 1 : 0, sigma, t_im,
                                 main_const, xmax, &re, &im))
      return status_exit(rc);
    std::cout << prov.header() << "re,im\n" << fmt(re) << "," << fmt(im)
              << "\n";
    return 0;
  }

  if (laplace->parsed()) {
    Table t;
    Scan s;
    if (int rc = acquire_table(2, n, &t.t)) return status_exit(rc);
    if (int rc = divlab_scan_new(t.t, &s.s)) return status_exit(rc);
    double ident = 0.0;
    if (int rc = divlab_const_b(t.t, &ident, nullptr, nullptr, nullptr))
      return status_exit(rc);
    std::ostringstream os;
    os << prov.header() << "T,lhs,leading,residual\n";
    std::vector<double> resid;
    for (double tv : ts) {
      double lhs = 0.0, leading = 0.0, r = 0.0;
      if (int rc = divlab_laplace_check(s.s, tv, ident, &lhs, &leading, &r))
        return status_exit(rc);
      resid.push_back(r);
      os << fmt(tv) << "," << fmt(lhs) << "," << fmt(leading) << ","
         << fmt(r) << "\n";
    }
    if (ts.size() >= 3) {
      double a1 = 0.0;
      if (divlab_laplace_fit_a1(ts.data(), resid.data(), ts.size(), &a1) ==
          DIVLAB_OK)
        os << "# a1_fit " << fmt(a1) << "\n";
    }
    std::cout << os.str();
    return 0;
  }

  if (constants->parsed()) {
    Table t2, t3;
    if (int rc = acquire_table(2, n, &t2.t)) return status_exit(rc);
    if (int rc = acquire_table(3, n, &t3.t)) return status_exit(rc);
    double ident = 0.0, direct = 0.0, budget = 0.0, a = 0.0;
    if (int rc = divlab_const_b(t2.t, &ident, &direct, &budget, &a))
      return status_exit(rc);
    double c3d = 0.0, c3p = 0.0, c3b = 0.0;
    if (int rc = divlab_const_c3(t3.t, &c3d, &c3p, &c3b))
      return status_exit(rc);
    std::cout << prov.header() << "name,value,budget\n"
              << "B_identity," << fmt(ident) << ",0\n"
              << "B_direct," << fmt(direct) << "," << fmt(budget) << "\n"
              << "A," << fmt(a) << ",0\n"
              << "C3_direct," << fmt(c3d) << "," << fmt(c3b) << "\n"
              << "C3_product," << fmt(c3p) << ",0\n";
    return 0;
  }

  if (fit->parsed()) {
    Table t;
    Scan s;
    if (int rc = acquire_table(k, n, &t.t)) return status_exit(rc);
    if (int rc = divlab_scan_new(t.t, &s.s)) return status_exit(rc);
    double main_const = 0.0;
    if (k == 2) {
      double ident = 0.0;
      if (int rc = divlab_const_b(t.t, &ident, nullptr, nullptr, &main_const))
        return status_exit(rc);
    } else {
      double product = 0.0;
      if (int rc = divlab_const_c3(t.t, &main_const, &product, nullptr))
        return status_exit(rc);
    }
    double a = 0.0, b = 0.0, cc = 0.0;
    if (int rc = divlab_fit_remainder(s.s, start, stop, points, main_const,
                                      &a, &b, &cc))
      return status_exit(rc);
    std::cout << prov.header() << "model,window,a,b,c\n"
              << "x_log2," << fmt(start) << ".." << fmt(stop) << ","
              << fmt(a) << "," << fmt(b) << "," << fmt(cc) << "\n";
    return 0;
  }

  if (ledger->parsed()) {
    if (kind.empty()) {
      char* json = nullptr;
      if (int rc = divlab_ledger_json(&json)) return status_exit(rc);
      std::cout << json << "\n";
      divlab_string_free(json);
      return 0;
    }
    static const char* names[] = {"theta", "rho", "eta", "beta", "sigmaC"};
    int code = -1;
    for (int i = 0; i < 5; ++i)
      if (kind == names[i]) code = i;
    if (code < 0) {
      std::cerr << "error: unknown ledger kind '" << kind << "'\n";
      return kExitUsage;
    }
    char buf[32];
    if (int rc = divlab_ledger(code, ledger_k, buf, sizeof buf))
      return status_exit(rc);
    std::cout << buf << "\n";
    return 0;
  }

  if (verify->parsed()) {
    char* report = nullptr;
    int failed = 0;
    if (int rc = divlab_verify(quick ? 1 : 0, &report, &failed))
      return status_exit(rc);
    std::cout << report;
    divlab_string_free(report);
    if (failed > 0) {
      std::cerr << failed << " criteria failed\n";
      return kExitFail;
    }
    return 0;
  }

  return kExitUsage;
}
