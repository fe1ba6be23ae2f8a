#pragma once

#include <utility>
#include <vector>

#include "divisor_table.hpp"
#include "mainterm.hpp"

namespace divlab {

struct GridSpec {
  double start = 1.0;
  double stop = 1.0;
  int points = 1;
  bool geometric = true;

  std::vector<double> abscissae() const;
};

// Exact Delta_k samples and exact piecewise integrals on a grid.
struct ErrorTermProfile {
  int k = 0;
  std::vector<double> x;
  std::vector<double> delta;  // Delta_k(x), primed-sum convention
  std::vector<double> i1;     // int_1^x Delta
  std::vector<double> i2;     // int_1^x Delta^2
  std::vector<double> i4;     // int_1^x Delta^4 (k = 2 only, else empty)
  std::vector<double> j2;     // int_1^x I1(u)^2 du (optional)
  // First-order bound on accumulated rounding: 4 ulp of the sum of
  // absolute panel contributions plus the 1e-17/panel expansion budget.
  double budget_i1 = 0, budget_i2 = 0, budget_i4 = 0;
};

// All Delta_k evaluation and panel-exact integration for one table.
class ErrorScan {
 public:
  ErrorScan(const DivisorTable& table, const MainTermModel& model);

  int k() const { return model_.k; }
  const DivisorTable& table() const { return table_; }
  const MainTermModel& model() const { return model_; }

  // Delta_k(x) with the last divisor-sum term halved at integer x.
  // use_primed=false gives the unprimed variant.
  double delta(double x, bool use_primed = true) const;

  // int_a^b Delta^p du, p in {1,2,4}, panel-exact.  O(b) time.
  double integral_pow(double a, double b, int p) const;

  // (avg, deviation): avg = H^-1 int_x^{x+H} Delta, deviation = |Delta(x)-avg|
  std::pair<double, double> local_average(double x, double H) const;

  // Running integrals sampled on the grid.  want_i4 requires k == 2.
  ErrorTermProfile profile(const GridSpec& grid, bool want_i4,
                           bool want_j2 = false) const;

 private:
  const DivisorTable& table_;
  MainTermModel model_;
};

void write_profile_csv(const ErrorTermProfile& p, const std::string& path,
                       const std::string& provenance);

}  // namespace divlab
