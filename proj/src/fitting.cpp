#include "fitting.hpp"

#include <cmath>

#include "errors.hpp"

namespace divlab {

std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-300)
      throw NumericalError("linear solve: singular matrix");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t c = i + 1; c < n; ++c) v -= a[i][c] * x[c];
    x[i] = v / a[i][i];
  }
  return x;
}

std::vector<double> lsq_solve(const std::vector<std::vector<double>>& cols,
                              const std::vector<double>& y) {
  const std::size_t p = cols.size();
  const std::size_t n = y.size();
  if (p == 0 || n < p) throw DomainError("least squares: too few samples");
  std::vector<std::vector<double>> ata(p, std::vector<double>(p, 0.0));
  std::vector<double> aty(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += cols[j][i] * cols[k][i];
      ata[j][k] = ata[k][j] = s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cols[j][i] * y[i];
    aty[j] = s;
  }
  return solve_linear(std::move(ata), std::move(aty));
}

SlopeFit slope_loglog(const std::vector<double>& x,
                      const std::vector<double>& v) {
  if (x.size() != v.size()) throw DomainError("slope fit: size mismatch");
  std::vector<double> lx, lv;
  int dropped = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || v[i] == 0.0) {
      ++dropped;
      continue;
    }
    lx.push_back(std::log(x[i]));
    lv.push_back(std::log(std::fabs(v[i])));
  }
  const std::size_t n = lx.size();
  if (n < 8) throw DomainError("slope fit: need >= 8 usable samples");
  double xmin = lx[0], xmax = lx[0];
  for (double u : lx) {
    xmin = std::min(xmin, u);
    xmax = std::max(xmax, u);
  }
  if (xmax - xmin < 2.0 * std::log(10.0))
    throw DomainError("slope fit: samples must span >= 2 decades");

  double mx = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    mv += lv[i];
  }
  mx /= n;
  mv /= n;
  double sxx = 0.0, sxv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxv += (lx[i] - mx) * (lv[i] - mv);
  }
  SlopeFit fit;
  fit.slope = sxv / sxx;
  fit.intercept = mv - fit.slope * mx;
  fit.dropped = dropped;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = lv[i] - fit.intercept - fit.slope * lx[i];
    rss += r * r;
  }
  const double se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  fit.ci_lo = fit.slope - 1.96 * se;
  fit.ci_hi = fit.slope + 1.96 * se;
  return fit;
}

ThreeTermFit fit_xlog2(const std::vector<double>& x,
                       const std::vector<double>& f) {
  if (x.size() != f.size()) throw DomainError("fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("fit: need >= 3 samples");
  double lmin = 1e300, lmax = -1e300;
  // normalized by x: fit f/x against {log^2 x, log x, 1}, so every decade
  // of a geometric grid carries equal weight; raw OLS lets the top decade
  // bleed its lower-order terms into the leading coefficient
  std::vector<std::vector<double>> cols(3, std::vector<double>(n));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw DomainError("fit: x must be positive");
    const double l = std::log(x[i]);
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
    cols[0][i] = l * l;
    cols[1][i] = l;
    cols[2][i] = 1.0;
    y[i] = f[i] / x[i];
  }
  if (n > 3 && lmax - lmin < 2.0 * std::log(10.0))
    throw NumericalError("fit: grid too narrow, basis ill-conditioned");
  const std::vector<double> c = lsq_solve(cols, y);
  return {c[0], c[1], c[2]};
}

}  // namespace divlab
