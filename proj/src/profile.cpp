#include "profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "errors.hpp"
#include "kahan.hpp"
#include "panel.hpp"
#include "parallel.hpp"

namespace divlab {

std::vector<double> GridSpec::abscissae() const {
  if (start < 1.0) throw DomainError("grid: start must be >= 1");
  if (stop < start) throw DomainError("grid: stop < start");
  if (points < 1) throw DomainError("grid: points must be >= 1");
  std::vector<double> xs;
  xs.reserve(points);
  if (points == 1) {
    xs.push_back(stop);
    return xs;
  }
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    xs.push_back(geometric ? start * std::pow(stop / start, f)
                           : start + f * (stop - start));
  }
  xs.back() = stop;
  return xs;
}

ErrorScan::ErrorScan(const DivisorTable& table, const MainTermModel& model)
    : table_(table), model_(model) {
  if (model.k != table.k())
    throw DomainError("error scan: table and main-term model disagree on k");
}

double ErrorScan::delta(double x, bool use_primed) const {
  if (x < 1.0 || x > static_cast<double>(table_.limit()))
    throw DomainError("delta: x outside [1, sieve limit]");
  return table_.summatory(x, use_primed) - model_.main_term(x);
}

namespace {

// Integrates Delta^p over [lo, hi] inside a single panel (constant prefix
// sum S), splitting so the expansion ratio stays <= 1/2 near x = 1.
double segment_pow(PanelExpander& pe, double lo, double hi, double s, int p) {
  double total = 0.0;
  while (hi - lo > 1e-15 * hi) {
    const double cut = std::min(hi, lo + lo * 0.5);
    pe.prepare(lo, cut - lo, s);
    total += pe.integral_pow(p);
    lo = cut;
  }
  return total;
}

struct BlockSums {
  KahanReal i1, i2, i4;
  double abs1 = 0, abs2 = 0, abs4 = 0;
};

}  // namespace

double ErrorScan::integral_pow(double a, double b, int p) const {
  if (p != 1 && p != 2 && p != 4)
    throw UnsupportedError("integral: power must be 1, 2 or 4");
  if (p == 4 && model_.k != 2)
    throw UnsupportedError("integral: fourth moment only for k = 2");
  if (a < 1.0 || b > static_cast<double>(table_.limit()))
    throw DomainError("integral: range outside [1, sieve limit]");
  if (b <= a) return 0.0;

  PanelExpander pe(model_);
  auto n = static_cast<std::uint64_t>(std::floor(a));
  std::uint64_t s = table_.prefix(n);
  KahanReal acc;
  double lo = a;
  while (lo < b) {
    const double panel_hi = static_cast<double>(n + 1);
    const double hi = std::min(b, panel_hi);
    acc.add(segment_pow(pe, lo, hi, static_cast<double>(s), p));
    if (hi >= b) break;
    lo = panel_hi;
    ++n;
    s += table_.value(n);
  }
  return acc.value();
}

std::pair<double, double> ErrorScan::local_average(double x, double H) const {
  if (H < 1e-12 || H > x) throw DomainError("local average: need 0 < H <= x");
  if (x + H > static_cast<double>(table_.limit()))
    throw DomainError("local average: x + H exceeds sieve limit");
  const double avg = integral_pow(x, x + H, 1) / H;
  return {avg, std::fabs(delta(x) - avg)};
}

ErrorTermProfile ErrorScan::profile(const GridSpec& grid, bool want_i4,
                                    bool want_j2) const {
  if (want_i4 && model_.k != 2)
    throw UnsupportedError("profile: fourth moment only for k = 2");
  if (grid.stop > static_cast<double>(table_.limit()))
    throw DomainError("profile: grid exceeds sieve limit");
  if (grid.stop < 3.0) throw DomainError("profile: grid stop must be >= 3");

  const std::vector<double> xs = grid.abscissae();
  const double stop = grid.stop;
  const std::size_t ng = xs.size();

  ErrorTermProfile out;
  out.k = model_.k;
  out.x = xs;
  out.delta.assign(ng, 0.0);
  out.i1.assign(ng, 0.0);
  out.i2.assign(ng, 0.0);
  if (want_i4) out.i4.assign(ng, 0.0);
  if (want_j2) out.j2.assign(ng, 0.0);

  // ---- head: [1, 2], plus any grid points below 2 -----------------------
  PanelExpander pe(model_);
  KahanReal head1, head2, head4, headj;
  double habs1 = 0, habs2 = 0, habs4 = 0;
  std::size_t ghead = 0;
  {
    double lo = 1.0;
    while (lo < 2.0 - 1e-15) {
      const double cut = std::min(2.0, lo + lo * 0.5);
      while (ghead < ng && xs[ghead] < cut - 1e-15) {
        const double x = xs[ghead];
        const double t = x - lo;
        if (t > 1e-15) {
          pe.prepare(lo, t, 1.0);
          out.delta[ghead] = pe.delta().eval(t);
          out.i1[ghead] = head1.value() + pe.integral_pow(1);
          out.i2[ghead] = head2.value() + pe.integral_pow(2);
          if (want_i4) out.i4[ghead] = head4.value() + pe.integral_pow(4);
          if (want_j2) {
            Poly base = pe.delta_antiderivative();
            base.c[0] += head1.value();
            if (base.n == 0) base.n = 1;
            out.j2[ghead] =
                headj.value() +
                poly::integrate(poly::mul(base, base, pe.cap()), t);
          }
        } else {
          out.delta[ghead] =
              (x == 1.0 ? 0.5 : 1.0) - model_.main_term(std::max(x, 1.0));
          out.i1[ghead] = head1.value();
          out.i2[ghead] = head2.value();
          if (want_i4) out.i4[ghead] = head4.value();
          if (want_j2) out.j2[ghead] = headj.value();
        }
        ++ghead;
      }
      pe.prepare(lo, cut - lo, 1.0);
      const double v1 = pe.integral_pow(1);
      const double v2 = pe.integral_pow(2);
      if (want_j2) {
        Poly base = pe.delta_antiderivative();
        base.c[0] += head1.value();
        if (base.n == 0) base.n = 1;
        headj.add(poly::integrate(poly::mul(base, base, pe.cap()), cut - lo));
      }
      head1.add(v1);
      head2.add(v2);
      habs1 += std::fabs(v1);
      habs2 += v2;
      if (want_i4) {
        const double v4 = pe.integral_pow(4);
        head4.add(v4);
        habs4 += v4;
      }
      lo = cut;
    }
  }

  // ---- panels n = 2 .. floor(stop), in fixed-size blocks ----------------
  // The last panel is partial (or empty when stop is an integer); only
  // panels with n + 1 <= stop contribute full unit integrals.
  const auto nmax = static_cast<std::uint64_t>(std::floor(stop));
  const std::uint64_t first_panel = 2;
  const std::uint64_t last_panel = nmax;
  const std::uint64_t npan = last_panel - first_panel + 1;

  constexpr std::uint64_t kBlock = 8192;
  const auto nblocks = static_cast<std::size_t>((npan + kBlock - 1) / kBlock);
  auto block_lo = [&](std::size_t b) { return first_panel + b * kBlock; };
  auto block_hi = [&](std::size_t b) {
    return first_panel + std::min(npan, (b + 1) * kBlock);
  };

  // exact integer prefix sums at block starts
  std::vector<std::uint64_t> block_prefix(nblocks);
  {
    std::uint64_t s = table_.value(1) + table_.value(2);  // prefix(2)
    std::uint64_t n = first_panel;
    for (std::size_t b = 0; b < nblocks; ++b) {
      block_prefix[b] = s;
      for (; n < block_hi(b); ++n)
        if (n < last_panel) s += table_.value(n + 1);
    }
  }

  // grid point -> owning panel / block
  std::vector<std::uint64_t> grid_panel(ng, 0);
  std::vector<std::size_t> grid_block(ng, SIZE_MAX);
  std::vector<bool> has_grid(nblocks, false);
  for (std::size_t i = ghead; i < ng; ++i) {
    const auto pn =
        std::max(static_cast<std::uint64_t>(std::floor(xs[i])), first_panel);
    grid_panel[i] = pn;
    grid_block[i] = static_cast<std::size_t>((pn - first_panel) / kBlock);
    has_grid[grid_block[i]] = true;
  }

  // pass 1: per-block sums over full panels (n + 1 <= stop)
  std::vector<BlockSums> sums(nblocks);
  for_each_block(nblocks, [&](std::size_t b) {
    PanelExpander bpe(model_);
    std::uint64_t s = block_prefix[b];
    BlockSums& sb = sums[b];
    for (std::uint64_t n = block_lo(b); n < block_hi(b); ++n) {
      if (static_cast<double>(n + 1) <= stop) {
        bpe.prepare(static_cast<double>(n), 1.0, static_cast<double>(s));
        const double v1 = bpe.integral_pow(1);
        const double v2 = bpe.integral_pow(2);
        sb.i1.add(v1);
        sb.i2.add(v2);
        sb.abs1 += std::fabs(v1);
        sb.abs2 += v2;
        if (want_i4) {
          const double v4 = bpe.integral_pow(4);
          sb.i4.add(v4);
          sb.abs4 += v4;
        }
      }
      if (n < last_panel) s += table_.value(n + 1);
    }
  });

  // serial prefix over blocks
  std::vector<double> pre1(nblocks), pre2(nblocks), pre4(nblocks);
  {
    KahanReal a1 = head1, a2 = head2, a4 = head4;
    for (std::size_t b = 0; b < nblocks; ++b) {
      pre1[b] = a1.value();
      pre2[b] = a2.value();
      pre4[b] = a4.value();
      a1.merge(sums[b].i1);
      a2.merge(sums[b].i2);
      a4.merge(sums[b].i4);
      habs1 += sums[b].abs1;
      habs2 += sums[b].abs2;
      habs4 += sums[b].abs4;
    }
  }
  out.budget_i1 = 4e-16 * habs1 + 1e-17 * static_cast<double>(npan + 2);
  out.budget_i2 = 4e-16 * habs2 + 1e-17 * static_cast<double>(npan + 2);
  out.budget_i4 = 4e-16 * habs4 + 1e-17 * static_cast<double>(npan + 2);

  // pass 2: grid samples, and the running integral of I1^2 when requested.
  // J2 grid values are recorded relative to the block start and fixed up
  // after the serial prefix of the per-block J2 sums.
  std::vector<KahanReal> jsum(want_j2 ? nblocks : 0);
  for_each_block(nblocks, [&](std::size_t b) {
    if (!want_j2 && !has_grid[b]) return;
    PanelExpander bpe(model_);
    PanelExpander ppe(model_);
    std::uint64_t s = block_prefix[b];
    KahanReal run1, run2, run4, runj;
    std::size_t gi = ghead;
    if (has_grid[b])
      while (gi < ng && grid_block[gi] != b) ++gi;
    for (std::uint64_t n = block_lo(b); n < block_hi(b); ++n) {
      const bool full = static_cast<double>(n + 1) <= stop;
      const double i1_at_n = pre1[b] + run1.value();
      while (gi < ng && grid_block[gi] == b && grid_panel[gi] == n) {
        const double x = xs[gi];
        const double t = x - static_cast<double>(n);
        if (t > 1e-15) {
          ppe.prepare(static_cast<double>(n), t, static_cast<double>(s));
          out.delta[gi] = ppe.delta().eval(t);
          out.i1[gi] = i1_at_n + ppe.integral_pow(1);
          out.i2[gi] = pre2[b] + run2.value() + ppe.integral_pow(2);
          if (want_i4)
            out.i4[gi] = pre4[b] + run4.value() + ppe.integral_pow(4);
          if (want_j2) {
            Poly base = ppe.delta_antiderivative();
            base.c[0] += i1_at_n;
            if (base.n == 0) base.n = 1;
            out.j2[gi] = runj.value() +
                         poly::integrate(poly::mul(base, base, ppe.cap()), t);
          }
        } else {
          out.delta[gi] = static_cast<double>(s) -
                          0.5 * static_cast<double>(table_.value(n)) -
                          model_.main_term(x);
          out.i1[gi] = i1_at_n;
          out.i2[gi] = pre2[b] + run2.value();
          if (want_i4) out.i4[gi] = pre4[b] + run4.value();
          if (want_j2) out.j2[gi] = runj.value();
        }
        ++gi;
      }
      if (full) {
        bpe.prepare(static_cast<double>(n), 1.0, static_cast<double>(s));
        if (want_j2) {
          Poly base = bpe.delta_antiderivative();
          base.c[0] += i1_at_n;
          if (base.n == 0) base.n = 1;
          runj.add(poly::integrate(poly::mul(base, base, bpe.cap()), 1.0));
        }
        run1.add(bpe.integral_pow(1));
        if (has_grid[b]) {
          run2.add(bpe.integral_pow(2));
          if (want_i4) run4.add(bpe.integral_pow(4));
        }
      }
      if (n < last_panel) s += table_.value(n + 1);
    }
    if (want_j2) jsum[b] = runj;
  });

  if (want_j2) {
    KahanReal aj = headj;
    for (std::size_t b = 0; b < nblocks; ++b) {
      const double prej = aj.value();
      for (std::size_t i = ghead; i < ng; ++i)
        if (grid_block[i] == b) out.j2[i] += prej;
      aj.merge(jsum[b]);
    }
  }
  return out;
}

void write_profile_csv(const ErrorTermProfile& p, const std::string& path,
                       const std::string& provenance) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw IoError("cannot open for writing: " + path);
  std::fprintf(f.get(), "%s", provenance.c_str());
  std::fprintf(f.get(), "x,delta,I1,I2,I4\n");
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g,", p.x[i], p.delta[i],
                 p.i1[i], p.i2[i]);
    if (!p.i4.empty())
      std::fprintf(f.get(), "%.17g\n", p.i4[i]);
    else
      std::fprintf(f.get(), "nan\n");
  }
}

}  // namespace divlab
