#include "bq/siegel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "bq/factor.hpp"
#include "bq/threads.hpp"

namespace bq {

namespace {

constexpr u64 kTripleGuard = 1'000'000'000;

// Integer radius of |x| <= bound, with a hair of slack so that bounds that
// are exact integers up to rounding noise keep their boundary points.
i64 radius(double bound) {
  if (bound < 0) return -1;
  return static_cast<i64>(std::floor(bound + 1e-9));
}

double wall_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

}  // namespace

CoeffBox sharp_box(double lambda4, double t, double C) {
  if (!(lambda4 > 0) || !(t > 0) || !(C > 0)) {
    throw std::invalid_argument("sharp_box: positive parameters required");
  }
  CoeffBox box;
  double t2 = t * t;
  box.bound = {C * lambda4 / (t2 * t2), C * lambda4 / t2, C * lambda4, C * lambda4 * t2,
               C * lambda4 * t2 * t2};
  return box;
}

CoeffBox cube_box(double H) {
  if (!(H >= 0)) throw std::invalid_argument("cube_box: H >= 0 required");
  return {{H, H, H, H, H}};
}

CoeffBox enclosing_box(double lambda4, double t, double u, double C) {
  // A form with nonzero weight has |(g^-1 F)_j| < C, so F lies in the image
  // of the open C-cube under g = scale(lambda) o shear(u) o diag(1/t, t).
  // Coefficient i of shear(u) G is sum_{j <= i} binom(4-j, i-j) u^(i-j) G_j;
  // bounding each |G_j| by C t^(2j-4) gives a tight axis-aligned hull.
  static const int binom[5][5] = {
      {1, 0, 0, 0, 0}, {4, 1, 0, 0, 0}, {6, 3, 1, 0, 0}, {4, 3, 2, 1, 0}, {1, 1, 1, 1, 1}};
  // binom[i][j] = C(4-j, i-j) for j <= i.
  CoeffBox box;
  double t2 = t * t;
  double au = std::abs(u);
  std::array<double, 5> upow{1, au, au * au, au * au * au, au * au * au * au};
  std::array<double, 5> tpow;  // t^(2j-4)
  for (int j = 0; j <= 4; ++j) tpow[static_cast<std::size_t>(j)] = std::pow(t2, j - 2);
  for (int i = 0; i <= 4; ++i) {
    double s = 0;
    for (int j = 0; j <= i; ++j) {
      s += binom[i][j] * upow[static_cast<std::size_t>(i - j)] * tpow[static_cast<std::size_t>(j)];
    }
    box.bound[static_cast<std::size_t>(i)] = lambda4 * C * s;
  }
  return box;
}

std::vector<std::pair<i64, i64>> divisor_pairs(i64 m) {
  if (m == 0) throw std::invalid_argument("divisor_pairs: m = 0 has infinite fiber");
  std::vector<std::pair<i64, i64>> out;
  if (m % 12 != 0) return out;
  i64 n = m / 12;
  u64 an = static_cast<u64>(iabs64(n));
  for (u64 d : divisors_u64(an)) {
    i64 a = static_cast<i64>(d);
    i64 e = n / a;
    out.emplace_back(a, e);
    out.emplace_back(-a, -e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct SliceTotals {
  i64 nonzero_ae = 0;
  i64 zero_ae = 0;
  i64 max_fiber = 0;
};

// Core fiber walk for one value of b. A, E bound the (a, e) pair; the
// callback, when present, receives forms in lexicographic (b, c, d, a)
// order within the slice.
template <class Visit>
SliceTotals scan_b(i64 b, i64 A, i64 Cb, i64 D, i64 E, bool include_zero_ae, Visit&& visit,
                   bool emit) {
  SliceTotals tot;
  for (i64 c = -Cb; c <= Cb; ++c) {
    for (i64 d = -D; d <= D; ++d) {
      i64 m = 3 * b * d - c * c;
      if (m == 0) {
        if (!include_zero_ae) continue;
        // a e = 0 fiber: a = 0 with e free, plus e = 0 with a free,
        // minus the doubly counted origin.
        tot.zero_ae += 2 * A + 2 * E + 1;
        if (emit) {
          for (i64 e = -E; e <= E; ++e) visit(std::array<i64, 5>{0, b, c, d, e});
          for (i64 a = -A; a <= A; ++a) {
            if (a != 0) visit(std::array<i64, 5>{a, b, c, d, 0});
          }
        }
        continue;
      }
      if (m % 12 != 0) continue;
      i64 fiber = 0;
      for (auto [a, e] : divisor_pairs(m)) {
        if (iabs64(a) > A || iabs64(e) > E) continue;
        ++fiber;
        if (emit) visit(std::array<i64, 5>{a, b, c, d, e});
      }
      tot.nonzero_ae += fiber;
      tot.max_fiber = std::max(tot.max_fiber, fiber);
    }
  }
  return tot;
}

}  // namespace

BoxCountReport count_I0_box(const CoeffBox& box, const EnumOptions& opt) {
  i64 A = radius(box.bound[0]);
  i64 B = radius(box.bound[1]);
  i64 Cb = radius(box.bound[2]);
  i64 D = radius(box.bound[3]);
  i64 E = radius(box.bound[4]);
  BoxCountReport rep;
  double start = wall_seconds();
  if (A < 0 || B < 0 || Cb < 0 || D < 0 || E < 0) return rep;
  if (static_cast<double>(2 * B + 1) * static_cast<double>(2 * Cb + 1) *
          static_cast<double>(2 * D + 1) >
      static_cast<double>(kTripleGuard)) {
    throw GuardError("count_I0_box: (b, c, d) volume exceeds 10^9");
  }
  rep.triples = static_cast<u64>(2 * B + 1) * static_cast<u64>(2 * Cb + 1) *
                static_cast<u64>(2 * D + 1);
  std::size_t nb = static_cast<std::size_t>(2 * B + 1);
  if (opt.visitor) {
    for (i64 b = -B; b <= B; ++b) {
      SliceTotals t =
          scan_b(b, A, Cb, D, E, opt.include_zero_ae, opt.visitor, /*emit=*/true);
      rep.nonzero_ae += t.nonzero_ae;
      rep.zero_ae += t.zero_ae;
      rep.max_fiber = std::max(rep.max_fiber, t.max_fiber);
    }
  } else {
    std::vector<SliceTotals> partial(nb);
    run_slices(nb, opt.threads, [&](std::size_t s) {
      i64 b = -B + static_cast<i64>(s);
      partial[s] = scan_b(b, A, Cb, D, E, opt.include_zero_ae,
                          [](const std::array<i64, 5>&) {}, /*emit=*/false);
    });
    for (const SliceTotals& t : partial) {
      rep.nonzero_ae += t.nonzero_ae;
      rep.zero_ae += t.zero_ae;
      rep.max_fiber = std::max(rep.max_fiber, t.max_fiber);
    }
  }
  rep.total = rep.nonzero_ae + rep.zero_ae;
  rep.seconds = wall_seconds() - start;
  return rep;
}

i64 brute_force_I0_count(const CoeffBox& box) {
  i64 A = radius(box.bound[0]);
  i64 B = radius(box.bound[1]);
  i64 Cb = radius(box.bound[2]);
  i64 D = radius(box.bound[3]);
  i64 E = radius(box.bound[4]);
  if (A < 0 || B < 0 || Cb < 0 || D < 0 || E < 0) return 0;
  double volume = 1;
  for (i64 r : {A, B, Cb, D, E}) volume *= static_cast<double>(2 * r + 1);
  if (volume > static_cast<double>(kTripleGuard)) {
    throw GuardError("brute_force_I0_count: lattice volume exceeds 10^9");
  }
  i64 count = 0;
  for (i64 a = -A; a <= A; ++a)
    for (i64 b = -B; b <= B; ++b)
      for (i64 c = -Cb; c <= Cb; ++c)
        for (i64 d = -D; d <= D; ++d)
          for (i64 e = -E; e <= E; ++e) {
            if (12 * a * e - 3 * b * d + c * c == 0) ++count;
          }
  return count;
}

double bump1(double x) {
  auto psi = [](double v) { return v > 0 ? std::exp(-1.0 / v) : 0.0; };
  double ax = std::abs(x);
  double up = psi(1.0 - ax);
  double down = psi(ax - 0.5);
  if (up == 0.0) return 0.0;
  return up / (up + down);
}

double weighted_I0_count(double lambda4, double t, double u, double C, int threads) {
  CoeffBox outer = enclosing_box(lambda4, t, u, C);
  i64 A = radius(outer.bound[0]);
  i64 B = radius(outer.bound[1]);
  i64 Cb = radius(outer.bound[2]);
  i64 D = radius(outer.bound[3]);
  i64 E = radius(outer.bound[4]);
  if (A < 0 || B < 0 || Cb < 0 || D < 0 || E < 0) return 0.0;
  if (static_cast<double>(2 * B + 1) * static_cast<double>(2 * Cb + 1) *
          static_cast<double>(2 * D + 1) >
      static_cast<double>(kTripleGuard)) {
    throw GuardError("weighted_I0_count: (b, c, d) volume exceeds 10^9");
  }
  double lambda = std::pow(lambda4, 0.25);
  auto weight = [&](const std::array<i64, 5>& f) -> double {
    RealQuarticForm F{static_cast<double>(f[0]), static_cast<double>(f[1]),
                      static_cast<double>(f[2]), static_cast<double>(f[3]),
                      static_cast<double>(f[4])};
    RealQuarticForm G = act_iwasawa(lambda, t, u, F, /*inverse=*/true);
    double w = 1.0;
    for (double coeff : G.coeffs()) {
      w *= bump1(coeff / C);
      if (w == 0.0) return 0.0;
    }
    return w;
  };
  std::size_t nb = static_cast<std::size_t>(2 * B + 1);
  std::vector<long double> partial(nb, 0.0L);
  run_slices(nb, threads, [&](std::size_t s) {
    i64 b = -B + static_cast<i64>(s);
    long double acc = 0.0L;
    scan_b(
        b, A, Cb, D, E, /*include_zero_ae=*/true,
        [&](const std::array<i64, 5>& f) { acc += weight(f); }, /*emit=*/true);
    partial[s] = acc;
  });
  long double total = 0.0L;
  for (long double v : partial) total += v;
  return static_cast<double>(total);
}

TailReport tail_experiment(const std::vector<double>& lambda4_grid,
                           const std::vector<double>& t_grid, double C, double epsilon,
                           int threads) {
  TailReport report;
  EnumOptions opt;
  opt.include_zero_ae = false;
  opt.threads = threads;
  for (double lambda4 : lambda4_grid) {
    double lambda12 = lambda4 * lambda4 * lambda4;
    for (double t : t_grid) {
      auto rep = count_I0_box(sharp_box(lambda4, t, C), opt);
      TailCell cell;
      cell.lambda4 = lambda4;
      cell.t = t;
      cell.count = rep.nonzero_ae;
      cell.count_over_lambda12 = static_cast<double>(rep.nonzero_ae) / lambda12;
      cell.max_fiber = rep.max_fiber;
      cell.seconds = rep.seconds;
      report.cells.push_back(cell);
    }
    // Cusp-weighted count: integral of N(lambda, t) t^-2 dt/t from
    // t = lambda^epsilon up to the height where the a-range empties
    // (C lambda^4 / t^4 < 1, i.e. t > (C lambda^4)^(1/4)).
    double lambda = std::pow(lambda4, 0.25);
    double t_lo = std::pow(lambda, epsilon);
    double t_hi = std::pow(C * lambda4, 0.25) * 1.01;
    CuspIntegral cusp;
    cusp.lambda4 = lambda4;
    cusp.epsilon = epsilon;
    if (t_hi > t_lo) {
      const int n_pts = 25;
      double ratio = std::pow(t_hi / t_lo, 1.0 / (n_pts - 1));
      double log_step = std::log(ratio);
      std::vector<double> vals(n_pts);
      for (int i = 0; i < n_pts; ++i) {
        double t = t_lo * std::pow(ratio, i);
        auto rep = count_I0_box(sharp_box(lambda4, t, C), opt);
        vals[static_cast<std::size_t>(i)] =
            static_cast<double>(rep.nonzero_ae) / (t * t);
      }
      double integral = 0;
      for (int i = 0; i + 1 < n_pts; ++i) {
        integral += 0.5 * (vals[static_cast<std::size_t>(i)] +
                           vals[static_cast<std::size_t>(i + 1)]) *
                    log_step;
      }
      cusp.value = integral;
    }
    cusp.over_lambda12 = cusp.value / lambda12;
    cusp.over_lambda12_2eps = cusp.value / std::pow(lambda, 12.0 - 2.0 * epsilon);
    report.cusp.push_back(cusp);
  }
  return report;
}

}  // namespace bq
