#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bq/ints.hpp"
#include "bq/quartic.hpp"

namespace bq {

// Height floor of the standard cusp region, sqrt(sqrt(3)/2).
inline constexpr double kSiegelTMin = 0.930604859102100;

// Axis-aligned coefficient box |coeff_i| <= bound[i].
struct CoeffBox {
  std::array<double, 5> bound;
};

// Skewed box of the cusp parametrization: |coeff_i| <= C lambda^4 t^(2i-4).
CoeffBox sharp_box(double lambda4, double t, double C);

// Cube |coeff_i| <= H.
CoeffBox cube_box(double H);

// Smallest sharp-type box containing the support of the smooth weight at
// (lambda, t, u): any form with nonzero weight satisfies these bounds.
CoeffBox enclosing_box(double lambda4, double t, double u, double C);

// Integer solutions (a, e) of 12 a e = m, m != 0, ordered by (a, e).
// Empty when 12 does not divide m; m = 0 raises std::invalid_argument since
// the solution set is infinite.
std::vector<std::pair<i64, i64>> divisor_pairs(i64 m);

struct EnumOptions {
  bool include_zero_ae = true;
  int threads = 0;  // 0 = resolve from environment
  // When set, every enumerated form is passed in deterministic order and
  // the loop runs serially.
  std::function<void(const std::array<i64, 5>&)> visitor;
};

struct BoxCountReport {
  i64 total = 0;
  i64 nonzero_ae = 0;  // forms with a e != 0
  i64 zero_ae = 0;     // forms with a = 0 or e = 0 (3 b d = c^2 fibers)
  i64 max_fiber = 0;   // largest divisor fiber over a (b, c, d) triple
  u64 triples = 0;
  double seconds = 0;
};

// Integer forms with I = 0 inside the box, counted through the fibration
// over (b, c, d): each fiber is the divisor-pair set of 3 b d - c^2. The
// (b, c, d) volume is capped at 10^9 triples (GuardError beyond).
BoxCountReport count_I0_box(const CoeffBox& box, const EnumOptions& opt = {});

// Same count by testing I on every lattice point of the box; the total
// lattice volume is capped at 10^9. Oracle for count_I0_box.
i64 brute_force_I0_count(const CoeffBox& box);

// Smooth counterpart of count_I0_box: sums, over integer forms with I = 0,
// the product bump weight of the coordinates of g^{-1} F where g is the
// Iwasawa element (lambda, t, u).
double weighted_I0_count(double lambda4, double t, double u, double C, int threads = 0);

// One-dimensional transition bump: 1 on |x| <= 1/2, 0 on |x| >= 1, smooth
// with values in (0, 1) on the transition shell.
double bump1(double x);

struct TailCell {
  double lambda4 = 0;
  double t = 0;
  i64 count = 0;
  double count_over_lambda12 = 0;
  i64 max_fiber = 0;
  double seconds = 0;
};

struct CuspIntegral {
  double lambda4 = 0;
  double epsilon = 0;
  double value = 0;             // integral of N(lambda, t) t^-2 dt/t over t >= lambda^epsilon
  double over_lambda12 = 0;     // value / lambda^12
  double over_lambda12_2eps = 0;  // value / lambda^(12 - 2 epsilon)
};

struct TailReport {
  std::vector<TailCell> cells;
  std::vector<CuspIntegral> cusp;
};

// Sharp-box counts on the (lambda4, t) grid plus the cusp-weighted count
// integral for each lambda4. epsilon is the cusp cutoff exponent.
TailReport tail_experiment(const std::vector<double>& lambda4_grid,
                           const std::vector<double>& t_grid, double C, double epsilon,
                           int threads = 0);

}  // namespace bq
