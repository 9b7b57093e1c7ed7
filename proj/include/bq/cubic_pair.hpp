#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bq/ints.hpp"
#include "bq/quartic.hpp"

namespace bq {

// a X^3 + b X^2 Y + c X Y^2 + d Y^3, exact integer coefficients.
struct BinaryCubicForm {
  bint a{0}, b{0}, c{0}, d{0};
  bool operator==(const BinaryCubicForm&) const = default;
};

struct CubicPair {
  BinaryCubicForm first, second;
  bool operator==(const CubicPair&) const = default;
};

// The alternating bilinear invariant 3 a1 d2 - b1 c2 + c1 b2 - 3 d1 a2.
// Vanishes on proportional pairs; changes sign under swap.
bint invariant_I2(const CubicPair& v);

// Discriminant of the pencil cubic x*F1 + y*F2, expanded as a binary
// quartic in the pencil coordinates (x, y).  invariant_I2(v) divides the
// I invariant of the result, exactly.
BinaryQuarticForm resolvent_quartic(const CubicPair& v);

// Degree-six polynomial in the eight coefficients, invariant under the
// unimodular pencil and variable actions.  The degree-six invariants form
// a plane spanned by invariant_I2 cubed and this polynomial, which is
// pinned by having no a1^3 d2^3 term (so it vanishes on (X^3, Y^3)),
// primitive integer coefficients, and a positive leading coefficient.
// It changes sign under the swap and under one variable reflection, and
// the resolvent invariants satisfy I = 9 I2^4 + 8 I2 I6 and
// J = 54 I2^6 + 72 I2^3 I6 + 16 I6^2 identically.  Whether it matches the
// classical sextic generator is unverified; on the I2 = 0 locus any
// degree-six invariant agrees with it up to scale, which is all a height
// needs.
bint sextic_invariant(const CubicPair& v);

// max(|I2|^(1/2), |I6|^(1/6))^24.
double pair_height(const CubicPair& v);

// Bounds |coeff_i| <= bound[i] in the order (a1,b1,c1,d1,a2,b2,c2,d2).
struct PairBox {
  std::array<double, 8> bound{};
};

// Skewed box with per-coefficient scale lambda * t^(2i-3) for each cubic,
// all multiplied by C.
PairBox pair_sharp_box(double lambda, double t, double C);

struct PairCountReport {
  u64 total = 0;
  // Pairs with a1 * d2 = 0 (solved by a direct sweep) and with
  // a1 * d2 != 0 (solved by divisor enumeration).
  u64 zero_stratum = 0;
  u64 divisor_stratum = 0;
  u64 max_fiber = 0;
  u64 six_tuples = 0;
  double seconds = 0;
};

struct PairEnumOptions {
  std::function<void(const CubicPair&)> visitor;
};

// All pairs in the box with invariant_I2 = 0.  Iterates the six outer
// coefficients (b1,c1,d1,a2,b2,c2) and solves 3 a1 d2 = b1 c2 - c1 b2 +
// 3 d1 a2 for (a1, d2) by divisor enumeration, with a separate sweep for
// the a1 d2 = 0 stratum.  The product of the six outer ranges is guarded
// at 6e9 iterations.
PairCountReport count_pairs_quadric(const PairBox& box, const PairEnumOptions& opts = {});

// Eight nested loops, for oracle comparisons.  Guarded at 1e9 iterations.
u64 brute_force_pairs_count(const PairBox& box);

struct PairTailRow {
  double lambda = 0;
  double t = 0;
  u64 count = 0;
  // count / lambda^6, the quantity expected to stay bounded.
  double normalized = 0;
};

// count_pairs_quadric over the grid of sharp boxes at C = 1.
std::vector<PairTailRow> tail_count_pairs(const std::vector<double>& lambda_grid,
                                          const std::vector<double>& t_grid);

}  // namespace bq
