#pragma once

#include "bq/ints.hpp"

namespace bq {

// Smoothed delta-symbol kernel
//
//   h(x, y) = sum_{r >= 1} ( omega(r x) - omega(|y| / (r x)) ) / (r x)
//
// built from the bump w0(x) = exp(-1/(1 - x^2)) on (-1, 1). The weight
// omega(x) = (4 / int w0) * w0(4 x - 3) is supported in (1/2, 1), so for
// any x > 0 only finitely many r contribute: r x must land in (1/2, 1) or
// in (|y|, 2|y|). In particular h(x, y) = 0 once x > 1 and x > 2|y|, and
// omega(0) = 0 keeps the series finite at y = 0.
class DeltaKernel {
 public:
  // Computes and caches the normalization integral int_{-1}^{1} w0. All
  // derivatives of w0 vanish at the endpoints, so the trapezoid rule
  // converges faster than any power of the panel width.
  DeltaKernel();

  // Unnormalized bump, zero outside (-1, 1).
  static double bump(double x);

  // Normalized shifted bump, supported in (1/2, 1), unit integral.
  double omega(double x) const;

  // Cached value of int_{-1}^{1} w0.
  double bump_integral() const { return bump_integral_; }

 private:
  double bump_integral_ = 0;
};

// Evaluates h(x, y) as the finite sum over the two support windows.
// Raises std::invalid_argument when x <= 0.
double kernel_h(double x, double y, const DeltaKernel& kernel);

// One-variable delta-symbol check at scale Q:
//
//   delta_check(n, Q) = Q^{-2} sum_{q <= 4Q} c_q(n) h(q / Q, n / Q^2)
//
// where c_q(n) is the Ramanujan sum over primitive residues. The value
// approximates [n = 0] with an error that shrinks as Q grows. For
// 0 < |n| <= Q / 2 the sum telescopes to sum_{m | n} omega(m / Q) / Q,
// which vanishes term by term since every divisor of n sits below the
// support of omega; the computed value is then pure rounding noise.
// Raises std::invalid_argument when Q < 2.
double delta_check(i64 n, double Q, const DeltaKernel& kernel);

}  // namespace bq
