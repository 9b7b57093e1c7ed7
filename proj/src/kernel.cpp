#include "bq/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "bq/factor.hpp"

namespace bq {

DeltaKernel::DeltaKernel() {
  // Trapezoid rule on [-1, 1]; the integrand and all its derivatives
  // vanish at the endpoints, so 4096 panels reach full double accuracy.
  const int panels = 4096;
  const double step = 2.0 / panels;
  double acc = 0;
  for (int i = 1; i < panels; ++i) acc += bump(-1.0 + step * i);
  bump_integral_ = acc * step;
}

double DeltaKernel::bump(double x) {
  const double t = 1.0 - x * x;
  if (t <= 0) return 0;
  return std::exp(-1.0 / t);
}

double DeltaKernel::omega(double x) const {
  return 4.0 / bump_integral_ * bump(4.0 * x - 3.0);
}

double kernel_h(double x, double y, const DeltaKernel& kernel) {
  if (!(x > 0)) throw std::invalid_argument("kernel_h: x must be positive");
  const double ay = std::fabs(y);
  double sum = 0;
  // omega(r x) window: r x in (1/2, 1). The extra index on each side
  // covers rounding of the endpoints; omega vanishes there anyway.
  i64 lo = std::max<i64>(1, static_cast<i64>(std::floor(0.5 / x)));
  i64 hi = static_cast<i64>(std::ceil(1.0 / x)) + 1;
  for (i64 r = lo; r <= hi; ++r) {
    const double rx = static_cast<double>(r) * x;
    sum += kernel.omega(rx) / rx;
  }
  if (ay > 0) {
    // omega(|y| / (r x)) window: r x in (|y|, 2 |y|).
    i64 blo = std::max<i64>(1, static_cast<i64>(std::floor(ay / x)));
    i64 bhi = static_cast<i64>(std::ceil(2.0 * ay / x)) + 1;
    for (i64 r = blo; r <= bhi; ++r) {
      const double rx = static_cast<double>(r) * x;
      sum -= kernel.omega(ay / rx) / rx;
    }
  }
  return sum;
}

double delta_check(i64 n, double Q, const DeltaKernel& kernel) {
  if (!(Q >= 2.0)) throw std::invalid_argument("delta_check: Q must be at least 2");
  const i64 q_max = static_cast<i64>(std::floor(4.0 * Q));
  const double y = static_cast<double>(n) / (Q * Q);
  double sum = 0;
  for (i64 q = 1; q <= q_max; ++q) {
    const double h = kernel_h(static_cast<double>(q) / Q, y, kernel);
    if (h == 0) continue;
    sum += static_cast<double>(ramanujan_sum(static_cast<u64>(q), n)) * h;
  }
  return sum / (Q * Q);
}

}  // namespace bq
