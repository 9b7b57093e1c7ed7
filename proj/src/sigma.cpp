#include "bq/sigma.hpp"

#include <cmath>
#include <stdexcept>

#include "bq/rng.hpp"

namespace bq {

namespace {

double inv_I(double a, double b, double c, double d, double e) {
  return 12 * a * e - 3 * b * d + c * c;
}

double inv_J(double a, double b, double c, double d, double e) {
  return 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e -
         2 * c * c * c;
}

// Streaming mean and standard error over a fixed sample count.
struct Accumulator {
  double sum = 0;
  double sum_sq = 0;
  u64 n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }

  McEstimate estimate(double volume) const {
    const double mean = sum / static_cast<double>(n);
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
    McEstimate out;
    out.value = volume * mean;
    out.std_error = volume * std::sqrt(var / static_cast<double>(n));
    out.samples = n;
    return out;
  }
};

}  // namespace

McEstimate singular_integral(const CoeffBox& box, u64 samples, u64 seed,
                             SigmaMode mode, std::optional<double> J_cap) {
  if (samples < 10000)
    throw std::invalid_argument("singular_integral: at least 10^4 samples");
  for (double b : box.bound)
    if (!(b >= 0) || !std::isfinite(b))
      throw std::invalid_argument("singular_integral: degenerate box");
  if (J_cap && mode == SigmaMode::profile)
    throw std::invalid_argument(
        "singular_integral: profile mode cannot apply a J cap");

  const double A = box.bound[0], B = box.bound[1], C = box.bound[2],
               D = box.bound[3], E = box.bound[4];
  CounterRng rng(seed, 17);
  Accumulator acc;

  switch (mode) {
    case SigmaMode::profile: {
      const double volume = 8 * B * C * D;
      for (u64 i = 0; i < samples; ++i) {
        const double b = rng.uniform_real(3 * i, -B, B);
        const double c = rng.uniform_real(3 * i + 1, -C, C);
        const double d = rng.uniform_real(3 * i + 2, -D, D);
        const double m = std::fabs(3 * b * d - c * c);
        double f = 0;
        if (m > 0 && 12 * A * E > m) f = std::log(12 * A * E / m) / 6;
        acc.add(f);
      }
      return acc.estimate(volume);
    }
    case SigmaMode::coarea: {
      const double volume = 16 * A * B * C * D;
      for (u64 i = 0; i < samples; ++i) {
        const double a = rng.uniform_real(4 * i, -A, A);
        const double b = rng.uniform_real(4 * i + 1, -B, B);
        const double c = rng.uniform_real(4 * i + 2, -C, C);
        const double d = rng.uniform_real(4 * i + 3, -D, D);
        double f = 0;
        if (a != 0) {
          const double e = (3 * b * d - c * c) / (12 * a);
          if (std::fabs(e) <= E &&
              (!J_cap || std::fabs(inv_J(a, b, c, d, e)) <= *J_cap))
            f = 1 / (12 * std::fabs(a));
        }
        acc.add(f);
      }
      return acc.estimate(volume);
    }
    case SigmaMode::thickened: {
      const double volume = 32 * A * B * C * D * E;
      const double scale = 12 * A * E + 3 * B * D + C * C;
      if (scale <= 0) return {0, 0, samples};
      const double eps = 1e-3 * scale;
      for (u64 i = 0; i < samples; ++i) {
        const double a = rng.uniform_real(5 * i, -A, A);
        const double b = rng.uniform_real(5 * i + 1, -B, B);
        const double c = rng.uniform_real(5 * i + 2, -C, C);
        const double d = rng.uniform_real(5 * i + 3, -D, D);
        const double e = rng.uniform_real(5 * i + 4, -E, E);
        double f = 0;
        if (std::fabs(inv_I(a, b, c, d, e)) <= eps &&
            (!J_cap || std::fabs(inv_J(a, b, c, d, e)) <= *J_cap))
          f = 1 / (2 * eps);
        acc.add(f);
      }
      return acc.estimate(volume);
    }
  }
  throw std::logic_error("singular_integral: unknown mode");
}

}  // namespace bq
