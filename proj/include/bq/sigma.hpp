#pragma once

#include <optional>

#include "bq/ints.hpp"
#include "bq/siegel.hpp"

namespace bq {

// Monte-Carlo estimate with the standard error of the mean.
struct McEstimate {
  double value = 0;
  double std_error = 0;
  u64 samples = 0;
};

// Estimator for the real density of the I = 0 slice.
//
// profile:   integrates out (a, e) in closed form; for fixed (b, c, d)
//            with m = 3 b d - c^2, the a-integral of 1/(12|a|) over the
//            admissible range is (1/6) max(0, ln(12 A E / |m|)). Lowest
//            variance, no support for a J cap.
// coarea:    samples (a, b, c, d), solves e = (3 b d - c^2) / (12 a) and
//            keeps the points whose e lands in the box, weight 1/(12|a|).
// thickened: samples all five coefficients and measures the slab
//            |I| <= eps at eps = 1e-3 times the box's I-scale, divided
//            by 2 eps.
enum class SigmaMode { profile, coarea, thickened };

// Real density of the quadric slice in a coefficient box:
//
//   sigma_inf(box) = lim_{eps -> 0} vol{v in box : |I(v)| <= eps} / (2 eps)
//
// optionally restricted to |J(v)| <= J_cap. The three modes agree within
// their error bars; for a sharp box the value is C^3 lambda^12 times a
// t-independent constant, and doubling every side multiplies it by 8
// (volume 2^5 against the degree-2 rescaling of the eps window).
// Raises std::invalid_argument for samples < 10^4, a box with a negative
// or non-finite bound, or a J cap in profile mode.
McEstimate singular_integral(const CoeffBox& box, u64 samples, u64 seed,
                             SigmaMode mode = SigmaMode::profile,
                             std::optional<double> J_cap = std::nullopt);

}  // namespace bq
