#include "bq/predict.hpp"

#include <algorithm>
#include <cmath>

#include "bq/density.hpp"
#include "bq/expsum.hpp"

namespace bq {

namespace {

bool zero_box(const CoeffBox& box) {
  return std::all_of(box.bound.begin(), box.bound.end(),
                     [](double b) { return b == 0; });
}

}  // namespace

double MainTermPrediction::relative_error() const {
  if (exact == 0) return 0;
  return std::fabs(static_cast<double>(exact) - predicted) /
         static_cast<double>(exact);
}

MainTermPrediction predict_main_term(const CoeffBox& box, u32 P, u64 samples,
                                     u64 seed) {
  MainTermPrediction out;
  out.box = box;
  out.series_cutoff = P;
  if (zero_box(box)) return out;
  out.sigma_inf = singular_integral(box, samples, seed);
  out.series_value = singular_series(QuadricShape::quartic(), P).value;
  out.predicted = out.sigma_inf.value * out.series_value;
  out.exact = count_I0_box(box).total;
  return out;
}

ErrorDecayTable error_decay_experiment(const std::vector<double>& H_grid,
                                       const std::vector<double>& t_grid,
                                       u32 P, u64 samples, u64 seed) {
  ErrorDecayTable table;
  const double series = singular_series(QuadricShape::quartic(), P).value;
  u64 cell = 0;
  for (double H : H_grid) {
    for (double t : t_grid) {
      ErrorDecayRow row;
      row.H = H;
      row.t = t;
      ++cell;
      if (H > 0) {
        row.lambda = std::pow(H, 0.25);
        const CoeffBox box = sharp_box(H, t, 1.0);
        row.exact = count_I0_box(box).total;
        row.predicted =
            singular_integral(box, samples, seed + 1000 * cell).value * series;
        row.abs_error =
            std::fabs(static_cast<double>(row.exact) - row.predicted);
      }
      table.rows.push_back(row);
    }
  }

  // Slope of log |error| against log lambda on the t = 1 rows.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : table.rows) {
    if (row.t != 1.0 || row.H <= 0 || row.abs_error <= 0) continue;
    const double x = std::log(row.lambda);
    const double y = std::log(row.abs_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2 && n * sxx - sx * sx > 0)
    table.fitted_lambda_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return table;
}

}  // namespace bq
