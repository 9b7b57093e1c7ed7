#pragma once

#include <vector>

#include "bq/ints.hpp"
#include "bq/siegel.hpp"
#include "bq/sigma.hpp"

namespace bq {

// Main-term prediction for the number of integer I = 0 forms in a box:
// real slice density times the product of p-adic densities up to the
// cutoff, against the exact divisor-method count over both ae strata.
struct MainTermPrediction {
  CoeffBox box{};
  McEstimate sigma_inf;
  double series_value = 0;
  u32 series_cutoff = 0;
  double predicted = 0;
  i64 exact = 0;

  // |exact - predicted| / exact, recomputed on call; 0 when exact is 0.
  double relative_error() const;
};

// A box with every bound zero is reported as all zeros without counting.
// Guards of the enumeration and the series cutoff propagate.
MainTermPrediction predict_main_term(const CoeffBox& box, u32 P, u64 samples,
                                     u64 seed);

// One cell of the error-decay grid: sharp box with C = 1, lambda^4 = H.
struct ErrorDecayRow {
  double H = 0;
  double t = 0;
  double lambda = 0;
  i64 exact = 0;
  double predicted = 0;
  double abs_error = 0;
};

// |exact - predicted| tabulated over the (H, t) grid, with the
// least-squares slope of log error against log lambda fitted on the
// t = 1 rows. H = 0 rows are emitted as zeros and excluded from the
// fit, as is any row with zero error; the slope is reported as 0 when
// fewer than two rows qualify.
struct ErrorDecayTable {
  std::vector<ErrorDecayRow> rows;
  double fitted_lambda_exponent = 0;
};

ErrorDecayTable error_decay_experiment(const std::vector<double>& H_grid,
                                       const std::vector<double>& t_grid,
                                       u32 P, u64 samples, u64 seed);

}  // namespace bq
