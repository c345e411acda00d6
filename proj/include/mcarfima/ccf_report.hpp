#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mcarfima/models.hpp"

namespace mcarfima {

inline constexpr std::size_t kMaxScatterPoints = 5000;

/// Aligned pairs (x_{t+lag}, y_t) and the least-squares line x = intercept + slope * y.
///
/// The fit always uses all T - |lag| pairs; `pairs` holds at most
/// `max_points` of them, taken with a fixed stride.
struct LagScatter {
  std::ptrdiff_t lag = 0;
  std::vector<std::pair<double, double>> pairs;
  std::size_t n_pairs = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

LagScatter lag_scatter(std::span<const double> x, std::span<const double> y, std::ptrdiff_t lag,
                       std::size_t max_points = kMaxScatterPoints);
LagScatter lag_scatter(const BivariateSeries& series, std::ptrdiff_t lag,
                       std::size_t max_points = kMaxScatterPoints);

struct CcfComparisonRow {
  std::ptrdiff_t lag = 0;
  double sample = 0.0;
  double theory = 0.0;
  double abs_diff = 0.0;
  bool flagged = false;
};

struct CcfComparison {
  std::vector<CcfComparisonRow> rows;
  /// 3 / sqrt(T) plus the truncation bound of the theoretical values.
  double threshold = 0.0;
};

/// Joins the sample CCF of a realization with the model's theoretical CCF.
CcfComparison ccf_comparison(const BivariateSeries& series, std::size_t max_lag,
                             std::size_t truncation);

}  // namespace mcarfima
