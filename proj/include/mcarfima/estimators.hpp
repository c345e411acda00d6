#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mcarfima/ccf_series.hpp"

namespace mcarfima {

enum class FluctuationMethod { dfa, dcca, hxa };

/// Fluctuation function F^2(s) (DFA/DCCA) or K_xy(tau) (HXA) against scale.
struct FluctuationSeries {
  FluctuationMethod method = FluctuationMethod::dcca;
  std::vector<double> scales;
  std::vector<double> values;
  std::vector<std::string> warnings;
};

/// Log-log least-squares fit log(value) = intercept + exponent * log(scale).
struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double standard_error = 0.0;
  std::size_t n_points = 0;
  double min_scale = 0.0;
  double max_scale = 0.0;
};

/// Box sizes min, min + step, ..., <= max.
struct ScaleRange {
  std::size_t min = 10;
  std::size_t max = 2000;
  std::size_t step = 10;

  friend bool operator==(const ScaleRange&, const ScaleRange&) = default;
};

/// Cumulative sum of the demeaned series.
std::vector<double> profile(std::span<const double> x);

/// Sample cross-correlation for lags -L..L.
///
/// rho(k) = sum_t (x_{t+k} - mean x)(y_t - mean y) / ((T - k) s_x s_y) for k >= 0;
/// for k < 0 the shift moves to y. s_x, s_y are global standard deviations
/// with divisor T. Throws DegenerateSeries on zero variance.
CcfSeries sample_ccf(std::span<const double> x, std::span<const double> y, std::size_t max_lag);

/// Detrended cross-correlation analysis.
///
/// Profiles are cut into floor(T/s) non-overlapping boxes from the start;
/// within each box a polynomial of `order` is removed from both profiles and
/// F^2(s) is the mean product of the residuals. Values may be negative.
FluctuationSeries dcca(std::span<const double> x, std::span<const double> y, ScaleRange scales,
                       int order = 1);

/// Detrended fluctuation analysis: dcca(x, x).
FluctuationSeries dfa(std::span<const double> x, ScaleRange scales, int order = 1);

/// Height cross-correlation analysis at q = 2:
///   K_xy(tau) = 1/(T - tau) sum_t (X_{t+tau} - X_t)(Y_{t+tau} - Y_t)
/// on the profiles. Non-positive K are dropped with a warning.
FluctuationSeries hxa(std::span<const double> x, std::span<const double> y, std::size_t tau_min,
                      std::size_t tau_max);

/// OLS of log(values) on log(scales). Needs >= 4 points, all values > 0.
ScalingFit powerlaw_fit(std::span<const double> scales, std::span<const double> values);

struct HurstEstimate {
  double hurst = 0.0;
  ScalingFit fit;
  std::vector<std::string> warnings;
};

/// Fits the positive part of a fluctuation series and maps the slope to H.
///
/// F^2(s) ~ s^{2H} and K(tau) ~ tau^{2H}, so H = slope / 2 for every method.
/// Non-positive values are skipped with a warning, never rectified.
HurstEstimate estimate_hurst(const FluctuationSeries& series);

}  // namespace mcarfima
