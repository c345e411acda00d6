#include "mcarfima/ccf_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "mcarfima/error.hpp"
#include "mcarfima/estimators.hpp"

namespace mcarfima {

LagScatter lag_scatter(std::span<const double> x, std::span<const double> y, std::ptrdiff_t lag,
                       std::size_t max_points) {
  if (x.size() != y.size()) throw DomainError("series lengths differ");
  const std::size_t n = x.size();
  const auto shift = static_cast<std::size_t>(std::abs(lag));
  if (shift >= n) {
    std::ostringstream msg;
    msg << "|lag|=" << shift << " must be below T=" << n;
    throw DomainError(msg.str());
  }
  const std::size_t m = n - shift;
  // Response x_{t+lag}, regressor y_t.
  const double* resp = x.data() + (lag >= 0 ? shift : 0);
  const double* reg = y.data() + (lag >= 0 ? 0 : shift);

  LagScatter out;
  out.lag = lag;
  out.n_pairs = m;

  double mr = 0.0, mg = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    mr += resp[t];
    mg += reg[t];
  }
  mr /= static_cast<double>(m);
  mg /= static_cast<double>(m);
  double sgg = 0.0, srg = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    sgg += (reg[t] - mg) * (reg[t] - mg);
    srg += (reg[t] - mg) * (resp[t] - mr);
  }
  if (sgg == 0.0) throw DegenerateSeries("regressor segment has zero variance");
  out.slope = srg / sgg;
  out.intercept = mr - out.slope * mg;
  if (m > 2) {
    double rss = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double r = resp[t] - out.intercept - out.slope * reg[t];
      rss += r * r;
    }
    out.slope_stderr = std::sqrt(rss / static_cast<double>(m - 2) / sgg);
  }

  const std::size_t stride = max_points == 0 ? m : (m + max_points - 1) / max_points;
  out.pairs.reserve(m / std::max<std::size_t>(stride, 1) + 1);
  for (std::size_t t = 0; t < m && max_points > 0; t += stride) {
    out.pairs.emplace_back(resp[t], reg[t]);
  }
  return out;
}

LagScatter lag_scatter(const BivariateSeries& series, std::ptrdiff_t lag, std::size_t max_points) {
  return lag_scatter(series.x, series.y, lag, max_points);
}

CcfComparison ccf_comparison(const BivariateSeries& series, std::size_t max_lag,
                             std::size_t truncation) {
  const CcfSeries sample = sample_ccf(series.x, series.y, max_lag);
  const CcfSeries theory = theoretical_ccf(series.model, max_lag, truncation);

  CcfComparison out;
  out.threshold = 3.0 / std::sqrt(static_cast<double>(series.size())) +
                  ccf_truncation_bound(series.model, truncation);
  const auto lags = static_cast<std::ptrdiff_t>(max_lag);
  for (std::ptrdiff_t k = -lags; k <= lags; ++k) {
    CcfComparisonRow row;
    row.lag = k;
    row.sample = sample.at(k);
    row.theory = theory.at(k);
    row.abs_diff = std::abs(row.sample - row.theory);
    row.flagged = row.abs_diff > out.threshold;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace mcarfima
