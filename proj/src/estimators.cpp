#include "mcarfima/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mcarfima/error.hpp"

namespace mcarfima {
namespace {

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    std::ostringstream msg;
    msg << "series lengths differ (" << x.size() << " vs " << y.size() << ")";
    throw DomainError(msg.str());
  }
}

double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Orthonormal polynomial basis (degree 0..order) on the grid 0..s-1, built by
// modified Gram-Schmidt on powers of a centred, scaled time variable.
std::vector<std::vector<double>> polynomial_basis(std::size_t s, int order) {
  const double centre = 0.5 * static_cast<double>(s - 1);
  const double span = std::max(1.0, 0.5 * static_cast<double>(s));
  std::vector<std::vector<double>> basis;
  for (int p = 0; p <= order; ++p) {
    std::vector<double> v(s);
    for (std::size_t t = 0; t < s; ++t) v[t] = std::pow((static_cast<double>(t) - centre) / span, p);
    for (const auto& q : basis) {
      const double c = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
      for (std::size_t t = 0; t < s; ++t) v[t] -= c * q[t];
    }
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (auto& e : v) e /= norm;
    basis.push_back(std::move(v));
  }
  return basis;
}

void detrend_box(const double* profile, std::size_t s,
                 const std::vector<std::vector<double>>& basis, std::vector<double>& residual) {
  residual.assign(profile, profile + s);
  for (const auto& q : basis) {
    const double c = std::inner_product(residual.begin(), residual.end(), q.begin(), 0.0);
    for (std::size_t t = 0; t < s; ++t) residual[t] -= c * q[t];
  }
}

FluctuationSeries detrended_covariance(std::span<const double> x, std::span<const double> y,
                                       ScaleRange scales, int order, bool same_series,
                                       FluctuationMethod method) {
  require_same_length(x, y);
  const std::size_t n = x.size();
  if (order < 0) throw DomainError("detrending order must be non-negative");
  if (scales.step == 0) throw DomainError("scale step must be positive");
  if (scales.min < static_cast<std::size_t>(order) + 2) {
    std::ostringstream msg;
    msg << "s_min=" << scales.min << " must be at least detrend order + 2 = " << order + 2;
    throw DomainError(msg.str());
  }
  if (scales.max < scales.min) throw DomainError("s_max must not be below s_min");
  if (scales.max > n / 2) {
    std::ostringstream msg;
    msg << "s_max=" << scales.max << " exceeds T/2 = " << n / 2;
    throw DomainError(msg.str());
  }

  const auto px = profile(x);
  const auto py = same_series ? px : profile(y);

  FluctuationSeries out;
  out.method = method;
  std::vector<double> rx, ry;
  for (std::size_t s = scales.min; s <= scales.max; s += scales.step) {
    const std::size_t boxes = n / s;
    if (boxes == 0) {
      std::ostringstream msg;
      msg << "scale " << s << " skipped: no complete box";
      out.warnings.push_back(msg.str());
      continue;
    }
    const auto basis = polynomial_basis(s, order);
    double acc = 0.0;
    for (std::size_t b = 0; b < boxes; ++b) {
      detrend_box(px.data() + b * s, s, basis, rx);
      if (same_series) {
        acc += std::inner_product(rx.begin(), rx.end(), rx.begin(), 0.0);
      } else {
        detrend_box(py.data() + b * s, s, basis, ry);
        acc += std::inner_product(rx.begin(), rx.end(), ry.begin(), 0.0);
      }
    }
    out.scales.push_back(static_cast<double>(s));
    out.values.push_back(acc / static_cast<double>(boxes * s));
  }
  if (out.scales.empty()) throw InsufficientData("no scale produced a complete box");
  return out;
}

}  // namespace

std::vector<double> profile(std::span<const double> x) {
  std::vector<double> p(x.size());
  if (x.empty()) return p;
  const double m = mean(x);
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc += x[t] - m;
    p[t] = acc;
  }
  return p;
}

CcfSeries sample_ccf(std::span<const double> x, std::span<const double> y, std::size_t max_lag) {
  require_same_length(x, y);
  const std::size_t n = x.size();
  if (n <= 2 * max_lag) {
    std::ostringstream msg;
    msg << "sample CCF needs T > 2L (T=" << n << ", L=" << max_lag << ")";
    throw DomainError(msg.str());
  }
  const double mx = mean(x);
  const double my = mean(y);
  std::vector<double> dx(n), dy(n);
  for (std::size_t t = 0; t < n; ++t) {
    dx[t] = x[t] - mx;
    dy[t] = y[t] - my;
  }
  const double sx = std::sqrt(std::inner_product(dx.begin(), dx.end(), dx.begin(), 0.0) / n);
  const double sy = std::sqrt(std::inner_product(dy.begin(), dy.end(), dy.begin(), 0.0) / n);
  if (sx == 0.0 || sy == 0.0) throw DegenerateSeries("series has zero variance");

  CcfSeries ccf;
  const auto lags = static_cast<std::ptrdiff_t>(max_lag);
  ccf.max_lag = lags;
  ccf.sample_size = n;
  ccf.values.resize(2 * max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    const std::size_t m = n - k;
    const double pos = std::inner_product(dx.begin() + k, dx.end(), dy.begin(), 0.0);
    const double neg = std::inner_product(dx.begin(), dx.begin() + m, dy.begin() + k, 0.0);
    const double denom = static_cast<double>(m) * sx * sy;
    ccf.values[max_lag + k] = pos / denom;
    ccf.values[max_lag - k] = neg / denom;
  }
  return ccf;
}

FluctuationSeries dcca(std::span<const double> x, std::span<const double> y, ScaleRange scales,
                       int order) {
  return detrended_covariance(x, y, scales, order, false, FluctuationMethod::dcca);
}

FluctuationSeries dfa(std::span<const double> x, ScaleRange scales, int order) {
  return detrended_covariance(x, x, scales, order, true, FluctuationMethod::dfa);
}

FluctuationSeries hxa(std::span<const double> x, std::span<const double> y, std::size_t tau_min,
                      std::size_t tau_max) {
  require_same_length(x, y);
  const std::size_t n = x.size();
  if (tau_min < 1 || tau_min >= tau_max || tau_max > n / 10) {
    std::ostringstream msg;
    msg << "HXA needs 1 <= tau_min < tau_max <= T/10 (tau_min=" << tau_min
        << ", tau_max=" << tau_max << ", T=" << n << ")";
    throw DomainError(msg.str());
  }
  const auto px = profile(x);
  const auto py = profile(y);

  FluctuationSeries out;
  out.method = FluctuationMethod::hxa;
  for (std::size_t tau = tau_min; tau <= tau_max; ++tau) {
    double acc = 0.0;
    for (std::size_t t = 0; t + tau < n; ++t) {
      acc += (px[t + tau] - px[t]) * (py[t + tau] - py[t]);
    }
    const double k = acc / static_cast<double>(n - tau);
    if (!(k > 0.0)) {
      std::ostringstream msg;
      msg << "tau " << tau << " skipped: K_xy = " << k << " is not positive";
      out.warnings.push_back(msg.str());
      continue;
    }
    out.scales.push_back(static_cast<double>(tau));
    out.values.push_back(k);
  }
  if (out.scales.size() < 4) {
    throw InsufficientData("HXA: fewer than 4 lags with positive K_xy");
  }
  return out;
}

ScalingFit powerlaw_fit(std::span<const double> scales, std::span<const double> values) {
  if (scales.size() != values.size()) throw DomainError("scales and values differ in length");
  const std::size_t n = scales.size();
  if (n < 4) throw InsufficientData("power-law fit needs at least 4 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(scales[i] > 0.0) || !(values[i] > 0.0)) {
      throw DomainError("power-law fit needs strictly positive scales and values");
    }
  }
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(scales[i]);
    ly[i] = std::log(values[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("power-law fit needs at least two distinct scales");

  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - fit.intercept - fit.exponent * lx[i];
    rss += r * r;
  }
  fit.standard_error = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  fit.n_points = n;
  fit.min_scale = *std::min_element(scales.begin(), scales.end());
  fit.max_scale = *std::max_element(scales.begin(), scales.end());
  return fit;
}

HurstEstimate estimate_hurst(const FluctuationSeries& series) {
  HurstEstimate est;
  est.warnings = series.warnings;
  std::vector<double> s, v;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (series.values[i] > 0.0) {
      s.push_back(series.scales[i]);
      v.push_back(series.values[i]);
    } else {
      std::ostringstream msg;
      msg << "scale " << series.scales[i] << " skipped: fluctuation " << series.values[i]
          << " is not positive";
      est.warnings.push_back(msg.str());
    }
  }
  est.fit = powerlaw_fit(s, v);
  est.hurst = 0.5 * est.fit.exponent;
  return est;
}

}  // namespace mcarfima
