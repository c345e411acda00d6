#include "mcarfima/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "mcarfima/error.hpp"
#include "mcarfima/filter.hpp"

namespace mcarfima {
namespace {

constexpr std::array<int, 2> kXSlots{1, 2};
constexpr std::array<int, 2> kYSlots{3, 4};

// sum_k a_k b_{k + shift} over k = 0..last, treating missing entries as 0.
double shifted_dot(std::span<const double> a, std::span<const double> b, std::size_t shift,
                   std::size_t last) {
  if (shift >= b.size()) return 0.0;
  const std::size_t n = std::min({a.size(), b.size() - shift, last + 1});
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k + shift];
  return acc;
}

double series_variance(const ModelSpec& model, std::span<const int, 2> slots,
                       const std::array<WeightVector, kSlots>& w, std::size_t truncation) {
  double var = 0.0;
  for (int i : slots) {
    for (int j : slots) {
      const double coef =
          model.component(i).weight * model.component(j).weight * model.covariance(i, j);
      if (coef == 0.0) continue;
      var += coef * shifted_dot(w[i - 1].values(), w[j - 1].values(), 0, truncation);
    }
  }
  return var;
}

std::array<WeightVector, kSlots> slot_weights(const ModelSpec& model, std::size_t truncation) {
  return {model.component(1).weights(truncation), model.component(2).weights(truncation),
          model.component(3).weights(truncation), model.component(4).weights(truncation)};
}

// Upper bound on sum_{k > K} a_k^2 for one component.
double squared_tail_bound(const ComponentSpec& c, std::size_t truncation) {
  const double k = static_cast<double>(truncation);
  switch (c.kind) {
    case ComponentKind::white:
      return 0.0;
    case ComponentKind::ar1: {
      const double t2 = c.parameter * c.parameter;
      return std::pow(t2, k + 1.0) / (1.0 - t2);
    }
    case ComponentKind::fractional: {
      const double d = c.parameter;
      if (d == 0.0) return 0.0;
      // a_n(d) < n^{d-1} / Gamma(d) for n >= 1 (Gautschi), then integral bound.
      const double g = std::tgamma(d);
      return std::pow(k, 2.0 * d - 1.0) / ((1.0 - 2.0 * d) * g * g);
    }
  }
  return 0.0;
}

}  // namespace

ComponentSpec ComponentSpec::fractional(double d, double weight, int slot) {
  return {ComponentKind::fractional, d, weight, slot};
}

ComponentSpec ComponentSpec::ar1(double theta, double weight, int slot) {
  return {ComponentKind::ar1, theta, weight, slot};
}

ComponentSpec ComponentSpec::white(double weight, int slot) {
  return {ComponentKind::white, 0.0, weight, slot};
}

double ComponentSpec::hurst() const noexcept {
  return kind == ComponentKind::fractional ? parameter + 0.5 : 0.5;
}

WeightVector ComponentSpec::weights(std::size_t truncation) const {
  switch (kind) {
    case ComponentKind::fractional:
      return ma_weights(parameter, truncation);
    case ComponentKind::ar1:
      return ar1_weights(parameter, truncation);
    case ComponentKind::white:
      break;
  }
  return white_weights();
}

void ModelSpec::validate() const {
  std::array<int, kSlots> used{};
  auto check = [&](const ComponentSpec& c, std::span<const int, 2> allowed, const char* series) {
    if (std::find(allowed.begin(), allowed.end(), c.slot) == allowed.end()) {
      std::ostringstream msg;
      msg << "component of " << series << " uses innovation slot " << c.slot
          << "; x uses slots 1,2 and y uses slots 3,4";
      throw DomainError(msg.str());
    }
    ++used[c.slot - 1];
    if (!std::isfinite(c.weight)) throw DomainError("component weight must be finite");
    // Validates d / theta ranges.
    (void)c.weights(0);
  };
  for (const auto& c : x) check(c, kXSlots, "x");
  for (const auto& c : y) check(c, kYSlots, "y");
  for (int s = 0; s < kSlots; ++s) {
    if (used[s] != 1) {
      std::ostringstream msg;
      msg << "innovation slot " << s + 1 << " must be used by exactly one component";
      throw DomainError(msg.str());
    }
  }
  (void)mcarfima::validate(covariance);
}

bool ModelSpec::all_fractional() const noexcept {
  auto frac = [](const ComponentSpec& c) { return c.kind == ComponentKind::fractional; };
  return std::all_of(x.begin(), x.end(), frac) && std::all_of(y.begin(), y.end(), frac);
}

const ComponentSpec& ModelSpec::component(int slot) const {
  for (const auto& c : x) {
    if (c.slot == slot) return c;
  }
  for (const auto& c : y) {
    if (c.slot == slot) return c;
  }
  std::ostringstream msg;
  msg << "no component uses innovation slot " << slot;
  throw DomainError(msg.str());
}

namespace {

CovarianceSpec preset_covariance() {
  CovarianceSpec cov;
  cov.set(2, 3, 0.9);
  return cov;
}

}  // namespace

ModelSpec model1() {
  return {{ComponentSpec::fractional(0.4, 0.2, 1), ComponentSpec::fractional(0.3, 1.0, 2)},
          {ComponentSpec::fractional(0.3, 1.0, 3), ComponentSpec::fractional(0.4, 0.2, 4)},
          preset_covariance()};
}

ModelSpec model2() {
  return {{ComponentSpec::fractional(0.4, 1.0, 1), ComponentSpec::ar1(0.8, 1.0, 2)},
          {ComponentSpec::ar1(0.8, 1.0, 3), ComponentSpec::fractional(0.4, 1.0, 4)},
          preset_covariance()};
}

ModelSpec model3() {
  return {{ComponentSpec::fractional(0.4, 1.0, 1), ComponentSpec::white(1.0, 2)},
          {ComponentSpec::white(1.0, 3), ComponentSpec::fractional(0.4, 1.0, 4)},
          preset_covariance()};
}

std::optional<ModelSpec> preset(std::string_view name) {
  if (name == "model1") return model1();
  if (name == "model2") return model2();
  if (name == "model3") return model3();
  return std::nullopt;
}

ExponentReport theoretical_exponents(const ModelSpec& model, std::size_t truncation) {
  model.validate();
  ExponentReport r;
  auto series_hurst = [&](std::span<const int, 2> slots) {
    double h = 0.5;
    for (int s : slots) {
      const auto& c = model.component(s);
      if (c.weight != 0.0) h = std::max(h, c.hurst());
    }
    return h;
  };
  r.hurst_x = series_hurst(kXSlots);
  r.hurst_y = series_hurst(kYSlots);

  double best = 0.5;
  for (int i : kXSlots) {
    for (int j : kYSlots) {
      const auto& ci = model.component(i);
      const auto& cj = model.component(j);
      if (ci.weight * cj.weight * model.covariance(i, j) == 0.0) continue;
      const double h = 0.5 * (ci.hurst() + cj.hurst());
      if (h > best) {
        best = h;
        r.dominating_pair = std::pair{i, j};
      }
    }
  }
  r.hurst_xy = best;

  const auto w = slot_weights(model, truncation);
  r.sigma_x = std::sqrt(series_variance(model, kXSlots, w, truncation));
  r.sigma_y = std::sqrt(series_variance(model, kYSlots, w, truncation));
  return r;
}

Simulator::Simulator(ModelSpec model, std::size_t truncation)
    : model_((model.validate(), std::move(model))),
      truncation_(truncation),
      weights_(slot_weights(model_, truncation)) {}

BivariateSeries Simulator::simulate(std::size_t length, std::uint64_t seed) const {
  if (length == 0) throw DomainError("series length must be at least 1");
  const InnovationBlock block = sample(model_.covariance, length + truncation_, seed);

  BivariateSeries out;
  out.seed = seed;
  out.truncation = truncation_;
  out.model = model_;
  out.x.assign(length, 0.0);
  out.y.assign(length, 0.0);

  auto accumulate = [&](std::vector<double>& target, int slot) {
    const auto& c = model_.component(slot);
    if (c.weight == 0.0) return;
    const auto filtered = causal_filter(block.stream(slot), weights_[slot - 1], length);
    for (std::size_t t = 0; t < length; ++t) target[t] += c.weight * filtered[t];
  };
  for (int s : kXSlots) accumulate(out.x, s);
  for (int s : kYSlots) accumulate(out.y, s);
  return out;
}

BivariateSeries simulate(const ModelSpec& model, std::size_t length, std::uint64_t seed,
                         std::size_t truncation) {
  return Simulator(model, truncation).simulate(length, seed);
}

CcfSeries theoretical_ccf(const ModelSpec& model, std::size_t max_lag, std::size_t truncation) {
  if (truncation < max_lag + 100) {
    std::ostringstream msg;
    msg << "truncation K=" << truncation << " must be at least max_lag + 100 = " << max_lag + 100;
    throw DomainError(msg.str());
  }
  model.validate();
  const auto w = slot_weights(model, truncation + max_lag);
  const double sx = std::sqrt(series_variance(model, kXSlots, w, truncation));
  const double sy = std::sqrt(series_variance(model, kYSlots, w, truncation));

  const auto lags = static_cast<std::ptrdiff_t>(max_lag);
  CcfSeries ccf;
  ccf.max_lag = lags;
  ccf.values.assign(2 * max_lag + 1, 0.0);
  if (sx == 0.0 || sy == 0.0) return ccf;

  for (int i : kXSlots) {
    for (int j : kYSlots) {
      const double coef =
          model.component(i).weight * model.component(j).weight * model.covariance(i, j);
      if (coef == 0.0) continue;
      const auto wx = w[i - 1].values();
      const auto wy = w[j - 1].values();
      for (std::ptrdiff_t lag = -lags; lag <= lags; ++lag) {
        // Positive lags shift the x weights, negative lags the y weights.
        const double s = lag >= 0 ? shifted_dot(wy, wx, static_cast<std::size_t>(lag), truncation)
                                  : shifted_dot(wx, wy, static_cast<std::size_t>(-lag), truncation);
        ccf.values[static_cast<std::size_t>(lag + lags)] += coef * s / (sx * sy);
      }
    }
  }
  return ccf;
}

double ccf_truncation_bound(const ModelSpec& model, std::size_t truncation) {
  const auto report = theoretical_exponents(model, truncation);
  if (report.sigma_x == 0.0 || report.sigma_y == 0.0) return 0.0;
  double bound = 0.0;
  for (int i : kXSlots) {
    for (int j : kYSlots) {
      const auto& ci = model.component(i);
      const auto& cj = model.component(j);
      const double coef = std::abs(ci.weight * cj.weight * model.covariance(i, j));
      if (coef == 0.0) continue;
      bound += coef * std::sqrt(squared_tail_bound(ci, truncation) *
                                squared_tail_bound(cj, truncation));
    }
  }
  return bound / (report.sigma_x * report.sigma_y);
}

std::complex<double> cross_spectrum(const ModelSpec& model, double lambda) {
  if (!(lambda > 0.0 && lambda <= std::numbers::pi)) {
    std::ostringstream msg;
    msg << "frequency lambda=" << lambda << " outside (0, pi]";
    throw DomainError(msg.str());
  }
  model.validate();
  if (!model.all_fractional()) {
    throw DomainError("closed-form cross spectrum requires four fractional components");
  }
  using namespace std::complex_literals;
  const std::complex<double> forward = 1.0 - std::exp(1i * lambda);
  const std::complex<double> backward = 1.0 - std::exp(-1i * lambda);
  std::complex<double> f = 0.0;
  for (int i : kXSlots) {
    for (int j : kYSlots) {
      const auto& ci = model.component(i);
      const auto& cj = model.component(j);
      const double coef = ci.weight * cj.weight * model.covariance(i, j);
      if (coef == 0.0) continue;
      f += coef * std::pow(forward, -ci.parameter) * std::pow(backward, -cj.parameter);
    }
  }
  return f / (2.0 * std::numbers::pi);
}

}  // namespace mcarfima
