#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mcarfima/ccf_series.hpp"
#include "mcarfima/innovations.hpp"
#include "mcarfima/weights.hpp"

namespace mcarfima {

/// One additive term of a series: weight * (filter applied to one innovation slot).
struct ComponentSpec {
  ComponentKind kind = ComponentKind::white;
  /// d for fractional components, theta for AR(1), unused for white noise.
  double parameter = 0.0;
  double weight = 0.0;
  int slot = 1;

  static ComponentSpec fractional(double d, double weight, int slot);
  static ComponentSpec ar1(double theta, double weight, int slot);
  static ComponentSpec white(double weight, int slot);

  /// d + 0.5 for fractional terms, 0.5 for short-memory terms.
  double hurst() const noexcept;
  WeightVector weights(std::size_t truncation) const;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

/// x_t = x[0] + x[1] (slots 1, 2); y_t = y[0] + y[1] (slots 3, 4).
struct ModelSpec {
  std::array<ComponentSpec, 2> x;
  std::array<ComponentSpec, 2> y;
  CovarianceSpec covariance;

  /// Throws DomainError / NotPositiveSemiDefinite if the model is inadmissible.
  void validate() const;
  bool all_fractional() const noexcept;
  /// Component driven by a 1-based slot.
  const ComponentSpec& component(int slot) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Two fractional terms per series, only eps2/eps3 correlated (H_xy = 0.8).
ModelSpec model1();
/// Fractional + AR(1) terms, AR(1) innovations correlated (H_xy = 0.5).
ModelSpec model2();
/// Fractional + white-noise terms, white innovations correlated (H_xy = 0.5).
ModelSpec model3();
/// model1/model2/model3 by name.
std::optional<ModelSpec> preset(std::string_view name);

struct ExponentReport {
  double hurst_x = 0.5;
  double hurst_y = 0.5;
  double hurst_xy = 0.5;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  /// Slots (i in x, j in y) of the cross pair that sets H_xy; empty when H_xy = 0.5.
  std::optional<std::pair<int, int>> dominating_pair;
};

/// Asymptotic exponents plus process standard deviations from weights truncated at M.
ExponentReport theoretical_exponents(const ModelSpec& model, std::size_t truncation);

struct BivariateSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::uint64_t seed = 0;
  std::size_t truncation = 0;
  ModelSpec model;

  std::size_t size() const noexcept { return x.size(); }
};

/// Simulator with weight vectors computed once for a fixed truncation.
///
/// simulate() is const and may be called concurrently from several threads.
class Simulator {
 public:
  Simulator(ModelSpec model, std::size_t truncation);

  BivariateSeries simulate(std::size_t length, std::uint64_t seed) const;

  const ModelSpec& model() const noexcept { return model_; }
  std::size_t truncation() const noexcept { return truncation_; }

 private:
  ModelSpec model_;
  std::size_t truncation_;
  std::array<WeightVector, kSlots> weights_;
};

/// One realization of length T: innovations of length T + M, each slot
/// filtered by its component weights, burn-in of M values discarded.
BivariateSeries simulate(const ModelSpec& model, std::size_t length, std::uint64_t seed,
                         std::size_t truncation);

/// rho_xy(i) for i = -L..L from weight sums truncated at K (sigma_x, sigma_y
/// use the same truncation). Throws DomainError unless K >= L + 100.
CcfSeries theoretical_ccf(const ModelSpec& model, std::size_t max_lag, std::size_t truncation);

/// Upper bound on |rho(i) - rho_truncated(i)| contributed by the neglected
/// tail k > K of each cross sum (Cauchy-Schwarz on the squared-weight tails).
double ccf_truncation_bound(const ModelSpec& model, std::size_t truncation);

/// Closed-form cross-power spectrum f_xy(lambda) for four fractional components:
///   (1/2pi) sum_{i in x, j in y} w_i w_j s_ij (1 - e^{i lambda})^{-d_i} (1 - e^{-i lambda})^{-d_j}.
/// Throws DomainError for lambda outside (0, pi] or non-fractional components.
std::complex<double> cross_spectrum(const ModelSpec& model, double lambda);

}  // namespace mcarfima
