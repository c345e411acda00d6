#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mcarfima {

enum class ComponentKind { fractional, ar1, white };

/// Truncated MA(infinity) coefficients a_0..a_M of one model component.
///
/// Immutable after construction; a_0 is always 1.
class WeightVector {
 public:
  WeightVector(ComponentKind kind, double parameter, std::vector<double> weights);

  ComponentKind kind() const noexcept { return kind_; }
  /// Memory parameter d (fractional) or AR coefficient theta (ar1); 0 for white.
  double parameter() const noexcept { return parameter_; }
  /// Truncation horizon M, i.e. the index of the last stored weight.
  std::size_t truncation() const noexcept { return weights_.size() - 1; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t n) const noexcept { return weights_[n]; }
  std::span<const double> values() const noexcept { return weights_; }

 private:
  ComponentKind kind_;
  double parameter_;
  std::vector<double> weights_;
};

/// Default truncation horizon for a series of length T: max(T, 10000).
std::size_t default_truncation(std::size_t length) noexcept;

/// Fractional-integration weights a_n(d) = Gamma(n+d) / (Gamma(n+1) Gamma(d)).
///
/// Evaluated through the ratio a_n = a_{n-1} (n - 1 + d) / n, which never
/// touches the Gamma function. d = 0 yields the identity filter [1, 0, ...].
/// Throws DomainError unless 0 <= d < 0.5.
WeightVector ma_weights(double d, std::size_t truncation);

/// AR(1) weights theta^n for n = 0..M. Throws DomainError unless |theta| < 1.
WeightVector ar1_weights(double theta, std::size_t truncation);

/// The single weight [1] of a contemporaneous white-noise term.
WeightVector white_weights();

}  // namespace mcarfima
