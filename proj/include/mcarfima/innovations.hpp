#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mcarfima {

inline constexpr int kSlots = 4;

using Matrix4 = std::array<std::array<double, kSlots>, kSlots>;

/// Contemporaneous covariance of the four innovation streams.
///
/// Slots are numbered 1..4 as in the model equations: x draws on slots 1 and
/// 2, y on slots 3 and 4. Cross-covariances at nonzero lags are zero by
/// construction.
struct CovarianceSpec {
  std::array<double, kSlots> variances{1.0, 1.0, 1.0, 1.0};
  /// Off-diagonal entries in the order (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
  std::array<double, 6> covariances{};

  /// Entry (i, j) of the symmetric matrix, 1-based slots.
  double operator()(int i, int j) const;
  void set(int i, int j, double value);
  Matrix4 matrix() const;

  friend bool operator==(const CovarianceSpec&, const CovarianceSpec&) = default;
};

/// Lower-triangular L with L L^T equal to the covariance matrix.
///
/// Semi-definite matrices (e.g. perfectly correlated slots) are accepted and
/// produce a zero column. Throws DomainError for non-finite or non-positive
/// variances and NotPositiveSemiDefinite for inadmissible covariances.
Matrix4 validate(const CovarianceSpec& spec);

/// Standard normal deviates from a 64-bit Mersenne Twister.
///
/// Uniforms use the top 53 bits of each mt19937_64 output; pairs of uniforms
/// (u1 in (0,1], u2 in [0,1)) map to two normals by the Box-Muller transform
///   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2).
/// The sequence is fully determined by the seed.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct InnovationBlock {
  std::array<std::vector<double>, kSlots> streams;
  std::uint64_t seed = 0;
  CovarianceSpec spec;

  std::size_t length() const noexcept { return streams[0].size(); }
  /// Stream of a 1-based slot.
  std::span<const double> stream(int slot) const { return streams.at(slot - 1); }
};

/// Draws L i.i.d. Gaussian 4-vectors with covariance `spec`.
///
/// At each t four standard normals are drawn in slot order and mapped
/// through the Cholesky factor. Same (spec, length, seed) gives a
/// bit-identical block.
InnovationBlock sample(const CovarianceSpec& spec, std::size_t length, std::uint64_t seed);

}  // namespace mcarfima
