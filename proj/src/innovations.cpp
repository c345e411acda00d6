#include "mcarfima/innovations.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mcarfima/error.hpp"

namespace mcarfima {
namespace {

std::size_t pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > kSlots || i == j) {
    std::ostringstream msg;
    msg << "invalid covariance pair (" << i << ", " << j << ")";
    throw DomainError(msg.str());
  }
  // (1,2) (1,3) (1,4) (2,3) (2,4) (3,4)
  static constexpr int offset[] = {0, 3, 5};
  return static_cast<std::size_t>(offset[i - 1] + (j - i - 1));
}

}  // namespace

double CovarianceSpec::operator()(int i, int j) const {
  if (i == j) {
    if (i < 1 || i > kSlots) throw DomainError("slot index out of range");
    return variances[i - 1];
  }
  return covariances[pair_index(i, j)];
}

void CovarianceSpec::set(int i, int j, double value) {
  if (i == j) {
    if (i < 1 || i > kSlots) throw DomainError("slot index out of range");
    variances[i - 1] = value;
    return;
  }
  covariances[pair_index(i, j)] = value;
}

Matrix4 CovarianceSpec::matrix() const {
  Matrix4 m{};
  for (int i = 1; i <= kSlots; ++i) {
    for (int j = 1; j <= kSlots; ++j) m[i - 1][j - 1] = (*this)(i, j);
  }
  return m;
}

Matrix4 validate(const CovarianceSpec& spec) {
  for (int i = 1; i <= kSlots; ++i) {
    const double v = spec(i, i);
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream msg;
      msg << "innovation variance of slot " << i << " must be positive and finite, got " << v;
      throw DomainError(msg.str());
    }
  }
  for (int i = 1; i <= kSlots; ++i) {
    for (int j = i + 1; j <= kSlots; ++j) {
      const double c = spec(i, j);
      if (!std::isfinite(c)) throw DomainError("innovation covariance must be finite");
      if (std::abs(c) > std::sqrt(spec(i, i) * spec(j, j)) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "|sigma_" << i << j << "| = " << std::abs(c)
            << " exceeds the product of standard deviations";
        throw NotPositiveSemiDefinite(msg.str());
      }
    }
  }

  const Matrix4 a = spec.matrix();
  double scale = 0.0;
  for (int i = 0; i < kSlots; ++i) scale = std::max(scale, a[i][i]);
  const double tol = 1e-12 * scale;

  Matrix4 l{};
  for (int j = 0; j < kSlots; ++j) {
    double pivot = a[j][j];
    for (int k = 0; k < j; ++k) pivot -= l[j][k] * l[j][k];
    if (pivot < -tol) {
      throw NotPositiveSemiDefinite("innovation covariance matrix is not positive semi-definite");
    }
    if (pivot <= tol) {
      // Degenerate direction: the remaining column must vanish as well.
      for (int i = j + 1; i < kSlots; ++i) {
        double r = a[i][j];
        for (int k = 0; k < j; ++k) r -= l[i][k] * l[j][k];
        if (std::abs(r) > std::sqrt(tol * scale)) {
          throw NotPositiveSemiDefinite(
              "innovation covariance matrix is not positive semi-definite");
        }
      }
      continue;
    }
    l[j][j] = std::sqrt(pivot);
    for (int i = j + 1; i < kSlots; ++i) {
      double r = a[i][j];
      for (int k = 0; k < j; ++k) r -= l[i][k] * l[j][k];
      l[i][j] = r / l[j][j];
    }
  }
  return l;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * kInv53;
  const double u2 = static_cast<double>(engine_() >> 11) * kInv53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phase = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phase);
  has_spare_ = true;
  return r * std::cos(phase);
}

InnovationBlock sample(const CovarianceSpec& spec, std::size_t length, std::uint64_t seed) {
  const Matrix4 l = validate(spec);
  InnovationBlock block;
  block.seed = seed;
  block.spec = spec;
  for (auto& s : block.streams) s.resize(length);

  GaussianSource source(seed);
  std::array<double, kSlots> z{};
  for (std::size_t t = 0; t < length; ++t) {
    for (auto& v : z) v = source.next();
    for (int i = 0; i < kSlots; ++i) {
      double e = 0.0;
      for (int k = 0; k <= i; ++k) e += l[i][k] * z[k];
      block.streams[i][t] = e;
    }
  }
  return block;
}

}  // namespace mcarfima
