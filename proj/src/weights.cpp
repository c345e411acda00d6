#include "mcarfima/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "mcarfima/error.hpp"

namespace mcarfima {

WeightVector::WeightVector(ComponentKind kind, double parameter, std::vector<double> weights)
    : kind_(kind), parameter_(parameter), weights_(std::move(weights)) {
  if (weights_.empty() || weights_.front() != 1.0) {
    throw DomainError("weight vector must start with a_0 = 1");
  }
}

std::size_t default_truncation(std::size_t length) noexcept {
  return std::max<std::size_t>(length, 10000);
}

WeightVector ma_weights(double d, std::size_t truncation) {
  if (!std::isfinite(d) || d < 0.0 || d >= 0.5) {
    std::ostringstream msg;
    msg << "fractional parameter d=" << d << " outside the stationary range [0, 0.5)";
    throw DomainError(msg.str());
  }
  std::vector<double> w(truncation + 1, 0.0);
  w[0] = 1.0;
  if (d == 0.0) return WeightVector(ComponentKind::fractional, d, std::move(w));
  for (std::size_t n = 1; n <= truncation; ++n) {
    const double k = static_cast<double>(n);
    w[n] = w[n - 1] * (k - 1.0 + d) / k;
  }
  return WeightVector(ComponentKind::fractional, d, std::move(w));
}

WeightVector ar1_weights(double theta, std::size_t truncation) {
  if (!std::isfinite(theta) || std::abs(theta) >= 1.0) {
    std::ostringstream msg;
    msg << "AR(1) coefficient theta=" << theta << " is not stationary (|theta| < 1 required)";
    throw DomainError(msg.str());
  }
  std::vector<double> w(truncation + 1, 0.0);
  w[0] = 1.0;
  for (std::size_t n = 1; n <= truncation; ++n) w[n] = w[n - 1] * theta;
  return WeightVector(ComponentKind::ar1, theta, std::move(w));
}

WeightVector white_weights() { return WeightVector(ComponentKind::white, 0.0, {1.0}); }

}  // namespace mcarfima
