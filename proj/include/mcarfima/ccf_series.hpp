#pragma once

#include <cstddef>
#include <vector>

namespace mcarfima {

/// Cross-correlation values rho(k) for lags k = -L..L.
///
/// rho(k) pairs x at time t + k with y at time t. `sample_size` is the T the
/// values were estimated from, or 0 for theoretical values.
struct CcfSeries {
  std::ptrdiff_t max_lag = 0;
  std::vector<double> values;
  std::size_t sample_size = 0;

  double at(std::ptrdiff_t lag) const { return values.at(static_cast<std::size_t>(lag + max_lag)); }
};

}  // namespace mcarfima
