#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mcarfima/ccf_report.hpp"
#include "mcarfima/error.hpp"
#include "mcarfima/estimators.hpp"

using namespace mcarfima;

namespace {

struct Moments {
  double mx = 0, my = 0, vx = 0, vy = 0, cxy = 0;
};

Moments segment_moments(const std::vector<double>& x, const std::vector<double>& y,
                        std::ptrdiff_t lag) {
  const std::size_t k = static_cast<std::size_t>(std::abs(lag));
  const std::size_t n = x.size() - k;
  const std::size_t ox = lag >= 0 ? k : 0, oy = lag >= 0 ? 0 : k;
  Moments m;
  for (std::size_t t = 0; t < n; ++t) {
    m.mx += x[t + ox];
    m.my += y[t + oy];
  }
  m.mx /= n;
  m.my /= n;
  for (std::size_t t = 0; t < n; ++t) {
    const double dx = x[t + ox] - m.mx, dy = y[t + oy] - m.my;
    m.vx += dx * dx;
    m.vy += dy * dy;
    m.cxy += dx * dy;
  }
  m.vx /= n;
  m.vy /= n;
  m.cxy /= n;
  return m;
}

}  // namespace

TEST(LagScatter, IdentityLine) {
  const auto s = simulate(model1(), 2000, 1, 2000);
  const auto ls = lag_scatter(s.x, s.x, 0);
  EXPECT_NEAR(ls.slope, 1.0, 1e-12);
  EXPECT_NEAR(ls.intercept, 0.0, 1e-10);
  EXPECT_EQ(ls.n_pairs, 2000u);
}

TEST(LagScatter, AlignmentAndOls) {
  const std::vector<double> x{1, 4, 2, 8, 5, 7}, y{3, 1, 4, 1, 5, 9};
  const auto ls = lag_scatter(x, y, 2);
  ASSERT_EQ(ls.n_pairs, 4u);
  ASSERT_EQ(ls.pairs.size(), 4u);
  EXPECT_EQ(ls.pairs[0], (std::pair{2.0, 3.0}));
  EXPECT_EQ(ls.pairs[3], (std::pair{7.0, 1.0}));
  const auto m = segment_moments(x, y, 2);
  EXPECT_NEAR(ls.slope, m.cxy / m.vy, 1e-12);
  EXPECT_NEAR(ls.intercept, m.mx - ls.slope * m.my, 1e-12);

  const auto neg = lag_scatter(x, y, -1);
  EXPECT_EQ(neg.pairs[0], (std::pair{1.0, 1.0}));
  EXPECT_EQ(neg.n_pairs, 5u);
}

TEST(LagScatter, SlopeRescalesToSegmentCorrelation) {
  const auto s = simulate(model1(), 5000, 17, 5000);
  for (std::ptrdiff_t lag : {-7, 0, 1, 5, 20}) {
    const auto ls = lag_scatter(s, lag);
    const auto m = segment_moments(s.x, s.y, lag);
    const double pearson = m.cxy / std::sqrt(m.vx * m.vy);
    EXPECT_NEAR(ls.slope * m.vy / std::sqrt(m.vx * m.vy), pearson, 1e-8) << lag;
  }
}

TEST(LagScatter, CapKeepsFullFit) {
  const auto s = simulate(model1(), 20000, 2, 20000);
  const auto capped = lag_scatter(s, 3);
  const auto full = lag_scatter(s, 3, 100000);
  EXPECT_LE(capped.pairs.size(), kMaxScatterPoints);
  EXPECT_EQ(capped.n_pairs, 19997u);
  EXPECT_EQ(full.pairs.size(), 19997u);
  EXPECT_EQ(capped.slope, full.slope);
  EXPECT_EQ(capped.pairs.front(), full.pairs.front());
}

TEST(LagScatter, Model1StaysPositive) {
  const auto s = simulate(model1(), 10000, 42, 10000);
  for (std::ptrdiff_t lag : {0, 1, 5}) EXPECT_GT(lag_scatter(s, lag).slope, 0.0);
  const auto ls = lag_scatter(s, 20);
  EXPECT_GT(ls.slope, 3.0 * ls.slope_stderr);
}

TEST(LagScatter, Model3OffZeroLagInsignificant) {
  const auto s = simulate(model3(), 10000, 42, 10000);
  const auto ls = lag_scatter(s, 5);
  EXPECT_LT(std::abs(ls.slope), 3.0 * ls.slope_stderr);
}

TEST(LagScatter, RejectsLagBeyondSeries) {
  const std::vector<double> x{1, 2, 3}, y{3, 1, 2};
  EXPECT_THROW(lag_scatter(x, y, 3), DomainError);
  EXPECT_THROW(lag_scatter(x, y, -3), DomainError);
}

TEST(CcfComparison, Model3TheoryVanishesOffZero) {
  const auto s = simulate(model3(), 10000, 5, 10000);
  const auto c = ccf_comparison(s, 30, 10000);
  ASSERT_EQ(c.rows.size(), 61u);
  for (const auto& r : c.rows) {
    if (r.lag != 0) EXPECT_EQ(r.theory, 0.0);
    EXPECT_DOUBLE_EQ(r.abs_diff, std::abs(r.sample - r.theory));
    EXPECT_EQ(r.flagged, r.abs_diff > c.threshold);
  }
  EXPECT_DOUBLE_EQ(c.threshold, 3.0 / 100.0);
}

TEST(CcfComparison, Model1ReplicationAverageMatchesTheory) {
  const std::size_t t_len = 10000, reps = 100, lags = 20;
  const Simulator sim(model1(), t_len);
  std::vector<double> sum(lags + 1, 0.0), theory(lags + 1, 0.0);
  for (std::uint64_t r = 0; r < reps; ++r) {
    const auto c = ccf_comparison(sim.simulate(t_len, 42 + r), lags, t_len);
    for (const auto& row : c.rows) {
      if (row.lag < 0) continue;
      sum[row.lag] += row.sample;
      theory[row.lag] = row.theory;
    }
  }
  const double tol = 3.0 / std::sqrt(static_cast<double>(reps * t_len));
  for (std::size_t k = 0; k <= lags; ++k) {
    EXPECT_LT(std::abs(sum[k] / reps - theory[k]), tol) << "lag " << k;
  }
}

TEST(CcfComparison, Model2DecaysGeometrically) {
  const std::size_t t_len = 10000, reps = 100, lags = 60;
  const Simulator sim(model2(), t_len);
  std::vector<double> sum(lags + 1, 0.0), theory(lags + 1, 0.0);
  for (std::uint64_t r = 0; r < reps; ++r) {
    const auto c = ccf_comparison(sim.simulate(t_len, 42 + r), lags, t_len);
    for (const auto& row : c.rows) {
      if (row.lag < 0) continue;
      sum[row.lag] += row.sample;
      theory[row.lag] = row.theory;
    }
  }
  for (std::size_t k = 31; k <= lags; ++k) {
    EXPECT_LT(std::abs(theory[k]), 0.02) << k;
    EXPECT_LT(std::abs(sum[k] / reps), 0.02) << k;
  }
}

// With the mean estimated from the data, E[rho_hat(k)] is close to
// (rho(k) - E[xbar ybar]/(s_x s_y)) / (1 - E[xbar^2]/s_x^2), where both
// correction terms are Fejer-weighted sums of the correlation function.
TEST(CcfComparison, Model1ReplicationAverageMatchesDemeanedExpectation) {
  const std::size_t t_len = 10000, reps = 100, lags = 20;
  const auto fejer_mean = [&](const CcfSeries& c) {
    const auto n = static_cast<std::ptrdiff_t>(t_len);
    double s = 0.0;
    for (std::ptrdiff_t h = -(n - 1); h <= n - 1; ++h) {
      s += (1.0 - static_cast<double>(std::abs(h)) / t_len) * c.at(h);
    }
    return s / t_len;
  };
  const auto cross = theoretical_ccf(model1(), t_len - 1, 2 * t_len);
  // Same x process on both sides: identical weights and perfectly correlated slots.
  ModelSpec twin = model1();
  twin.y = {ComponentSpec::fractional(0.4, 0.2, 3), ComponentSpec::fractional(0.3, 1.0, 4)};
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) twin.covariance.set(i, j, 0.0);
  }
  twin.covariance.set(1, 3, 1.0);
  twin.covariance.set(2, 4, 1.0);
  const auto autocorr = theoretical_ccf(twin, t_len - 1, 2 * t_len);
  const double cross_mean = fejer_mean(cross), auto_mean = fejer_mean(autocorr);

  const Simulator sim(model1(), t_len);
  std::vector<double> sum(lags + 1, 0.0), sum2(lags + 1, 0.0);
  for (std::uint64_t r = 0; r < reps; ++r) {
    const auto s = sim.simulate(t_len, 42 + r);
    const auto c = sample_ccf(s.x, s.y, lags);
    for (std::size_t k = 0; k <= lags; ++k) {
      const double v = c.at(static_cast<std::ptrdiff_t>(k));
      sum[k] += v;
      sum2[k] += v * v;
    }
  }
  for (std::size_t k = 0; k <= lags; ++k) {
    const double m = sum[k] / reps;
    const double se = std::sqrt((sum2[k] / reps - m * m) / (reps - 1));
    const double expected =
        (cross.at(static_cast<std::ptrdiff_t>(k)) - cross_mean) / (1.0 - auto_mean);
    EXPECT_NEAR(m, expected, 4.0 * se + 1e-3) << "lag " << k;
  }
}
