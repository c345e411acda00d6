// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [path-to-cli]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mcarfima/config.hpp"
#include "mcarfima/error.hpp"
#include "mcarfima/estimators.hpp"
#include "mcarfima/experiment.hpp"
#include "mcarfima/filter.hpp"
#include "mcarfima/models.hpp"
#include "mcarfima/weights.hpp"

using namespace mcarfima;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void check(Outcome& o, bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += buf;
    if (!ok) {
      o.detail += " [x]";
      o.pass = false;
    }
  }

  void run(const char* id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures_ += !o.pass;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

Report report;

double lgamma_weight(double d, std::size_t n) {
  const double x = static_cast<double>(n);
  return std::exp(std::lgamma(x + d) - std::lgamma(x + 1.0) - std::lgamma(d));
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const AggregateRow& row(const ExperimentSummary& s, const std::string& q) {
  for (const auto& r : s.aggregates) {
    if (r.quantity == q) return r;
  }
  throw Error("missing aggregate " + q);
}

ExperimentSummary monte_carlo(const std::string& name) {
  ExperimentConfig c;
  c.model_name = name;
  c.model = *preset(name);
  c.length = 10000;
  c.replications = 100;
  c.base_seed = 42;
  c.workers = std::max(1u, std::thread::hardware_concurrency());
  c.dcca_scales = ScaleRange{10, 2000, 10};
  c.dfa_scales = ScaleRange{10, 2000, 10};
  c.tau_min = 1;
  c.tau_max = 100;
  c.ccf_max_lag = 20;
  return run_experiment(c, false);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_tree(const fs::path& a, const fs::path& b, std::size_t& compared) {
  compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const auto other = b / fs::relative(e.path(), a);
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) return false;
    ++compared;
  }
  return compared > 0;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path cli = argc > 1 ? fs::path(argv[1]) : fs::path();

  report.run("C1", "weight correctness", [] {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (double d : {0.1, 0.3, 0.4, 0.45}) {
      const auto w = ma_weights(d, 10000);
      double worst = 0.0;
      for (std::size_t n = 1; n <= 1000; ++n) {
        const double ref = lgamma_weight(d, n);
        worst = std::max(worst, std::abs(w[n] - ref) / ref);
      }
      std::vector<double> lx, ly;
      for (std::size_t n = 1000; n <= 10000; ++n) {
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(w[n]));
      }
      const double slope = ols_slope(lx, ly);
      report.check(o, worst < 1e-10 && std::abs(slope - (d - 1.0)) <= 0.01,
                   "d=%.2f relerr %.1e tail slope %.4f", d, worst, slope);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.check(o, secs < 1.0, "runtime %.3f s", secs);
    return o;
  });

  ExperimentSummary m1;
  report.run("C2", "model 1 exponent recovery", [&] {
    Outcome o;
    m1 = monte_carlo("model1");
    const double dcca = row(m1, "H_xy_dcca").mean, hxa = row(m1, "H_xy_hxa").mean;
    const double hx = row(m1, "H_x_dfa").mean, hy = row(m1, "H_y_dfa").mean;
    report.check(o, dcca >= 0.70 && dcca <= 0.90, "DCCA H_xy %.4f in [0.70,0.90]", dcca);
    report.check(o, hxa >= 0.70 && hxa <= 0.90, "HXA H_xy %.4f in [0.70,0.90]", hxa);
    report.check(o, hx >= 0.80 && hx <= 0.95, "DFA H_x %.4f in [0.80,0.95]", hx);
    report.check(o, hy >= 0.80 && hy <= 0.95, "DFA H_y %.4f in [0.80,0.95]", hy);
    return o;
  });

  report.run("C3", "models 2 and 3 short-range cross-correlation", [] {
    Outcome o;
    for (const char* name : {"model2", "model3"}) {
      const auto s = monte_carlo(name);
      const double dcca = row(s, "H_xy_dcca").mean, hxa = row(s, "H_xy_hxa").mean;
      const double hx = row(s, "H_x_dfa").mean, hy = row(s, "H_y_dfa").mean;
      report.check(o, dcca >= 0.40 && dcca <= 0.60, "%s DCCA H_xy %.4f in [0.40,0.60]", name, dcca);
      report.check(o, hxa >= 0.40 && hxa <= 0.60, "%s HXA H_xy %.4f in [0.40,0.60]", name, hxa);
      report.check(o, hx >= 0.80 && hx <= 0.95, "%s DFA H_x %.4f in [0.80,0.95]", name, hx);
      report.check(o, hy >= 0.80 && hy <= 0.95, "%s DFA H_y %.4f in [0.80,0.95]", name, hy);
    }
    return o;
  });

  report.run("C4", "model 3 CCF structure", [] {
    Outcome o;
    const std::size_t t_len = 1000000, lags = 100;
    const std::size_t m = default_truncation(t_len);
    const auto s = simulate(model3(), t_len, 42, m);
    const auto c = sample_ccf(s.x, s.y, lags);
    double sum_sq = 1.0;
    for (std::size_t n = 1; n <= m; ++n) sum_sq += std::pow(lgamma_weight(0.4, n), 2);
    const double rho0 = 0.9 / (1.0 + sum_sq);
    const double rho0_inf =
        0.9 / (1.0 + std::tgamma(0.2) / std::pow(std::tgamma(0.6), 2));
    report.check(o, std::abs(c.at(0) - rho0) <= 0.01,
                 "rho(0) %.4f vs truncated theory %.4f (K=%zu, untruncated %.4f)", c.at(0), rho0,
                 m, rho0_inf);
    const double band = 3.0 / std::sqrt(static_cast<double>(t_len));
    std::size_t inside = 0;
    for (std::size_t k = 1; k <= lags; ++k) inside += std::abs(c.at(static_cast<std::ptrdiff_t>(k))) < band;
    report.check(o, inside >= 95, "%zu/100 lags inside %.4f", inside, band);
    return o;
  });

  report.run("C5", "model 1 theory-simulation CCF agreement", [&] {
    Outcome o;
    if (m1.mean_ccf.empty()) m1 = monte_carlo("model1");
    double worst = 0.0;
    std::ptrdiff_t worst_lag = 0;
    std::size_t ok = 0;
    for (const auto& r : m1.mean_ccf) {
      if (r.lag < 0 || r.lag > 20) continue;
      ok += r.abs_diff < 0.01;
      if (r.abs_diff > worst) {
        worst = r.abs_diff;
        worst_lag = r.lag;
      }
    }
    report.check(o, ok == 21, "%zu/21 lags within 0.01, worst |diff| %.4f at lag %td", ok, worst,
                 worst_lag);
    return o;
  });

  report.run("C6", "theoretical CCF asymptote", [] {
    Outcome o;
    const auto c = theoretical_ccf(model1(), 1000, 100000);
    std::vector<double> lx, ly;
    for (std::ptrdiff_t k = 100; k <= 1000; ++k) {
      lx.push_back(std::log(static_cast<double>(k)));
      ly.push_back(std::log(c.at(k)));
    }
    const double slope = ols_slope(lx, ly);
    report.check(o, std::abs(slope + 0.4) <= 0.05, "slope %.4f vs -0.4", slope);
    return o;
  });

  report.run("C7", "spectrum consistency", [] {
    Outcome o;
    const std::size_t n = 10000;
    std::vector<double> a(n + 1);
    for (std::size_t k = 0; k <= n; ++k) a[k] = k == 0 ? 1.0 : lgamma_weight(0.3, k);
    // Autocorrelation of the weights, indexed by k - l.
    std::vector<double> lagged(n + 1, 0.0);
    for (std::size_t h = 0; h <= n; ++h) {
      for (std::size_t l = 0; l + h <= n; ++l) lagged[h] += a[l + h] * a[l];
    }
    for (double lambda : {std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi}) {
      std::complex<double> sum = lagged[0];
      for (std::size_t h = 1; h <= n; ++h) sum += 2.0 * lagged[h] * std::cos(h * lambda);
      sum *= 0.9 / (2.0 * std::numbers::pi);
      const auto closed = cross_spectrum(model1(), lambda);
      const double rel = std::abs(closed - sum) / std::abs(closed);
      report.check(o, rel < 1e-3, "lambda %.4f rel %.1e", lambda, rel);
    }
    std::vector<double> lx, ly;
    for (int i = 0; i <= 100; ++i) {
      const double lambda = std::pow(10.0, -4.0 + 2.0 * i / 100.0);
      lx.push_back(std::log(lambda));
      ly.push_back(std::log(std::abs(cross_spectrum(model1(), lambda))));
    }
    const double slope = ols_slope(lx, ly);
    report.check(o, std::abs(slope + 0.6) <= 0.02, "low-frequency slope %.4f vs -0.6", slope);
    return o;
  });

  report.run("C8", "structural invariants", [&] {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    int equal = 0;
    for (int c = 0; c < 20; ++c) {
      std::vector<double> z(500 + rng() % 5000);
      for (auto& v : z) v = g(rng);
      const ScaleRange r{10, z.size() / 4, 5};
      equal += dcca(z, z, r).values == dfa(z, r).values;
    }
    report.check(o, equal == 20, "dcca(z,z)==dfa(z) on %d/20", equal);

    double worst = 0.0;
    for (int c = 0; c < 100; ++c) {
      const std::size_t t_len = 1 + rng() % 3000, m = rng() % 3000;
      std::vector<double> e(t_len + m);
      for (auto& v : e) v = g(rng);
      const double d = std::uniform_real_distribution<double>(0.0, 0.49)(rng);
      const auto w = ma_weights(d, m);
      const auto a = causal_filter(e, w, t_len, ConvolutionMethod::direct);
      const auto b = causal_filter(e, w, t_len, ConvolutionMethod::fft);
      for (std::size_t t = 0; t < t_len; ++t) worst = std::max(worst, std::abs(a[t] - b[t]));
    }
    report.check(o, worst < 1e-8, "fft vs direct max diff %.1e", worst);

    const auto root = fs::temp_directory_path() / "mcarfima_acceptance";
    fs::remove_all(root);
    ExperimentConfig c;
    c.model_name = "model1";
    c.length = 5000;
    c.replications = 4;
    c.workers = 2;
    for (const char* run : {"a", "b"}) {
      c.output_dir = root / "lib" / run;
      run_simulate(c);
      run_experiment(c);
      run_theory(c);
    }
    std::size_t files = 0;
    const bool lib_same = same_tree(root / "lib" / "a", root / "lib" / "b", files);
    report.check(o, lib_same, "library pipeline identical over %zu files", files);

    if (!cli.empty()) {
      for (const char* run : {"a", "b"}) {
        const auto out = root / "cli" / run;
        for (const char* sub : {"simulate", "experiment", "theory"}) {
          const std::string cmd = "\"" + cli.string() + "\" " + sub +
                                  " --model model2 --T 3000 --reps 3 --seed 9 --workers 2 -o \"" +
                                  out.string() + "\" > /dev/null";
          if (std::system(cmd.c_str()) != 0) throw Error("CLI failed: " + cmd);
        }
      }
      const bool cli_same = same_tree(root / "cli" / "a", root / "cli" / "b", files);
      report.check(o, cli_same, "CLI outputs identical over %zu files", files);
    }
    fs::remove_all(root);
    return o;
  });

  std::printf("%d criterion(s) failed\n", report.failures());
  return report.failures() == 0 ? 0 : 1;
}
