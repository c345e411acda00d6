#include "mcarfima/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "mcarfima/csv.hpp"
#include "mcarfima/error.hpp"
#include "mcarfima/estimators.hpp"

namespace mcarfima {
namespace {

constexpr std::size_t kSpectrumPoints = 512;

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

template <typename Fn>
void record(SeriesEstimates& est, std::string_view label, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    est.errors.push_back(std::string(label) + ": " + e.what());
  }
}

void append_warnings(SeriesEstimates& est, std::string_view label,
                     const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) est.warnings.push_back(std::string(label) + ": " + w);
}

AggregateRow aggregate(std::string quantity, const std::vector<double>& values, double theory) {
  AggregateRow row;
  row.quantity = std::move(quantity);
  row.theory = theory;
  row.n_ok = values.size();
  if (values.empty()) {
    row.mean = row.sd = row.min = row.max = std::nan("");
    return row;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  row.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - row.mean) * (v - row.mean);
  row.sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  row.min = *std::min_element(values.begin(), values.end());
  row.max = *std::max_element(values.begin(), values.end());
  return row;
}

std::size_t comparison_truncation(const ExperimentConfig& config) {
  // Theory for a simulated process uses the simulator's own truncation.
  return std::max(config.effective_truncation(), config.ccf_max_lag + 100);
}

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_spectrum(const ModelSpec& model, const std::filesystem::path& path) {
  CsvWriter out(path, {"lambda", "re", "im", "abs"});
  for (std::size_t j = 1; j <= kSpectrumPoints; ++j) {
    const double lambda = std::numbers::pi * static_cast<double>(j) / kSpectrumPoints;
    const auto f = cross_spectrum(model, lambda);
    out.row({format_number(lambda), format_number(f.real()), format_number(f.imag()),
             format_number(std::abs(f))});
  }
  out.close();
}

}  // namespace

SeriesEstimates estimate_series(std::span<const double> x, std::span<const double> y,
                                const ExperimentConfig& config) {
  SeriesEstimates est;
  if (config.uses(Estimator::dfa)) {
    const auto scales = config.effective_dfa_scales();
    record(est, "dfa(x)", [&] {
      const auto h = estimate_hurst(dfa(x, scales, config.detrend_order));
      append_warnings(est, "dfa(x)", h.warnings);
      est.hurst_x_dfa = h.hurst;
    });
    record(est, "dfa(y)", [&] {
      const auto h = estimate_hurst(dfa(y, scales, config.detrend_order));
      append_warnings(est, "dfa(y)", h.warnings);
      est.hurst_y_dfa = h.hurst;
    });
  }
  if (config.uses(Estimator::dcca)) {
    record(est, "dcca", [&] {
      const auto h =
          estimate_hurst(dcca(x, y, config.effective_dcca_scales(), config.detrend_order));
      append_warnings(est, "dcca", h.warnings);
      est.hurst_xy_dcca = h.hurst;
    });
  }
  if (config.uses(Estimator::hxa)) {
    record(est, "hxa", [&] {
      const auto h = estimate_hurst(hxa(x, y, config.tau_min, config.tau_max));
      append_warnings(est, "hxa", h.warnings);
      est.hurst_xy_hxa = h.hurst;
    });
  }
  if (config.uses(Estimator::ccf)) {
    record(est, "ccf", [&] { est.ccf = sample_ccf(x, y, config.ccf_max_lag); });
  }
  return est;
}

ExperimentSummary run_experiment(const ExperimentConfig& config, bool write_files) {
  config.validate();
  const std::size_t truncation = config.effective_truncation();
  const Simulator simulator(config.model, truncation);

  ExperimentSummary summary;
  summary.theory = theoretical_exponents(config.model, truncation);
  summary.replications.resize(config.replications);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < config.replications; r = next++) {
      auto& result = summary.replications[r];
      result.index = r;
      result.seed = config.base_seed + r;
      try {
        const auto series = simulator.simulate(config.length, result.seed);
        result.estimates = estimate_series(series.x, series.y, config);
      } catch (const std::exception& e) {
        result.estimates.errors.push_back(std::string("simulate: ") + e.what());
      }
    }
  };
  const std::size_t threads = std::min(config.workers, config.replications);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  const bool any_success =
      std::any_of(summary.replications.begin(), summary.replications.end(), [](const auto& r) {
        const auto& e = r.estimates;
        return e.hurst_x_dfa || e.hurst_y_dfa || e.hurst_xy_dcca || e.hurst_xy_hxa || e.ccf;
      });
  if (!any_success) {
    const auto& first = summary.replications.front().estimates.errors;
    throw Error("every estimator failed on every replication" +
                (first.empty() ? std::string() : ": " + first.front()));
  }

  auto collect = [&](auto member) {
    std::vector<double> v;
    for (const auto& r : summary.replications) {
      if (const auto& o = r.estimates.*member) v.push_back(*o);
    }
    return v;
  };
  const auto& th = summary.theory;
  if (config.uses(Estimator::dfa)) {
    summary.aggregates.push_back(aggregate("H_x_dfa", collect(&SeriesEstimates::hurst_x_dfa), th.hurst_x));
    summary.aggregates.push_back(aggregate("H_y_dfa", collect(&SeriesEstimates::hurst_y_dfa), th.hurst_y));
  }
  if (config.uses(Estimator::dcca)) {
    summary.aggregates.push_back(
        aggregate("H_xy_dcca", collect(&SeriesEstimates::hurst_xy_dcca), th.hurst_xy));
  }
  if (config.uses(Estimator::hxa)) {
    summary.aggregates.push_back(
        aggregate("H_xy_hxa", collect(&SeriesEstimates::hurst_xy_hxa), th.hurst_xy));
  }
  if (config.uses(Estimator::ccf)) {
    const auto theory =
        theoretical_ccf(config.model, config.ccf_max_lag, comparison_truncation(config));
    const auto lags = static_cast<std::ptrdiff_t>(config.ccf_max_lag);
    std::vector<double> rho0;
    for (std::ptrdiff_t k = -lags; k <= lags; ++k) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& r : summary.replications) {
        if (!r.estimates.ccf) continue;
        sum += r.estimates.ccf->at(k);
        ++n;
        if (k == 0) rho0.push_back(r.estimates.ccf->at(0));
      }
      CcfComparisonRow row;
      row.lag = k;
      row.sample = n > 0 ? sum / static_cast<double>(n) : std::nan("");
      row.theory = theory.at(k);
      row.abs_diff = std::abs(row.sample - row.theory);
      summary.mean_ccf.push_back(row);
    }
    summary.aggregates.push_back(aggregate("rho_0", rho0, theory.at(0)));
  }

  if (!write_files) return summary;
  ensure_output_dir(config.output_dir);

  const auto reps_path = config.output_dir / "replications.csv";
  CsvWriter reps(reps_path, {"replication", "seed", "H_x_dfa", "H_y_dfa", "H_xy_dcca",
                             "H_xy_hxa", "rho_0", "errors"});
  for (const auto& r : summary.replications) {
    const auto& e = r.estimates;
    reps.row({std::to_string(r.index), std::to_string(r.seed), cell(e.hurst_x_dfa),
              cell(e.hurst_y_dfa), cell(e.hurst_xy_dcca), cell(e.hurst_xy_hxa),
              e.ccf ? format_number(e.ccf->at(0)) : "", join(e.errors, "; ")});
  }
  reps.close();
  summary.files.push_back(reps_path);

  const auto sum_path = config.output_dir / "summary.csv";
  CsvWriter agg(sum_path, {"quantity", "n_ok", "mean", "sd", "min", "max", "theory"});
  for (const auto& a : summary.aggregates) {
    agg.row({a.quantity, std::to_string(a.n_ok), format_number(a.mean), format_number(a.sd),
             format_number(a.min), format_number(a.max), format_number(a.theory)});
  }
  agg.close();
  summary.files.push_back(sum_path);

  if (!summary.mean_ccf.empty()) {
    const auto ccf_path = config.output_dir / "ccf_mean.csv";
    CsvWriter ccf(ccf_path, {"lag", "mean_sample", "theory", "abs_diff"});
    for (const auto& row : summary.mean_ccf) {
      ccf.row({std::to_string(row.lag), format_number(row.sample), format_number(row.theory),
               format_number(row.abs_diff)});
    }
    ccf.close();
    summary.files.push_back(ccf_path);
  }
  return summary;
}

std::vector<std::filesystem::path> run_simulate(const ExperimentConfig& config) {
  config.validate();
  ensure_output_dir(config.output_dir);
  const Simulator simulator(config.model, config.effective_truncation());
  std::vector<std::filesystem::path> files(config.replications);

  std::atomic<std::size_t> next{0};
  std::vector<std::string> failures(config.replications);
  auto worker = [&] {
    for (std::size_t r = next++; r < config.replications; r = next++) {
      try {
        const std::uint64_t seed = config.base_seed + r;
        const auto series = simulator.simulate(config.length, seed);
        files[r] = config.output_dir /
                   ("series_rep" + std::to_string(r) + "_seed" + std::to_string(seed) + ".csv");
        CsvWriter out(files[r], {"t", "x", "y"});
        for (std::size_t t = 0; t < series.size(); ++t) {
          out.row({std::to_string(t), format_number(series.x[t]), format_number(series.y[t])});
        }
        out.close();
      } catch (const std::exception& e) {
        failures[r] = e.what();
      }
    }
  };
  const std::size_t threads = std::min(config.workers, config.replications);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw Error(f);
  }
  return files;
}

std::vector<std::filesystem::path> run_estimate(const ExperimentConfig& config,
                                                const std::filesystem::path& input) {
  const auto cols = read_series_csv(input);
  ExperimentConfig local = config;
  local.length = cols.x.size();
  local.validate();
  const auto est = estimate_series(cols.x, cols.y, local);
  if (!est.hurst_x_dfa && !est.hurst_y_dfa && !est.hurst_xy_dcca && !est.hurst_xy_hxa && !est.ccf) {
    throw Error("every estimator failed: " + join(est.errors, "; "));
  }

  ensure_output_dir(local.output_dir);
  const auto path = local.output_dir / "estimates.csv";
  CsvWriter out(path, {"quantity", "value"});
  out.row({"T", std::to_string(local.length)});
  if (local.uses(Estimator::dfa)) {
    out.row({"H_x_dfa", cell(est.hurst_x_dfa)});
    out.row({"H_y_dfa", cell(est.hurst_y_dfa)});
  }
  if (local.uses(Estimator::dcca)) out.row({"H_xy_dcca", cell(est.hurst_xy_dcca)});
  if (local.uses(Estimator::hxa)) out.row({"H_xy_hxa", cell(est.hurst_xy_hxa)});
  if (est.ccf) {
    const auto lags = est.ccf->max_lag;
    for (std::ptrdiff_t k = -lags; k <= lags; ++k) {
      out.row({"rho_" + std::to_string(k), format_number(est.ccf->at(k))});
    }
  }
  for (const auto& e : est.errors) out.row({"error", e});
  for (const auto& w : est.warnings) out.row({"warning", w});
  out.close();
  return {path};
}

std::vector<std::filesystem::path> run_theory(const ExperimentConfig& config) {
  config.validate();
  ensure_output_dir(config.output_dir);
  std::vector<std::filesystem::path> files;

  const auto report = theoretical_exponents(config.model, config.truncation_k);
  const auto exp_path = config.output_dir / "exponents.csv";
  CsvWriter exp(exp_path, {"quantity", "value"});
  exp.row({"H_x", format_number(report.hurst_x)});
  exp.row({"H_y", format_number(report.hurst_y)});
  exp.row({"H_xy", format_number(report.hurst_xy)});
  exp.row({"sigma_x", format_number(report.sigma_x)});
  exp.row({"sigma_y", format_number(report.sigma_y)});
  exp.row({"dominating_pair",
           report.dominating_pair ? std::to_string(report.dominating_pair->first) + "-" +
                                        std::to_string(report.dominating_pair->second)
                                  : "none"});
  exp.row({"truncation_K", std::to_string(config.truncation_k)});
  exp.close();
  files.push_back(exp_path);

  const auto ccf = theoretical_ccf(config.model, config.theory_max_lag, config.truncation_k);
  const auto ccf_path = config.output_dir / "theory_ccf.csv";
  CsvWriter out(ccf_path, {"lag", "rho"});
  for (std::ptrdiff_t k = -ccf.max_lag; k <= ccf.max_lag; ++k) {
    out.row({std::to_string(k), format_number(ccf.at(k))});
  }
  out.close();
  files.push_back(ccf_path);

  if (config.model.all_fractional()) {
    const auto spec_path = config.output_dir / "spectrum.csv";
    write_spectrum(config.model, spec_path);
    files.push_back(spec_path);
  }
  return files;
}

std::filesystem::path run_spectrum(const ExperimentConfig& config) {
  config.validate();
  if (!config.model.all_fractional()) {
    throw DomainError("cross spectrum is only available for models with four fractional components");
  }
  ensure_output_dir(config.output_dir);
  const auto path = config.output_dir / "spectrum.csv";
  write_spectrum(config.model, path);
  return path;
}

std::string format_summary(const ExperimentSummary& summary, const ExperimentConfig& config) {
  std::ostringstream out;
  out << "model " << config.model_name << ", T=" << config.length
      << ", replications=" << config.replications << ", base_seed=" << config.base_seed
      << ", M=" << config.effective_truncation() << "\n";
  out << std::left << std::setw(12) << "quantity" << std::right << std::setw(6) << "n"
      << std::setw(10) << "mean" << std::setw(10) << "sd" << std::setw(10) << "min"
      << std::setw(10) << "max" << std::setw(10) << "theory" << "\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& a : summary.aggregates) {
    out << std::left << std::setw(12) << a.quantity << std::right << std::setw(6) << a.n_ok
        << std::setw(10) << a.mean << std::setw(10) << a.sd << std::setw(10) << a.min
        << std::setw(10) << a.max << std::setw(10) << a.theory << "\n";
  }
  std::size_t failed = 0;
  for (const auto& r : summary.replications) failed += r.estimates.errors.empty() ? 0 : 1;
  if (failed > 0) out << failed << " replication(s) recorded estimator errors\n";
  return out.str();
}

}  // namespace mcarfima
