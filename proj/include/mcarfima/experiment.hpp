#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcarfima/ccf_report.hpp"
#include "mcarfima/config.hpp"
#include "mcarfima/models.hpp"

namespace mcarfima {

/// Estimates for one realization. Missing values mean the estimator failed
/// (see `errors`) or was not requested.
struct SeriesEstimates {
  std::optional<double> hurst_x_dfa;
  std::optional<double> hurst_y_dfa;
  std::optional<double> hurst_xy_dcca;
  std::optional<double> hurst_xy_hxa;
  /// Sample CCF for lags -L..L when `ccf` is requested.
  std::optional<CcfSeries> ccf;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
};

/// Runs every estimator named in the config on one pair of series.
SeriesEstimates estimate_series(std::span<const double> x, std::span<const double> y,
                                const ExperimentConfig& config);

struct ReplicationResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  SeriesEstimates estimates;
};

struct AggregateRow {
  std::string quantity;
  std::size_t n_ok = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  double theory = 0.0;
};

struct ExperimentSummary {
  ExponentReport theory;
  std::vector<ReplicationResult> replications;
  std::vector<AggregateRow> aggregates;
  /// Replication-averaged sample CCF against theory (lags -L..L), if requested.
  std::vector<CcfComparisonRow> mean_ccf;
  std::vector<std::filesystem::path> files;
};

/// Simulates `replications` realizations with seeds base_seed + r and runs
/// the configured estimators on each, using up to `workers` threads.
/// Writes replications.csv, summary.csv and (with ccf) ccf_mean.csv.
/// Throws Error only if every estimator failed on every replication.
ExperimentSummary run_experiment(const ExperimentConfig& config, bool write_files = true);

/// Writes one series_rep<r>_seed<seed>.csv (columns t, x, y) per replication.
std::vector<std::filesystem::path> run_simulate(const ExperimentConfig& config);

/// Estimates on a series file; writes estimates.csv.
std::vector<std::filesystem::path> run_estimate(const ExperimentConfig& config,
                                                const std::filesystem::path& input);

/// Writes exponents.csv, theory_ccf.csv and, for four fractional
/// components, spectrum.csv.
std::vector<std::filesystem::path> run_theory(const ExperimentConfig& config);

/// Writes spectrum.csv; throws DomainError for non-fractional models.
std::filesystem::path run_spectrum(const ExperimentConfig& config);

/// Human-readable aggregate table.
std::string format_summary(const ExperimentSummary& summary, const ExperimentConfig& config);

}  // namespace mcarfima
