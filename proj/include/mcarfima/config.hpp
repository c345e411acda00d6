#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcarfima/estimators.hpp"
#include "mcarfima/models.hpp"

namespace mcarfima {

enum class Estimator { dfa, dcca, hxa, ccf };

std::string_view to_string(Estimator e) noexcept;
/// Throws ConfigError for unknown names.
Estimator estimator_from_string(std::string_view name);

/// Everything a CLI run needs. Unset optionals resolve to T-dependent defaults.
struct ExperimentConfig {
  /// Preset name ("model1".."model3") or "custom" for an inline model.
  std::string model_name = "model1";
  ModelSpec model = model1();
  std::size_t length = 10000;
  std::size_t replications = 1;
  std::uint64_t base_seed = 42;
  std::size_t workers = 1;
  std::vector<Estimator> estimators{Estimator::dfa, Estimator::dcca, Estimator::hxa,
                                    Estimator::ccf};
  std::optional<ScaleRange> dfa_scales;
  std::optional<ScaleRange> dcca_scales;
  int detrend_order = 1;
  std::size_t tau_min = 1;
  std::size_t tau_max = 100;
  std::size_t ccf_max_lag = 20;
  /// Filter truncation M; defaults to max(T, 10000).
  std::optional<std::size_t> truncation_m;
  /// Truncation K of theoretical CCF sums.
  std::size_t truncation_k = 100000;
  std::size_t theory_max_lag = 50;
  std::filesystem::path output_dir = "out";

  std::size_t effective_truncation() const noexcept;
  /// s_min = 10, s_max = T/5, step 10 unless overridden.
  ScaleRange effective_dfa_scales() const noexcept;
  ScaleRange effective_dcca_scales() const noexcept;
  bool uses(Estimator e) const noexcept;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses a JSON config document. Syntax errors report line and column;
/// schema errors report the field path. The result is validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

/// Model document alone: a preset name string or an inline object.
ModelSpec parse_model(std::string_view text);
std::string serialize_model(const ModelSpec& model);

}  // namespace mcarfima
