#pragma once

#include "critherm/models.hpp"
#include "critherm/scaling.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace critherm::harness {

enum class TemperatureMode {
  /// temperatures are T itself
  Absolute,
  /// temperatures are T / Delta_min, Delta_min resolved once per model and grid
  RatioMin,
  /// temperatures are T / Delta_g(lambda), resolved per lambda
  RatioGap,
};

std::string_view to_string(TemperatureMode mode) noexcept;
TemperatureMode parse_temperature_mode(std::string_view text);

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_output_format(std::string_view text);

struct ScalingConfig {
  std::vector<int> sizes;
  double t_over_gap = 0.17;
  /// Grid in the scaling variable of the gap collapse; mapped to eps per size.
  std::vector<double> x_grid;
  std::optional<ScalingExponents> exponents;
  Abscissa gap_abscissa = Abscissa::Linear;
  Abscissa qfi_abscissa = Abscissa::Linear;
  /// Grid searched for the per-size critical point (spin-1 only).
  std::vector<double> critical_grid;
};

struct OutputConfig {
  std::string path;
  OutputFormat format = OutputFormat::Csv;
};

struct SweepConfig {
  ModelSpec model;
  std::vector<double> lambda_grid;
  TemperatureMode temperature_mode = TemperatureMode::Absolute;
  std::vector<double> temperatures;
  std::vector<ObservableLabel> observables;
  /// Grid for locating Delta_min in RatioMin mode; empty means lambda_grid.
  std::vector<double> critical_grid;
  std::optional<ScalingConfig> scaling;
  OutputConfig output;
};

/// Throws Error(Config) naming the offending key path, e.g. "sweep.lambda".
SweepConfig parse_config(std::string_view toml_text, std::string_view source = "<string>");
SweepConfig load_config(const std::filesystem::path& path);

/// Checks grid monotonicity and model/observable compatibility.
void validate(const SweepConfig& config);

/// Key-sorted JSON with 17-digit floats; stable for identical configs.
std::string canonical_json(const SweepConfig& config);
/// 64-bit FNV-1a over canonical_json.
std::uint64_t config_hash(const SweepConfig& config);
std::string config_hash_hex(const SweepConfig& config);

/// Default scaling setup for a model kind: sizes, x-window and critical grid.
ScalingConfig default_scaling(ModelKind kind);

}  // namespace critherm::harness
