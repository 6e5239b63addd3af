#pragma once

#include "critherm/harness/config.hpp"
#include "critherm/harness/table.hpp"
#include "critherm/scaling.hpp"
#include "critherm/spectral.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace critherm::harness {

/// Bits of the "flags" column.
enum RowFlag : unsigned {
  kFlagFailed = 1u,
  kFlagGroundStateLimit = 2u,
  kFlagEpfInsensitive = 4u,
  kFlagOutcomesExcluded = 8u,
};

inline constexpr int kReportedGaps = 5;

struct RunOptions {
  /// 0 uses std::thread::hardware_concurrency.
  int threads = 1;
  SizeCaps caps = default_size_caps();
};

/// Runs fn(i) for i in [0, count) on a pool of worker threads.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// One diagonalization per lambda; rows are lambda-major, T-minor.
ResultTable run_sweep(const SweepConfig& config, const RunOptions& options = {});

struct ScalingStudy {
  ModelKind kind = ModelKind::Spin1SMA;
  ScalingConfig config;
  std::vector<double> lambda_c;
  std::vector<double> delta_min;
  std::vector<ScalingCurve> gap;
  std::vector<ScalingCurve> qfi;
  std::vector<ScalingCurve> snr;
  CollapseResult gap_collapse;
  CollapseResult qfi_collapse;
  CollapseResult snr_collapse;
};

/// Per-size gap, Delta_g^2 F_Q and SNR curves at fixed T/Delta_g around the
/// critical point (spin-1: per-size gap minimum; XXZ: lambda_c = 0).
ScalingStudy run_scaling_study(ModelKind kind, const ScalingConfig& config, double zeta_z = 0.0,
                               const RunOptions& options = {});

/// Long-format table: size, epsilon, x, delta_g, qfi_scaled, snr and the
/// rescaled ordinates, with residuals in metadata.
ResultTable scaling_table(const ScalingStudy& study);

struct NamedTable {
  std::string name;
  ResultTable table;
};

enum class FigureId { Fig1, Fig2, Fig3, Fig4, Fig5 };

std::string_view to_string(FigureId id) noexcept;
FigureId parse_figure_id(std::string_view text);

struct FigureOptions {
  RunOptions run;
  /// Sizes for the spin-1 collapse panels.
  std::vector<int> spin1_sizes{100, 200, 400, 800};
  std::vector<int> xxz_sizes{4, 6, 8};
};

std::vector<NamedTable> reproduce_figure(FigureId id, const FigureOptions& options = {});

/// Common metadata stamped on every table.
void stamp_metadata(ResultTable& table, const std::string& kind);

}  // namespace critherm::harness
