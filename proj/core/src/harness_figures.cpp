#include "critherm/design.hpp"
#include "critherm/error.hpp"
#include "critherm/harness/sweep.hpp"

#include <cmath>

namespace critherm::harness {

std::string_view to_string(FigureId id) noexcept {
  switch (id) {
    case FigureId::Fig1:
      return "fig1";
    case FigureId::Fig2:
      return "fig2";
    case FigureId::Fig3:
      return "fig3";
    case FigureId::Fig4:
      return "fig4";
    case FigureId::Fig5:
      return "fig5";
  }
  return "fig1";
}

FigureId parse_figure_id(std::string_view text) {
  for (auto id : {FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5}) {
    if (text == to_string(id)) return id;
  }
  fail(ErrorCode::InvalidArgument, "unknown figure '" + std::string(text) + "' (fig1..fig5)");
}

namespace {

// Lowest gaps against lambda, eigenvalues only.
ResultTable level_table(const ModelSpec& spec, const std::vector<double>& grid,
                        const RunOptions& options) {
  const ParamHamiltonian model = build_model(spec, options.caps);
  std::vector<Vector> levels(grid.size());
  parallel_for(grid.size(), options.threads,
               [&](std::size_t i) { levels[i] = eigenvalues_hermitian(model.at(grid[i])); });
  ResultTable table;
  stamp_metadata(table, "levels");
  table.set_meta("model", std::string(to_string(spec.kind)));
  table.set_meta("size", std::to_string(spec.size));
  table.add_column("lambda") = grid;
  for (int n = 1; n <= kReportedGaps; ++n) {
    auto& col = table.add_column("delta_" + std::to_string(n));
    for (const auto& e : levels) col.push_back(n < e.size() ? e[n] - e[0] : std::nan(""));
  }
  return table;
}

std::vector<NamedTable> fig1(const FigureOptions& o) {
  std::vector<NamedTable> out;
  out.push_back({"fig1a_levels", level_table(ModelSpec::spin1(1000), linspace(-3.0, 3.0, 121), o.run)});

  SweepConfig surface;
  surface.model = ModelSpec::spin1(200);
  surface.lambda_grid = linspace(-3.0, 3.0, 121);
  surface.temperature_mode = TemperatureMode::RatioMin;
  surface.temperatures = linspace(0.02, 1.0, 50);
  surface.critical_grid = linspace(-2.2, -1.5, 71);
  out.push_back({"fig1bc_surface", run_sweep(surface, o.run)});

  ScalingConfig sc = default_scaling(ModelKind::Spin1SMA);
  sc.sizes = o.spin1_sizes;
  out.push_back({"fig1def_scaling", scaling_table(run_scaling_study(ModelKind::Spin1SMA, sc, 0.0, o.run))});
  return out;
}

std::vector<NamedTable> fig2(const FigureOptions& o) {
  std::vector<NamedTable> out;
  out.push_back({"fig2a_levels", level_table(ModelSpec::xxz(8), linspace(-1.0, 1.0, 81), o.run)});

  SweepConfig surface;
  surface.model = ModelSpec::xxz(8);
  surface.lambda_grid = linspace(-1.0, 1.0, 41);
  surface.temperature_mode = TemperatureMode::RatioGap;
  surface.temperatures = linspace(0.02, 1.0, 50);
  out.push_back({"fig2bc_surface", run_sweep(surface, o.run)});

  ScalingConfig sc = default_scaling(ModelKind::XXZChain);
  sc.sizes = o.xxz_sizes;
  out.push_back({"fig2def_scaling", scaling_table(run_scaling_study(ModelKind::XXZChain, sc, 0.0, o.run))});
  return out;
}

std::vector<NamedTable> fig3(const FigureOptions& o) {
  SweepConfig cfg;
  cfg.model = ModelSpec::spin1(200);
  cfg.lambda_grid = {-1.869, -1.8};
  cfg.temperature_mode = TemperatureMode::Absolute;
  cfg.temperatures = linspace(0.01, 0.6, 60);
  cfg.observables = {ObservableLabel::Jperp2, ObservableLabel::N0};
  ResultTable table = run_sweep(cfg, o.run);

  const auto& lambda = table.column("lambda");
  const auto& temp = table.column("T");
  std::vector<double> baseline;
  std::vector<double> envelope;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    baseline.push_back(baseline_qfi(BaselineForm::Spin1, lambda[r], temp[r]));
    envelope.push_back(baseline_envelope(BaselineForm::Spin1, lambda[r]).f_max);
  }
  table.add_column("f_q_baseline") = baseline;
  table.add_column("f_q_infinity") = envelope;
  return {{"fig3_sensitivity", std::move(table)}};
}

std::vector<NamedTable> fig4(const FigureOptions& o) {
  SweepConfig cfg;
  cfg.model = ModelSpec::xxz(4);
  cfg.lambda_grid = {0.0, 0.5};
  cfg.temperature_mode = TemperatureMode::Absolute;
  cfg.temperatures = linspace(0.02, 2.0, 100);
  cfg.observables = {ObservableLabel::Sx2, ObservableLabel::Sz2};
  return {{"fig4_sensitivity", run_sweep(cfg, o.run)}};
}

std::vector<NamedTable> fig5(const FigureOptions&) {
  std::vector<double> ratios;
  for (int k = 0; k <= 60; ++k) ratios.push_back(std::pow(10.0, -3.0 + 4.0 * k / 60.0));
  ResultTable table;
  stamp_metadata(table, "detection_noise");
  table.set_meta("spectrum", "ground + m degenerate excited states at Delta = T log m");
  table.set_meta("ratio", "F / F_noiseless with F_noiseless = log^2(m) / (4 T^2)");
  for (int m : {2, 4, 10}) {
    const NoiseReport report = noise_discrepancy(m, ratios);
    table.set_meta("numeric_monotone_m" + std::to_string(m), report.numeric_monotone ? "true" : "false");
    for (const auto& row : report.rows) {
      table.add_column("m").push_back(m);
      table.add_column("sigma_over_t").push_back(row.sigma_over_t);
      table.add_column("numeric_ratio").push_back(row.numeric / report.noiseless);
      table.add_column("printed_ratio").push_back(row.printed / report.noiseless);
      table.add_column("reciprocal_ratio").push_back(row.reciprocal / report.noiseless);
    }
  }
  return {{"fig5_detection_noise", std::move(table)}};
}

}  // namespace

std::vector<NamedTable> reproduce_figure(FigureId id, const FigureOptions& options) {
  switch (id) {
    case FigureId::Fig1:
      return fig1(options);
    case FigureId::Fig2:
      return fig2(options);
    case FigureId::Fig3:
      return fig3(options);
    case FigureId::Fig4:
      return fig4(options);
    case FigureId::Fig5:
      return fig5(options);
  }
  return {};
}

}  // namespace critherm::harness
