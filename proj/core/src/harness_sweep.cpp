#include "critherm/harness/sweep.hpp"

#include "critherm/error.hpp"
#include "critherm/thermo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#ifndef CRITHERM_VERSION
#define CRITHERM_VERSION "0.0.0"
#endif

namespace critherm::harness {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void stamp_metadata(ResultTable& table, const std::string& kind) {
  table.set_meta("generator", "critherm");
  table.set_meta("code_version", CRITHERM_VERSION);
  table.set_meta("table", kind);
}

namespace {

std::string units_of(ModelKind kind) { return kind == ModelKind::Spin1SMA ? "c" : "J"; }

void stamp_model(ResultTable& table, const ModelSpec& model) {
  table.set_meta("model", std::string(to_string(model.kind)));
  table.set_meta("size", std::to_string(model.size));
  if (model.kind == ModelKind::XXZChain) {
    table.set_meta("zeta_z", format_double(model.zeta_z));
    table.set_meta("boundary", "periodic");
  }
  const std::string u = units_of(model.kind);
  table.set_meta("energy_unit", u);
  table.set_meta("fisher_unit", u + "^-2");
  table.set_meta("lambda", model.kind == ModelKind::Spin1SMA ? "q = q_z/c" : "h = h_x/J");
}

struct PointRows {
  // rows[t][column]
  std::vector<std::vector<double>> rows;
};

}  // namespace

ResultTable run_sweep(const SweepConfig& config, const RunOptions& options) {
  validate(config);
  if (config.lambda_grid.empty()) fail(ErrorCode::Config, "sweep.lambda: missing key");
  if (config.temperatures.empty()) fail(ErrorCode::Config, "sweep.temperatures: missing key");

  const ParamHamiltonian model = build_model(config.model, options.caps);

  double delta_min = kNaN;
  double lambda_c = kNaN;
  if (config.temperature_mode == TemperatureMode::RatioMin) {
    const auto& grid = config.critical_grid.empty() ? config.lambda_grid : config.critical_grid;
    const CriticalPoint cp = locate_critical_point(model, grid);
    if (cp.at_boundary) {
      fail(ErrorCode::GridBoundary, "gap minimum at grid boundary lambda = " +
                                        format_double(cp.lambda) + "; widen sweep.critical_grid");
    }
    delta_min = cp.min_gap;
    lambda_c = cp.lambda;
  }

  std::vector<ObservableMatrix> fixed_obs;
  for (ObservableLabel label : config.observables) {
    if (label != ObservableLabel::Energy) {
      fixed_obs.push_back(build_observable(config.model, label, 0.0, options.caps));
    } else {
      fixed_obs.push_back({label, Matrix(), "Energy"});
    }
  }

  std::vector<std::string> names{"lambda", "T"};
  if (config.temperature_mode == TemperatureMode::RatioMin) names.push_back("T_over_delta_min");
  names.insert(names.end(), {"T_over_delta_g", "f_q", "snr"});
  for (ObservableLabel label : config.observables) {
    names.push_back("f_c_" + std::string(to_string(label)));
    names.push_back("epf_var_" + std::string(to_string(label)));
  }
  for (int n = 1; n <= kReportedGaps; ++n) names.push_back("delta_" + std::to_string(n));
  names.push_back("flags");

  std::atomic<long> diagonalizations{0};
  std::vector<PointRows> results(config.lambda_grid.size());

  parallel_for(config.lambda_grid.size(), options.threads, [&](std::size_t li) {
    const double lambda = config.lambda_grid[li];
    PointRows& out = results[li];
    const auto failed_row = [&](double t) {
      std::vector<double> row(names.size(), kNaN);
      row[0] = lambda;
      row[1] = t;
      row.back() = kFlagFailed;
      return row;
    };

    Spectrum spectrum;
    try {
      spectrum = eig_hermitian(model.at(lambda));
      ++diagonalizations;
    } catch (const Error&) {
      out.rows.assign(config.temperatures.size(), failed_row(kNaN));
      return;
    }
    const double delta_g = spectrum.ground_gap();

    std::vector<ObservableMatrix> obs = fixed_obs;
    std::vector<Measurement> measurements;
    std::vector<ExpectationTable> expectations;
    try {
      for (auto& o : obs) {
        if (o.label == ObservableLabel::Energy) o = energy_observable(model, lambda);
        measurements.push_back(make_measurement(spectrum, o));
        expectations.push_back(make_expectations(spectrum, o));
      }
    } catch (const Error&) {
      out.rows.assign(config.temperatures.size(), failed_row(kNaN));
      return;
    }

    for (double spec_t : config.temperatures) {
      double t = spec_t;
      if (config.temperature_mode == TemperatureMode::RatioMin) t = spec_t * delta_min;
      if (config.temperature_mode == TemperatureMode::RatioGap) t = spec_t * delta_g;
      try {
        const GibbsEnsemble ens = gibbs(spectrum, t);
        std::vector<double> row;
        row.reserve(names.size());
        unsigned flags = ens.ground_state_limit ? kFlagGroundStateLimit : 0u;
        row.push_back(lambda);
        row.push_back(t);
        if (config.temperature_mode == TemperatureMode::RatioMin) row.push_back(t / delta_min);
        row.push_back(delta_g > 0.0 ? t / delta_g : kNaN);
        const double fq = qfi_temperature(spectrum, ens);
        row.push_back(fq);
        row.push_back(snr(fq, t));
        for (std::size_t k = 0; k < obs.size(); ++k) {
          const CfiResult fc = cfi(measurements[k], spectrum, ens);
          const EpfResult epf = epf_sensitivity(expectations[k], spectrum, ens);
          if (fc.excluded_outcomes > 0) flags |= kFlagOutcomesExcluded;
          if (epf.insensitive) flags |= kFlagEpfInsensitive;
          row.push_back(fc.value);
          row.push_back(epf.variance);
        }
        for (int n = 1; n <= kReportedGaps; ++n) {
          row.push_back(n < spectrum.dim() ? spectrum.gaps[n] : kNaN);
        }
        row.push_back(flags);
        out.rows.push_back(std::move(row));
      } catch (const Error&) {
        out.rows.push_back(failed_row(t));
      }
    }
  });

  ResultTable table;
  stamp_metadata(table, "sweep");
  stamp_model(table, config.model);
  table.set_meta("config_hash", config_hash_hex(config));
  table.set_meta("temperature_mode", std::string(to_string(config.temperature_mode)));
  if (config.temperature_mode == TemperatureMode::RatioMin) {
    table.set_meta("lambda_c", format_double(lambda_c));
    table.set_meta("delta_min", format_double(delta_min));
  }
  table.set_meta("diagonalizations", std::to_string(diagonalizations.load()));
  table.set_meta("flags", "1=failed 2=ground_state_limit 4=epf_insensitive 8=outcomes_excluded");

  std::vector<std::vector<double>*> cols;
  for (const auto& n : names) cols.push_back(&table.add_column(n));
  for (const auto& point : results) {
    for (const auto& row : point.rows) {
      for (std::size_t c = 0; c < cols.size(); ++c) cols[c]->push_back(row[c]);
    }
  }
  table.check_aligned();
  return table;
}

namespace {

double epsilon_from_x(double x, int size, const ScalingExponents& e, Abscissa form) {
  const double n = size;
  if (form == Abscissa::Linear) return x / std::pow(n, e.x_power());
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x) / n, 1.0 / (e.nu * e.d)), x);
}

}  // namespace

ScalingStudy run_scaling_study(ModelKind kind, const ScalingConfig& config, double zeta_z,
                               const RunOptions& options) {
  if (config.sizes.empty()) fail(ErrorCode::InvalidArgument, "scaling study needs sizes");
  if (config.x_grid.empty()) fail(ErrorCode::InvalidArgument, "scaling study needs an x grid");
  if (!(config.t_over_gap > 0.0)) fail(ErrorCode::InvalidArgument, "t_over_gap must be > 0");
  ScalingStudy study;
  study.kind = kind;
  study.config = config;
  const ScalingExponents exps = config.exponents.value_or(
      kind == ModelKind::Spin1SMA ? ScalingExponents::spin1() : ScalingExponents::xxz());
  validate(exps);
  study.config.exponents = exps;

  const std::size_t ns = config.sizes.size();
  std::vector<ParamHamiltonian> models(ns);
  study.lambda_c.assign(ns, 0.0);
  study.delta_min.assign(ns, 0.0);
  parallel_for(ns, options.threads, [&](std::size_t s) {
    const ModelSpec spec = kind == ModelKind::Spin1SMA ? ModelSpec::spin1(config.sizes[s])
                                                       : ModelSpec::xxz(config.sizes[s], zeta_z);
    models[s] = build_model(spec, options.caps);
    if (kind == ModelKind::Spin1SMA) {
      if (config.critical_grid.size() < 3) {
        fail(ErrorCode::InvalidArgument, "spin-1 scaling needs a critical grid of >= 3 points");
      }
      const CriticalPoint cp = locate_critical_point(models[s], config.critical_grid);
      if (cp.at_boundary) {
        fail(ErrorCode::GridBoundary, "gap minimum for N = " + std::to_string(config.sizes[s]) +
                                          " sits on the critical-grid boundary");
      }
      study.lambda_c[s] = cp.lambda;
      study.delta_min[s] = cp.min_gap;
    } else {
      const Vector e = eigenvalues_hermitian(models[s].at(0.0));
      study.delta_min[s] = e.size() > 1 ? e[1] - e[0] : 0.0;
    }
  });

  const std::size_t nx = config.x_grid.size();
  for (std::size_t s = 0; s < ns; ++s) {
    for (auto* curves : {&study.gap, &study.qfi, &study.snr}) {
      ScalingCurve c;
      c.size = config.sizes[s];
      c.epsilon.resize(nx);
      c.values.resize(nx);
      c.t_over_gap = config.t_over_gap;
      curves->push_back(std::move(c));
    }
    study.gap[s].quantity = ScalingQuantity::Gap;
    study.qfi[s].quantity = ScalingQuantity::Qfi;
    study.snr[s].quantity = ScalingQuantity::Snr;
  }

  parallel_for(ns * nx, options.threads, [&](std::size_t idx) {
    const std::size_t s = idx / nx;
    const std::size_t k = idx % nx;
    const double eps = epsilon_from_x(config.x_grid[k], config.sizes[s], exps, config.gap_abscissa);
    const Spectrum spectrum = eig_hermitian(models[s].at(study.lambda_c[s] + eps));
    const double dg = spectrum.ground_gap();
    if (!(dg > 0.0)) {
      fail(ErrorCode::InvalidArgument, "degenerate ground state at eps = " + format_double(eps) +
                                           " for size " + std::to_string(config.sizes[s]));
    }
    const double t = config.t_over_gap * dg;
    const double fq = qfi_temperature(spectrum, t);
    for (auto* curves : {&study.gap, &study.qfi, &study.snr}) (*curves)[s].epsilon[k] = eps;
    study.gap[s].values[k] = dg;
    study.qfi[s].values[k] = dg * dg * fq;
    study.snr[s].values[k] = snr(fq, t);
  });

  study.gap_collapse = rescale_gap(study.gap, exps, config.gap_abscissa);
  study.qfi_collapse = rescale_qfi(study.qfi, exps, config.qfi_abscissa);
  study.snr_collapse = rescale_snr(study.snr, exps, config.qfi_abscissa);
  return study;
}

ResultTable scaling_table(const ScalingStudy& study) {
  ResultTable table;
  stamp_metadata(table, "scaling");
  table.set_meta("model", std::string(to_string(study.kind)));
  table.set_meta("energy_unit", units_of(study.kind));
  table.set_meta("t_over_gap", format_double(study.config.t_over_gap));
  const ScalingExponents e = *study.config.exponents;
  table.set_meta("exponents", "z=" + format_double(e.z) + " nu=" + format_double(e.nu) +
                                  " d=" + format_double(e.d));
  table.set_meta("gap_abscissa", std::string(to_string(study.config.gap_abscissa)));
  table.set_meta("qfi_abscissa", std::string(to_string(study.config.qfi_abscissa)));
  table.set_meta("residual_gap", format_double(study.gap_collapse.residual));
  table.set_meta("residual_qfi", format_double(study.qfi_collapse.residual));
  table.set_meta("residual_snr", format_double(study.snr_collapse.residual));

  auto& size = table.add_column("size");
  auto& lambda_c = table.add_column("lambda_c");
  auto& eps = table.add_column("epsilon");
  auto& x_gap = table.add_column("x_gap");
  auto& x_qfi = table.add_column("x_qfi");
  auto& gap = table.add_column("delta_g");
  auto& gap_scaled = table.add_column("delta_g_scaled");
  auto& qfi = table.add_column("delta_g2_f_q");
  auto& snr_col = table.add_column("snr");
  for (std::size_t s = 0; s < study.gap.size(); ++s) {
    for (std::size_t k = 0; k < study.gap[s].epsilon.size(); ++k) {
      size.push_back(study.gap[s].size);
      lambda_c.push_back(study.lambda_c[s]);
      eps.push_back(study.gap[s].epsilon[k]);
      x_gap.push_back(study.gap_collapse.rescaled[s].x[k]);
      x_qfi.push_back(study.qfi_collapse.rescaled[s].x[k]);
      gap.push_back(study.gap[s].values[k]);
      gap_scaled.push_back(study.gap_collapse.rescaled[s].y[k]);
      qfi.push_back(study.qfi[s].values[k]);
      snr_col.push_back(study.snr[s].values[k]);
    }
  }
  return table;
}

}  // namespace critherm::harness
