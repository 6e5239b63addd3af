#include "critherm/design.hpp"
#include "critherm/error.hpp"
#include "critherm/harness/config.hpp"
#include "critherm/harness/sweep.hpp"
#include "critherm/harness/table.hpp"
#include "critherm/spectral.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace critherm;
using namespace critherm::harness;

namespace {

struct Globals {
  std::string config;
  std::string out;
  std::string format = "csv";
  int threads = 1;
  std::optional<int> size_cap;
};

RunOptions run_options(const Globals& g) {
  RunOptions o;
  o.threads = g.threads;
  if (g.size_cap) o.caps.xxz_sites = *g.size_cap;
  return o;
}

void write(const ResultTable& table, const Globals& g) {
  const OutputFormat fmt = parse_output_format(g.format);
  if (g.out.empty()) {
    if (fmt == OutputFormat::Csv) {
      write_csv(table, std::cout);
    } else {
      write_json(table, std::cout);
    }
    return;
  }
  emit(table, g.out, fmt);
}

ModelSpec model_from(const std::string& kind, int size, double zeta) {
  if (kind == "spin1") return ModelSpec::spin1(size);
  if (kind == "xxz") return ModelSpec::xxz(size, zeta);
  fail(ErrorCode::InvalidArgument, "unknown model '" + kind + "' (spin1 or xxz)");
}

void print_error(const std::string& code, const std::string& message) {
  std::cerr << nlohmann::json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temperature-estimation sensitivity near quantum critical points"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "TOML configuration file");
  app.add_option("--out", g.out, "Output file (directory for reproduce)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--size-cap", g.size_cap, "Largest chain length M")->check(CLI::Range(2, 30));

  std::string model_kind = "spin1";
  int size = 200;
  double zeta = 0.0;
  double lambda = 0.0;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Lowest levels and degeneracies at one control value");
  spectrum_cmd->add_option("--model", model_kind)->check(CLI::IsMember({"spin1", "xxz"}));
  spectrum_cmd->add_option("--size", size);
  spectrum_cmd->add_option("--zeta", zeta);
  spectrum_cmd->add_option("--lambda", lambda);

  auto* sweep_cmd = app.add_subcommand("sweep", "(lambda, T) sweep driven by --config");

  auto* scaling_cmd = app.add_subcommand("scaling", "Finite-size scaling study");
  std::vector<int> sizes;
  double ratio = 0.17;
  scaling_cmd->add_option("--model", model_kind)->check(CLI::IsMember({"spin1", "xxz"}));
  scaling_cmd->add_option("--sizes", sizes);
  scaling_cmd->add_option("--ratio", ratio, "Fixed T / Delta_g");

  auto* gap_cmd = app.add_subcommand("optimal-gap", "Optimal gap and maximal QFI coefficient");
  std::vector<double> ms{1, 2, 5, 10, 100, 1e6};
  gap_cmd->add_option("--m", ms, "Excited-state counts");

  auto* base_cmd = app.add_subcommand("baseline", "QFI of the non-interacting counterpart");
  std::string form = "generic";
  double coupling = 1.0;
  std::vector<double> temps;
  base_cmd->add_option("--form", form)->check(CLI::IsMember({"generic", "spin1", "xxz"}));
  base_cmd->add_option("--coupling", coupling);
  base_cmd->add_option("--temperatures", temps);

  auto* noise_cmd = app.add_subcommand("noise", "Detection-noise discrepancy report");
  int noise_m = 4;
  std::vector<double> sigmas{1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
  noise_cmd->add_option("--m", noise_m);
  noise_cmd->add_option("--sigma-over-t", sigmas);

  auto* repro_cmd = app.add_subcommand("reproduce", "Emit the datasets behind one figure");
  std::string figure;
  repro_cmd->add_option("figure", figure)->required()->check(
      CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage", e.what());
    return 64;
  }

  try {
    const RunOptions opts = run_options(g);
    if (*spectrum_cmd) {
      const ParamHamiltonian h = build_model(model_from(model_kind, size, zeta), opts.caps);
      const Spectrum s = eig_hermitian(h.at(lambda));
      const DegeneracyGrouping groups = group_degenerate(s, default_degeneracy_tolerance(s));
      ResultTable t;
      stamp_metadata(t, "spectrum");
      t.set_meta("model", model_kind);
      t.set_meta("size", std::to_string(size));
      t.set_meta("lambda", format_double(lambda));
      for (std::size_t k = 0; k < groups.size(); ++k) {
        const Index n = groups.groups[k].front();
        t.add_column("level").push_back(static_cast<double>(k));
        t.add_column("energy").push_back(s.energies[n]);
        t.add_column("gap").push_back(s.gaps[n]);
        t.add_column("multiplicity").push_back(groups.multiplicities[k]);
      }
      write(t, g);
    } else if (*sweep_cmd) {
      if (g.config.empty()) fail(ErrorCode::Config, "sweep needs --config");
      const SweepConfig cfg = load_config(g.config);
      Globals out = g;
      if (out.out.empty() && !cfg.output.path.empty()) {
        out.out = cfg.output.path;
        out.format = std::string(to_string(cfg.output.format));
      }
      write(run_sweep(cfg, opts), out);
    } else if (*scaling_cmd) {
      ModelKind kind = model_kind == "xxz" ? ModelKind::XXZChain : ModelKind::Spin1SMA;
      ScalingConfig sc = default_scaling(kind);
      double z = 0.0;
      if (!g.config.empty()) {
        const SweepConfig cfg = load_config(g.config);
        kind = cfg.model.kind;
        z = cfg.model.zeta_z;
        sc = cfg.scaling ? *cfg.scaling : default_scaling(kind);
      }
      if (!sizes.empty()) sc.sizes = sizes;
      if (scaling_cmd->count("--ratio") > 0) sc.t_over_gap = ratio;
      write(scaling_table(run_scaling_study(kind, sc, z, opts)), g);
    } else if (*gap_cmd) {
      ResultTable t;
      stamp_metadata(t, "optimal_gap");
      for (double m : ms) {
        const OptimalDesign d = optimal_gap(m);
        t.add_column("m").push_back(m);
        t.add_column("x_star").push_back(d.x_star);
        t.add_column("chi_max").push_back(d.chi_max);
        t.add_column("relative_residual").push_back(d.relative_residual);
      }
      write(t, g);
    } else if (*base_cmd) {
      const BaselineForm f = parse_baseline_form(form);
      const BaselineEnvelope env = baseline_envelope(f, coupling);
      ResultTable t;
      stamp_metadata(t, "baseline");
      t.set_meta("form", form);
      t.set_meta("coupling", format_double(coupling));
      t.set_meta("t_star", format_double(env.t_star));
      t.set_meta("f_q_infinity", format_double(env.f_max));
      if (temps.empty()) temps = linspace(0.05 * env.t_star, 5.0 * env.t_star, 100);
      for (double temp : temps) {
        t.add_column("T").push_back(temp);
        t.add_column("f_q_baseline").push_back(baseline_qfi(f, coupling, temp));
      }
      write(t, g);
    } else if (*noise_cmd) {
      const NoiseReport r = noise_discrepancy(noise_m, sigmas);
      ResultTable t;
      stamp_metadata(t, "detection_noise");
      t.set_meta("m", std::to_string(noise_m));
      t.set_meta("noiseless_t2_f", format_double(r.noiseless));
      t.set_meta("numeric_monotone", r.numeric_monotone ? "true" : "false");
      t.set_meta("max_rel_dev_printed", format_double(r.max_rel_dev_printed));
      t.set_meta("max_rel_dev_reciprocal", format_double(r.max_rel_dev_reciprocal));
      for (const auto& row : r.rows) {
        t.add_column("sigma_over_t").push_back(row.sigma_over_t);
        t.add_column("t2_f_numeric").push_back(row.numeric);
        t.add_column("t2_f_printed").push_back(row.printed);
        t.add_column("t2_f_reciprocal").push_back(row.reciprocal);
      }
      write(t, g);
    } else if (*repro_cmd) {
      FigureOptions fo;
      fo.run = opts;
      const fs::path dir = g.out.empty() ? fs::path("figures") : fs::path(g.out);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) fail(ErrorCode::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
      const OutputFormat fmt = parse_output_format(g.format);
      for (const auto& nt : reproduce_figure(parse_figure_id(figure), fo)) {
        const fs::path path = dir / (nt.name + (fmt == OutputFormat::Csv ? ".csv" : ".json"));
        emit(nt.table, path, fmt);
        std::cout << path.string() << "\n";
      }
    }
  } catch (const Error& e) {
    print_error(std::string(to_string(e.code())), e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 3;
  }
  return 0;
}
