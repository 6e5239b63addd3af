#include "critherm/harness/config.hpp"

#include "critherm/error.hpp"
#include "critherm/harness/table.hpp"
#include "critherm/spectral.hpp"

#include <nlohmann/json.hpp>
#include <toml.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace critherm::harness {

std::string_view to_string(TemperatureMode mode) noexcept {
  switch (mode) {
    case TemperatureMode::Absolute:
      return "absolute";
    case TemperatureMode::RatioMin:
      return "ratio_min";
    case TemperatureMode::RatioGap:
      return "ratio_gap";
  }
  return "absolute";
}

TemperatureMode parse_temperature_mode(std::string_view text) {
  for (auto m : {TemperatureMode::Absolute, TemperatureMode::RatioMin, TemperatureMode::RatioGap}) {
    if (text == to_string(m)) return m;
  }
  fail(ErrorCode::Config, "unknown temperature mode '" + std::string(text) +
                              "' (expected absolute, ratio_min or ratio_gap)");
}

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  fail(ErrorCode::Config, "unknown output format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::Config, path + ": " + what);
}

void reject_unknown(const toml::table& table, const std::string& prefix,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, node] : table) {
    (void)node;
    if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end()) {
      config_error(prefix.empty() ? std::string(key.str()) : prefix + "." + std::string(key.str()),
                   "unknown key");
    }
  }
}

const toml::table* section(const toml::table& root, std::string_view name, bool required) {
  const toml::node* node = root.get(name);
  if (node == nullptr) {
    if (required) config_error(std::string(name), "missing section");
    return nullptr;
  }
  if (!node->is_table()) config_error(std::string(name), "must be a table");
  return node->as_table();
}

double as_number(const toml::node& node, const std::string& path) {
  if (auto v = node.value<double>(); v && (node.is_floating_point() || node.is_integer())) {
    return *v;
  }
  config_error(path, "must be a number");
}

int as_int(const toml::node& node, const std::string& path) {
  if (!node.is_integer()) config_error(path, "must be an integer");
  return static_cast<int>(node.as_integer()->get());
}

std::string as_string(const toml::node& node, const std::string& path) {
  if (!node.is_string()) config_error(path, "must be a string");
  return node.as_string()->get();
}

std::vector<double> as_grid(const toml::node& node, const std::string& path) {
  std::vector<double> out;
  if (const auto* arr = node.as_array()) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      out.push_back(as_number(*arr->get(i), path + "[" + std::to_string(i) + "]"));
    }
  } else if (const auto* tbl = node.as_table()) {
    reject_unknown(*tbl, path, {"start", "stop", "points"});
    for (const char* key : {"start", "stop", "points"}) {
      if (!tbl->contains(key)) config_error(path + "." + key, "missing key");
    }
    const int points = as_int(*tbl->get("points"), path + ".points");
    if (points < 1) config_error(path + ".points", "must be >= 1");
    out = linspace(as_number(*tbl->get("start"), path + ".start"),
                   as_number(*tbl->get("stop"), path + ".stop"), points);
  } else {
    config_error(path, "must be a list of numbers or a {start, stop, points} table");
  }
  if (out.empty()) config_error(path, "grid must not be empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) config_error(path, "grid must be strictly increasing");
  }
  return out;
}

template <class F>
void with_key(const toml::table& t, const std::string& prefix, std::string_view key, F&& fn) {
  if (const toml::node* node = t.get(key)) fn(*node, prefix + "." + std::string(key));
}

ScalingExponents parse_exponents(const toml::node& node, const std::string& path) {
  const auto* t = node.as_table();
  if (t == nullptr) config_error(path, "must be a {z, nu, d} table");
  reject_unknown(*t, path, {"z", "nu", "d"});
  ScalingExponents e;
  for (const char* key : {"z", "nu", "d"}) {
    if (!t->contains(key)) config_error(path + "." + key, "missing key");
  }
  e.z = as_number(*t->get("z"), path + ".z");
  e.nu = as_number(*t->get("nu"), path + ".nu");
  e.d = as_number(*t->get("d"), path + ".d");
  if (!(e.z > 0.0) || !(e.nu > 0.0) || !(e.d > 0.0)) config_error(path, "exponents must be > 0");
  return e;
}

Abscissa parse_abscissa(const toml::node& node, const std::string& path) {
  const std::string s = as_string(node, path);
  if (s == "linear") return Abscissa::Linear;
  if (s == "caption") return Abscissa::Caption;
  config_error(path, "expected 'linear' or 'caption'");
}

SweepConfig from_table(const toml::table& root) {
  reject_unknown(root, "", {"model", "sweep", "scaling", "output"});
  SweepConfig cfg;

  const toml::table& model = *section(root, "model", true);
  reject_unknown(model, "model", {"kind", "size", "zeta_z", "boundary"});
  if (!model.contains("kind")) config_error("model.kind", "missing key");
  if (!model.contains("size")) config_error("model.size", "missing key");
  const std::string kind = as_string(*model.get("kind"), "model.kind");
  if (kind == "spin1") {
    cfg.model.kind = ModelKind::Spin1SMA;
  } else if (kind == "xxz") {
    cfg.model.kind = ModelKind::XXZChain;
  } else {
    config_error("model.kind", "expected 'spin1' or 'xxz', got '" + kind + "'");
  }
  cfg.model.size = as_int(*model.get("size"), "model.size");
  with_key(model, "model", "zeta_z",
           [&](const toml::node& n, const std::string& p) { cfg.model.zeta_z = as_number(n, p); });
  with_key(model, "model", "boundary", [&](const toml::node& n, const std::string& p) {
    if (as_string(n, p) != "periodic") config_error(p, "only 'periodic' is supported");
  });
  if (cfg.model.kind == ModelKind::Spin1SMA && cfg.model.zeta_z != 0.0) {
    config_error("model.zeta_z", "only applies to the xxz model");
  }

  if (const toml::table* sweep = section(root, "sweep", false)) {
    reject_unknown(*sweep, "sweep",
                   {"lambda", "temperature_mode", "temperatures", "observables", "critical_grid"});
    with_key(*sweep, "sweep", "lambda", [&](const toml::node& n, const std::string& p) {
      cfg.lambda_grid = as_grid(n, p);
    });
    with_key(*sweep, "sweep", "temperature_mode", [&](const toml::node& n, const std::string& p) {
      try {
        cfg.temperature_mode = parse_temperature_mode(as_string(n, p));
      } catch (const Error& e) {
        config_error(p, e.what());
      }
    });
    with_key(*sweep, "sweep", "temperatures", [&](const toml::node& n, const std::string& p) {
      cfg.temperatures = as_grid(n, p);
    });
    with_key(*sweep, "sweep", "critical_grid", [&](const toml::node& n, const std::string& p) {
      cfg.critical_grid = as_grid(n, p);
    });
    with_key(*sweep, "sweep", "observables", [&](const toml::node& n, const std::string& p) {
      const auto* arr = n.as_array();
      if (arr == nullptr) config_error(p, "must be a list of labels");
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const std::string ip = p + "[" + std::to_string(i) + "]";
        try {
          cfg.observables.push_back(parse_observable_label(as_string(*arr->get(i), ip)));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::Config) throw;
          config_error(ip, e.what());
        }
      }
    });
  }

  if (const toml::table* sc = section(root, "scaling", false)) {
    reject_unknown(*sc, "scaling",
                   {"sizes", "t_over_gap", "x", "exponents", "gap_abscissa", "qfi_abscissa",
                    "critical_grid"});
    ScalingConfig s = default_scaling(cfg.model.kind);
    with_key(*sc, "scaling", "sizes", [&](const toml::node& n, const std::string& p) {
      const auto* arr = n.as_array();
      if (arr == nullptr || arr->empty()) config_error(p, "must be a non-empty list of integers");
      s.sizes.clear();
      for (std::size_t i = 0; i < arr->size(); ++i) {
        s.sizes.push_back(as_int(*arr->get(i), p + "[" + std::to_string(i) + "]"));
      }
    });
    with_key(*sc, "scaling", "t_over_gap", [&](const toml::node& n, const std::string& p) {
      s.t_over_gap = as_number(n, p);
      if (!(s.t_over_gap > 0.0)) config_error(p, "must be > 0");
    });
    with_key(*sc, "scaling", "x",
             [&](const toml::node& n, const std::string& p) { s.x_grid = as_grid(n, p); });
    with_key(*sc, "scaling", "exponents",
             [&](const toml::node& n, const std::string& p) { s.exponents = parse_exponents(n, p); });
    with_key(*sc, "scaling", "gap_abscissa", [&](const toml::node& n, const std::string& p) {
      s.gap_abscissa = parse_abscissa(n, p);
    });
    with_key(*sc, "scaling", "qfi_abscissa", [&](const toml::node& n, const std::string& p) {
      s.qfi_abscissa = parse_abscissa(n, p);
    });
    with_key(*sc, "scaling", "critical_grid",
             [&](const toml::node& n, const std::string& p) { s.critical_grid = as_grid(n, p); });
    cfg.scaling = std::move(s);
  }

  if (const toml::table* out = section(root, "output", false)) {
    reject_unknown(*out, "output", {"path", "format"});
    with_key(*out, "output", "path",
             [&](const toml::node& n, const std::string& p) { cfg.output.path = as_string(n, p); });
    with_key(*out, "output", "format", [&](const toml::node& n, const std::string& p) {
      try {
        cfg.output.format = parse_output_format(as_string(n, p));
      } catch (const Error& e) {
        config_error(p, e.what());
      }
    });
  }
  return cfg;
}

}  // namespace

SweepConfig parse_config(std::string_view toml_text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
        << e.description();
    fail(ErrorCode::Config, msg.str());
  }
  SweepConfig cfg = from_table(root);
  validate(cfg);
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

void validate(const SweepConfig& config) {
  const ModelSpec& m = config.model;
  if (m.kind == ModelKind::Spin1SMA && (m.size < 2 || m.size % 2 != 0)) {
    config_error("model.size", "spin1 needs an even atom count >= 2");
  }
  if (m.kind == ModelKind::XXZChain && m.size < 2) config_error("model.size", "xxz needs >= 2 sites");
  for (ObservableLabel label : config.observables) {
    const bool spin1_label = label == ObservableLabel::Jperp2 || label == ObservableLabel::N0;
    const bool xxz_label = label == ObservableLabel::Sx2 || label == ObservableLabel::Sz2;
    if ((m.kind == ModelKind::Spin1SMA && xxz_label) ||
        (m.kind == ModelKind::XXZChain && spin1_label) || label == ObservableLabel::Custom) {
      config_error("sweep.observables", "observable " + std::string(to_string(label)) +
                                            " is not defined for model " +
                                            std::string(to_string(m.kind)));
    }
  }
  for (std::size_t i = 0; i < config.observables.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (config.observables[i] == config.observables[j]) {
        config_error("sweep.observables", "duplicate observable " +
                                              std::string(to_string(config.observables[i])));
      }
    }
  }
  for (double t : config.temperatures) {
    if (!(t > 0.0)) config_error("sweep.temperatures", "temperatures must be > 0");
  }
  if (config.temperature_mode == TemperatureMode::RatioMin) {
    const auto& grid = config.critical_grid.empty() ? config.lambda_grid : config.critical_grid;
    if (grid.size() < 3) {
      config_error("sweep.critical_grid", "ratio_min needs >= 3 grid points to resolve Delta_min");
    }
  }
  if (config.scaling) {
    for (int s : config.scaling->sizes) {
      if (m.kind == ModelKind::Spin1SMA && (s < 2 || s % 2 != 0)) {
        config_error("scaling.sizes", "spin1 sizes must be even and >= 2");
      }
      if (m.kind == ModelKind::XXZChain && s < 2) config_error("scaling.sizes", "sizes must be >= 2");
    }
  }
}

namespace {

nlohmann::json grid_json(const std::vector<double>& grid) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : grid) arr.push_back(format_double(v));
  return arr;
}

}  // namespace

std::string canonical_json(const SweepConfig& c) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  nlohmann::json j;
  j["model"] = {{"kind", std::string(to_string(c.model.kind))},
                {"size", c.model.size},
                {"zeta_z", format_double(c.model.zeta_z)},
                {"boundary", "periodic"}};
  nlohmann::json obs = nlohmann::json::array();
  for (auto l : c.observables) obs.push_back(std::string(to_string(l)));
  j["sweep"] = {{"lambda", grid_json(c.lambda_grid)},
                {"temperature_mode", std::string(to_string(c.temperature_mode))},
                {"temperatures", grid_json(c.temperatures)},
                {"observables", obs},
                {"critical_grid", grid_json(c.critical_grid)}};
  if (c.scaling) {
    const ScalingConfig& s = *c.scaling;
    nlohmann::json sc = {{"sizes", s.sizes},
                         {"t_over_gap", format_double(s.t_over_gap)},
                         {"x", grid_json(s.x_grid)},
                         {"gap_abscissa", std::string(to_string(s.gap_abscissa))},
                         {"qfi_abscissa", std::string(to_string(s.qfi_abscissa))},
                         {"critical_grid", grid_json(s.critical_grid)}};
    if (s.exponents) {
      sc["exponents"] = {{"z", format_double(s.exponents->z)},
                         {"nu", format_double(s.exponents->nu)},
                         {"d", format_double(s.exponents->d)}};
    } else {
      sc["exponents"] = nullptr;
    }
    j["scaling"] = sc;
  } else {
    j["scaling"] = nullptr;
  }
  j["output"] = {{"path", c.output.path}, {"format", std::string(to_string(c.output.format))}};
  return j.dump();
}

std::uint64_t config_hash(const SweepConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash_hex(const SweepConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(config)));
  return buf;
}

ScalingConfig default_scaling(ModelKind kind) {
  ScalingConfig s;
  if (kind == ModelKind::Spin1SMA) {
    s.sizes = {100, 200, 400, 800};
    s.exponents = ScalingExponents::spin1();
    s.x_grid = linspace(-3.0, 3.0, 61);
    s.critical_grid = linspace(-2.4, -1.2, 121);
  } else {
    s.sizes = {4, 6, 8};
    s.exponents = ScalingExponents::xxz();
    s.x_grid = linspace(-3.0, 3.0, 61);
    s.qfi_abscissa = Abscissa::Caption;
  }
  return s;
}

}  // namespace critherm::harness
