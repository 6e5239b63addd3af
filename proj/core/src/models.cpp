#include "critherm/models.hpp"

#include "critherm/error.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace critherm {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Spin1SMA:
      return "spin1";
    case ModelKind::XXZChain:
      return "xxz";
  }
  return "unknown";
}

std::string_view to_string(ObservableLabel label) noexcept {
  switch (label) {
    case ObservableLabel::Jperp2:
      return "Jperp2";
    case ObservableLabel::N0:
      return "N0";
    case ObservableLabel::Sx2:
      return "Sx2";
    case ObservableLabel::Sz2:
      return "Sz2";
    case ObservableLabel::Energy:
      return "Energy";
    case ObservableLabel::Custom:
      return "Custom";
  }
  return "Custom";
}

ObservableLabel parse_observable_label(std::string_view text) {
  for (auto label : {ObservableLabel::Jperp2, ObservableLabel::N0, ObservableLabel::Sx2,
                     ObservableLabel::Sz2, ObservableLabel::Energy}) {
    if (text == to_string(label)) return label;
  }
  fail(ErrorCode::InvalidArgument, "unknown observable label '" + std::string(text) + "'");
}

SizeCaps default_size_caps() {
  SizeCaps caps;
  if (const char* env = std::getenv("CRITHERM_SIZE_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 2 || value > 30) {
      fail(ErrorCode::InvalidArgument,
           "CRITHERM_SIZE_CAP must be an integer in [2, 30], got '" + std::string(env) + "'");
    }
    caps.xxz_sites = static_cast<int>(value);
  }
  return caps;
}

ParamHamiltonian build_spin1_sector(int atoms, const SizeCaps& caps) {
  if (atoms < 2 || atoms % 2 != 0) {
    fail(ErrorCode::InvalidArgument,
         "spin-1 sector needs an even atom count N >= 2, got N = " + std::to_string(atoms));
  }
  if (atoms > caps.spin1_atoms) {
    fail(ErrorCode::SizeCapExceeded, "spin-1 atom count N = " + std::to_string(atoms) +
                                         " exceeds the size cap " +
                                         std::to_string(caps.spin1_atoms) + " (dim N/2+1 = " +
                                         std::to_string(atoms / 2 + 1) + ")");
  }

  const int dim = atoms / 2 + 1;
  const double n = atoms;
  ParamHamiltonian h;
  h.model = ModelSpec::spin1(atoms);
  h.base = Matrix::Zero(dim, dim);
  h.control = Matrix::Zero(dim, dim);
  h.control_symbol = "q";
  h.basis_labels.reserve(dim);

  const double scale = -1.0 / (2.0 * n);
  for (int k = 0; k < dim; ++k) {
    const double n0 = atoms - 2 * k;
    h.base(k, k) = scale * 2.0 * (n0 * (k + 1) + k * (n0 + 1));
    if (k > 0) {
      const double off = scale * 2.0 * k * std::sqrt((n0 + 1.0) * (n0 + 2.0));
      h.base(k - 1, k) = off;
      h.base(k, k - 1) = off;
    }
    h.control(k, k) = -n0;
    h.basis_labels.push_back("(" + std::to_string(k) + "," + std::to_string(atoms - 2 * k) + "," +
                             std::to_string(k) + ")");
  }
  return h;
}

namespace {

void check_chain_size(int sites, const SizeCaps& caps) {
  if (sites < 2) {
    fail(ErrorCode::InvalidArgument, "chain needs M >= 2 sites, got M = " + std::to_string(sites));
  }
  if (sites > caps.xxz_sites) {
    fail(ErrorCode::SizeCapExceeded, "chain site count M = " + std::to_string(sites) +
                                         " exceeds the size cap " + std::to_string(caps.xxz_sites) +
                                         " (dim 2^M); raise it with --size-cap or CRITHERM_SIZE_CAP");
  }
}

double site_sz(Index state, int site) { return ((state >> site) & 1) ? -0.5 : 0.5; }

}  // namespace

ParamHamiltonian build_xxz(int sites, double zeta_z, const SizeCaps& caps) {
  check_chain_size(sites, caps);
  const Index dim = Index{1} << sites;

  ParamHamiltonian h;
  h.model = ModelSpec::xxz(sites, zeta_z);
  h.base = Matrix::Zero(dim, dim);
  h.control = Matrix::Zero(dim, dim);
  h.control_symbol = "h_x";
  h.basis_labels.reserve(dim);

  for (Index state = 0; state < dim; ++state) {
    for (int j = 0; j < sites; ++j) {
      const int k = (j + 1) % sites;
      const double zj = site_sz(state, j);
      const double zk = site_sz(state, k);
      h.base(state, state) += -4.0 * zeta_z * zj * zk;
      // s^x s^x + s^y s^y = (s^+ s^- + s^- s^+)/2 flips an antiparallel pair.
      if (zj != zk) {
        const Index flipped = state ^ ((Index{1} << j) | (Index{1} << k));
        h.base(flipped, state) += -4.0 * 0.5;
      }
      h.control(state ^ (Index{1} << j), state) += 2.0 * 0.5;
    }
    std::string label(sites, 'u');
    for (int j = 0; j < sites; ++j) {
      if ((state >> j) & 1) label[j] = 'd';
    }
    h.basis_labels.push_back(std::move(label));
  }
  return h;
}

ParamHamiltonian build_model(const ModelSpec& spec, const SizeCaps& caps) {
  switch (spec.kind) {
    case ModelKind::Spin1SMA:
      return build_spin1_sector(spec.size, caps);
    case ModelKind::XXZChain:
      return build_xxz(spec.size, spec.zeta_z, caps);
  }
  fail(ErrorCode::InvalidArgument, "unknown model kind");
}

Matrix xxz_total_sx(int sites) {
  const Index dim = Index{1} << sites;
  Matrix sx = Matrix::Zero(dim, dim);
  for (Index state = 0; state < dim; ++state) {
    for (int j = 0; j < sites; ++j) sx(state ^ (Index{1} << j), state) += 0.5;
  }
  return sx;
}

Matrix xxz_total_sz(int sites) {
  const Index dim = Index{1} << sites;
  Matrix sz = Matrix::Zero(dim, dim);
  for (Index state = 0; state < dim; ++state) {
    double m = 0.0;
    for (int j = 0; j < sites; ++j) m += site_sz(state, j);
    sz(state, state) = m;
  }
  return sz;
}

Matrix xxz_cyclic_shift(int sites) {
  const Index dim = Index{1} << sites;
  Matrix shift = Matrix::Zero(dim, dim);
  for (Index state = 0; state < dim; ++state) {
    Index moved = 0;
    for (int j = 0; j < sites; ++j) {
      if ((state >> j) & 1) moved |= Index{1} << ((j + 1) % sites);
    }
    shift(moved, state) = 1.0;
  }
  return shift;
}

ObservableMatrix energy_observable(const ParamHamiltonian& model, double lambda) {
  return {ObservableLabel::Energy, model.at(lambda), "Energy"};
}

ObservableMatrix custom_observable(Matrix matrix, std::string name) {
  if (matrix.rows() != matrix.cols()) {
    fail(ErrorCode::InvalidArgument, "observable '" + name + "' is not square");
  }
  return {ObservableLabel::Custom, std::move(matrix), std::move(name)};
}

ObservableMatrix build_observable(const ModelSpec& spec, ObservableLabel label, double lambda,
                                  const SizeCaps& caps) {
  const auto incompatible = [&] {
    fail(ErrorCode::InvalidArgument, "observable " + std::string(to_string(label)) +
                                         " is not defined for model " +
                                         std::string(to_string(spec.kind)));
  };
  const std::string name(to_string(label));

  if (label == ObservableLabel::Energy) return energy_observable(build_model(spec, caps), lambda);
  if (label == ObservableLabel::Custom) incompatible();

  if (spec.kind == ModelKind::Spin1SMA) {
    if (label != ObservableLabel::Jperp2 && label != ObservableLabel::N0) incompatible();
    const ParamHamiltonian h = build_spin1_sector(spec.size, caps);
    if (label == ObservableLabel::N0) return {label, -h.control, name};
    // base = -J^2/(2N); J_z = 0 in this sector.
    return {label, -2.0 * spec.size * h.base, name};
  }

  if (label != ObservableLabel::Sx2 && label != ObservableLabel::Sz2) incompatible();
  check_chain_size(spec.size, caps);
  if (label == ObservableLabel::Sz2) {
    Matrix sz = xxz_total_sz(spec.size);
    sz.diagonal() = sz.diagonal().array().square();
    return {label, std::move(sz), name};
  }
  const Matrix sx = xxz_total_sx(spec.size);
  return {label, sx * sx, name};
}

double max_asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace critherm
