#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace critherm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ModelKind { Spin1SMA, XXZChain };
enum class Boundary { Periodic };

std::string_view to_string(ModelKind kind) noexcept;

/// Parameters of one of the two supported lattice models.
///
/// Energies are stored in rescaled units: the spin-1 condensate in units of
/// the spin-dependent interaction c, the chain in units of the exchange J.
struct ModelSpec {
  ModelKind kind = ModelKind::Spin1SMA;
  /// Atom count N for Spin1SMA, site count M for XXZChain.
  int size = 2;
  /// Ising anisotropy of the chain; ignored for Spin1SMA.
  double zeta_z = 0.0;
  Boundary boundary = Boundary::Periodic;

  static ModelSpec spin1(int atoms) { return {ModelKind::Spin1SMA, atoms, 0.0, Boundary::Periodic}; }
  static ModelSpec xxz(int sites, double zeta_z = 0.0) {
    return {ModelKind::XXZChain, sites, zeta_z, Boundary::Periodic};
  }

  bool operator==(const ModelSpec&) const = default;
};

/// Largest systems the builders accept. The chain cap can be overridden at
/// run time through the CRITHERM_SIZE_CAP environment variable.
struct SizeCaps {
  int spin1_atoms = 2000;
  int xxz_sites = 12;
};

SizeCaps default_size_caps();

/// H(lambda) = base + lambda * control, kept as two matrices so parameter
/// sweeps only pay for an axpy per point.
struct ParamHamiltonian {
  ModelSpec model;
  Matrix base;
  Matrix control;
  std::vector<std::string> basis_labels;
  std::string control_symbol;

  Index dim() const { return base.rows(); }
  Matrix at(double lambda) const { return base + lambda * control; }
};

enum class ObservableLabel { Jperp2, N0, Sx2, Sz2, Energy, Custom };

std::string_view to_string(ObservableLabel label) noexcept;
ObservableLabel parse_observable_label(std::string_view text);

struct ObservableMatrix {
  ObservableLabel label = ObservableLabel::Custom;
  Matrix matrix;
  std::string name;

  Index dim() const { return matrix.rows(); }
};

/// Spin-1 condensate in the single-mode approximation, restricted to the
/// zero-magnetization sector spanned by |k, N-2k, k>, k = 0..N/2.
///
/// base = -J^2/(2N), control = -N_0; the J^2 block is tridiagonal with
///   <k|J^2|k>   = 2[(N-2k)(k+1) + k(N-2k+1)]
///   <k-1|J^2|k> = 2k sqrt((N-2k+1)(N-2k+2))
/// which follows from J^2 = J_- J_+ on states with J_z = 0.
ParamHamiltonian build_spin1_sector(int atoms, const SizeCaps& caps = default_size_caps());

/// Periodic spin-1/2 chain
///   base    = -4 sum_j (s^x_j s^x_{j+1} + s^y_j s^y_{j+1} + zeta_z s^z_j s^z_{j+1})
///   control =  2 sum_j s^x_j
/// in the computational basis. Bit j of a basis index is 0 for spin up.
ParamHamiltonian build_xxz(int sites, double zeta_z, const SizeCaps& caps = default_size_caps());

ParamHamiltonian build_model(const ModelSpec& spec, const SizeCaps& caps = default_size_caps());

/// Builds an observable in the basis used by build_model(spec).
///
/// Inside the zero-magnetization sector J_z vanishes identically, so Jperp2
/// (J^2 - J_z^2) is returned as the J^2 block. Energy needs the control value
/// at which H is assembled.
ObservableMatrix build_observable(const ModelSpec& spec, ObservableLabel label, double lambda = 0.0,
                                  const SizeCaps& caps = default_size_caps());

ObservableMatrix energy_observable(const ParamHamiltonian& model, double lambda);
ObservableMatrix custom_observable(Matrix matrix, std::string name);

/// Total S^x and S^z of the chain; used for symmetry checks and observables.
Matrix xxz_total_sx(int sites);
Matrix xxz_total_sz(int sites);
/// Permutation matrix of the one-site cyclic translation.
Matrix xxz_cyclic_shift(int sites);

/// The whole three-mode Fock space of N spin-1 bosons, built from the
/// single-particle spin matrices by second quantization. It exists to check
/// the sector builder and is limited to small N.
struct Spin1FullSpace {
  int atoms = 0;
  /// (n_{+1}, n_0, n_{-1}) per basis index.
  std::vector<std::array<int, 3>> occupations;
  Eigen::MatrixXcd jx;
  Eigen::MatrixXcd jy;
  Eigen::MatrixXcd jz;
  Matrix j2;
  Matrix n0;
  ParamHamiltonian hamiltonian;
  /// Basis indices with n_{+1} == n_{-1}, ordered by n_{+1}.
  std::vector<Index> zero_magnetization;

  Matrix zero_magnetization_block(const Matrix& full) const;
};

inline constexpr int kSpin1OracleMaxAtoms = 12;

Spin1FullSpace build_spin1_full_oracle(int atoms);

/// max_ij |A_ij - A_ji|
double max_asymmetry(const Matrix& a);

}  // namespace critherm
