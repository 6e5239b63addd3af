#pragma once

#include "critherm/models.hpp"

#include <span>
#include <vector>

namespace critherm {

/// Full eigendecomposition with energies in ascending order.
struct Spectrum {
  Vector energies;
  /// Orthonormal eigenvectors, column n belongs to energies[n].
  Matrix vectors;
  /// gaps[n] = energies[n] - energies[0].
  Vector gaps;

  Index dim() const { return energies.size(); }
  /// Delta_g = E_1 - E_0 (zero for a one-level spectrum).
  double ground_gap() const { return dim() > 1 ? gaps[1] : 0.0; }

  /// Synthetic spectrum with the given levels and the standard basis as
  /// eigenvectors; levels need not be sorted.
  static Spectrum from_levels(std::span<const double> levels);
};

/// Diagonalizes a real symmetric matrix.
///
/// Throws NonHermitian when max|H - H^T| exceeds 1e-12 * max(1, max|H|) and
/// SolverFailure when the QR iteration does not converge. Within degenerate
/// groups the eigenvector basis is whatever LAPACK-style tridiagonal QR
/// returns; callers must not depend on it.
Spectrum eig_hermitian(const Matrix& h);

/// Eigenvalues only (ascending); same checks as eig_hermitian.
Vector eigenvalues_hermitian(const Matrix& h);

struct DegeneracyGrouping {
  std::vector<std::vector<Index>> groups;
  std::vector<int> multiplicities;
  double tolerance = 0.0;

  std::size_t size() const { return groups.size(); }
};

/// Greedy clustering of ascending energies: a new group starts once a level
/// lies more than tol above the first member of the current group.
DegeneracyGrouping group_degenerate(std::span<const double> sorted_energies, double tol);
DegeneracyGrouping group_degenerate(const Spectrum& spectrum, double tol);

/// 1e-9 * max(1, max|E|)
double default_degeneracy_tolerance(std::span<const double> energies);
double default_degeneracy_tolerance(const Spectrum& spectrum);

struct CriticalPoint {
  double lambda = 0.0;
  double min_gap = 0.0;
  /// Spread between the centred parabola and the neighbouring one-sided fit.
  double error_estimate = 0.0;
  /// The discrete minimum sat on the first or last grid point; lambda and
  /// min_gap are then the raw grid values and the grid must be widened.
  bool at_boundary = false;
};

/// Discrete minimum of sampled values refined by a three-point parabola.
CriticalPoint locate_minimum(std::span<const double> grid, std::span<const double> values);

/// Position and value of the minimum of Delta_g(lambda) over a sorted grid.
CriticalPoint locate_critical_point(const ParamHamiltonian& model,
                                    std::span<const double> lambda_grid);

/// Evenly spaced grid including both end points.
std::vector<double> linspace(double start, double stop, int points);

}  // namespace critherm
