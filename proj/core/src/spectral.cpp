#include "critherm/spectral.hpp"

#include "critherm/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace critherm {

namespace {

void check_hermitian(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    fail(ErrorCode::InvalidArgument, "eigendecomposition needs a non-empty square matrix, got " +
                                         std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = max_asymmetry(h);
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "matrix of dim " << h.rows() << " is not Hermitian: max|H - H^T| = " << asym;
    fail(ErrorCode::NonHermitian, msg.str());
  }
}

void check_solver(Eigen::ComputationInfo info, const Matrix& h) {
  if (info != Eigen::Success) {
    std::ostringstream msg;
    msg << "self-adjoint eigensolver did not converge (dim " << h.rows()
        << ", max|H| = " << h.cwiseAbs().maxCoeff() << ")";
    fail(ErrorCode::SolverFailure, msg.str());
  }
}

}  // namespace

Spectrum eig_hermitian(const Matrix& h) {
  check_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::ComputeEigenvectors);
  check_solver(solver.info(), h);
  Spectrum s;
  s.energies = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  s.gaps = s.energies.array() - s.energies[0];
  return s;
}

Vector eigenvalues_hermitian(const Matrix& h) {
  check_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  check_solver(solver.info(), h);
  return solver.eigenvalues();
}

Spectrum Spectrum::from_levels(std::span<const double> levels) {
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "spectrum needs at least one level");
  std::vector<Index> order(levels.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return levels[a] < levels[b]; });
  const auto dim = static_cast<Index>(levels.size());
  Spectrum s;
  s.energies.resize(dim);
  s.vectors = Matrix::Zero(dim, dim);
  for (Index n = 0; n < dim; ++n) {
    s.energies[n] = levels[order[n]];
    s.vectors(order[n], n) = 1.0;
  }
  s.gaps = s.energies.array() - s.energies[0];
  return s;
}

DegeneracyGrouping group_degenerate(std::span<const double> sorted_energies, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "degeneracy tolerance must be positive");
  DegeneracyGrouping out;
  out.tolerance = tol;
  double first = 0.0;
  for (std::size_t i = 0; i < sorted_energies.size(); ++i) {
    const double e = sorted_energies[i];
    if (out.groups.empty() || e - first > tol) {
      out.groups.emplace_back();
      first = e;
    }
    out.groups.back().push_back(static_cast<Index>(i));
  }
  out.multiplicities.reserve(out.groups.size());
  for (const auto& g : out.groups) out.multiplicities.push_back(static_cast<int>(g.size()));
  return out;
}

DegeneracyGrouping group_degenerate(const Spectrum& spectrum, double tol) {
  return group_degenerate(std::span<const double>(spectrum.energies.data(), spectrum.dim()), tol);
}

double default_degeneracy_tolerance(std::span<const double> energies) {
  double scale = 1.0;
  for (double e : energies) scale = std::max(scale, std::abs(e));
  return 1e-9 * scale;
}

double default_degeneracy_tolerance(const Spectrum& spectrum) {
  return default_degeneracy_tolerance(
      std::span<const double>(spectrum.energies.data(), spectrum.dim()));
}

namespace {

// Vertex of the parabola through three points (x0 < x1 < x2).
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                                          double y2) {
  const double d10 = x1 - x0;
  const double d12 = x1 - x2;
  const double num = d10 * d10 * (y1 - y2) - d12 * d12 * (y1 - y0);
  const double den = d10 * (y1 - y2) - d12 * (y1 - y0);
  if (den == 0.0) return {x1, y1};
  const double xv = x1 - 0.5 * num / den;
  // Lagrange form evaluated at the vertex.
  const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
  return {xv, y0 * l0 + y1 * l1 + y2 * l2};
}

}  // namespace

CriticalPoint locate_minimum(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() < 3 || grid.size() != values.size()) {
    fail(ErrorCode::InvalidArgument, "minimum search needs >= 3 grid points with matching values");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      fail(ErrorCode::InvalidArgument, "grid must be strictly increasing");
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  const auto i = static_cast<std::size_t>(it - values.begin());
  CriticalPoint cp;
  if (i == 0 || i + 1 == grid.size()) {
    cp.lambda = grid[i];
    cp.min_gap = values[i];
    cp.at_boundary = true;
    cp.error_estimate = std::abs(grid[1] - grid[0]);
    return cp;
  }

  const auto [xv, yv] =
      parabola_vertex(grid[i - 1], values[i - 1], grid[i], values[i], grid[i + 1], values[i + 1]);
  cp.lambda = xv;
  cp.min_gap = yv;

  // One-sided fit on the side the vertex leans toward.
  const auto usable = [&](std::size_t j) { return j >= 1 && j + 1 < grid.size(); };
  std::size_t j = xv >= grid[i] ? i + 1 : i - 1;
  if (!usable(j)) j = (j == i + 1) ? i - 1 : i + 1;
  if (usable(j)) {
    const double xa =
        parabola_vertex(grid[j - 1], values[j - 1], grid[j], values[j], grid[j + 1], values[j + 1])
            .first;
    cp.error_estimate = std::abs(xa - xv);
  } else {
    cp.error_estimate = 0.5 * (grid[i + 1] - grid[i - 1]);
  }
  return cp;
}

CriticalPoint locate_critical_point(const ParamHamiltonian& model,
                                    std::span<const double> lambda_grid) {
  if (lambda_grid.size() < 3) {
    fail(ErrorCode::InvalidArgument, "critical point search needs >= 3 grid points");
  }
  if (model.dim() < 2) fail(ErrorCode::InvalidArgument, "gap needs a spectrum of dim >= 2");
  std::vector<double> gaps(lambda_grid.size());
  Matrix h(model.dim(), model.dim());
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    h = model.base + lambda_grid[k] * model.control;
    const Vector e = eigenvalues_hermitian(h);
    gaps[k] = e[1] - e[0];
  }
  return locate_minimum(lambda_grid, gaps);
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) fail(ErrorCode::InvalidArgument, "grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = start + step * i;
  out.back() = stop;
  return out;
}

}  // namespace critherm
