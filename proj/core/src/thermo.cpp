#include "critherm/thermo.hpp"

#include "critherm/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace critherm {

namespace {

void check_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    fail(ErrorCode::InvalidArgument,
         "temperature must be positive and finite, got " + std::to_string(temperature));
  }
}

void check_dims(const Spectrum& spectrum, const ObservableMatrix& observable) {
  if (observable.dim() != spectrum.dim() || observable.matrix.cols() != spectrum.dim()) {
    fail(ErrorCode::InvalidArgument, "observable '" + observable.name + "' has dim " +
                                         std::to_string(observable.dim()) +
                                         " but the spectrum has dim " +
                                         std::to_string(spectrum.dim()));
  }
}

}  // namespace

GibbsEnsemble gibbs(const Spectrum& spectrum, double temperature) {
  check_temperature(temperature);
  GibbsEnsemble g;
  g.temperature = temperature;
  // std::exp per entry: Eigen's vectorized exp clamps large negative
  // arguments instead of underflowing to zero.
  g.weights = spectrum.gaps.unaryExpr([temperature](double d) { return std::exp(-d / temperature); });
  g.partition = g.weights.sum();
  g.weights /= g.partition;

  double excited = 0.0;
  bool has_excited = false;
  for (Index n = 0; n < spectrum.dim(); ++n) {
    if (spectrum.gaps[n] > 0.0) {
      has_excited = true;
      excited += g.weights[n];
    }
  }
  g.ground_state_limit = has_excited && excited == 0.0;
  return g;
}

double mean_energy(const Spectrum& spectrum, const GibbsEnsemble& ensemble) {
  return ensemble.weights.dot(spectrum.gaps);
}

double energy_variance(const Spectrum& spectrum, const GibbsEnsemble& ensemble) {
  const double mean = mean_energy(spectrum, ensemble);
  return ensemble.weights.dot((spectrum.gaps.array() - mean).square().matrix());
}

double qfi_temperature(const Spectrum& spectrum, const GibbsEnsemble& ensemble) {
  const double t2 = ensemble.temperature * ensemble.temperature;
  return energy_variance(spectrum, ensemble) / (t2 * t2);
}

double qfi_temperature(const Spectrum& spectrum, double temperature) {
  return qfi_temperature(spectrum, gibbs(spectrum, temperature));
}

Measurement make_measurement(const Spectrum& spectrum, const ObservableMatrix& observable,
                             double tol) {
  check_dims(spectrum, observable);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(observable.matrix, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::SolverFailure, "eigensolver failed on observable '" + observable.name + "'");
  }
  const Vector& values = solver.eigenvalues();
  const std::span<const double> view(values.data(), values.size());
  const double group_tol = tol > 0.0 ? tol : default_degeneracy_tolerance(view);
  const DegeneracyGrouping groups = group_degenerate(view, group_tol);

  const Matrix amplitudes = (solver.eigenvectors().transpose() * spectrum.vectors).cwiseAbs2();
  Measurement m;
  m.overlap = Matrix::Zero(static_cast<Index>(groups.size()), spectrum.dim());
  m.outcome_values.resize(static_cast<Index>(groups.size()));
  m.multiplicities = groups.multiplicities;
  for (std::size_t alpha = 0; alpha < groups.size(); ++alpha) {
    const auto row = static_cast<Index>(alpha);
    m.outcome_values[row] = values[groups.groups[alpha].front()];
    for (Index a : groups.groups[alpha]) m.overlap.row(row) += amplitudes.row(a);
  }
  return m;
}

CfiResult cfi_from_distribution(const Vector& probabilities, const Vector& derivatives,
                                double floor) {
  if (probabilities.size() != derivatives.size()) {
    fail(ErrorCode::InvalidArgument, "probability and derivative vectors differ in length");
  }
  CfiResult r;
  for (Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (p > floor) {
      r.value += derivatives[i] * derivatives[i] / p;
    } else {
      ++r.excluded_outcomes;
      r.excluded_mass += std::max(p, 0.0);
    }
  }
  return r;
}

Vector outcome_probabilities(const Measurement& m, const GibbsEnsemble& ensemble) {
  return m.overlap * ensemble.weights;
}

Vector outcome_derivatives(const Measurement& m, const Spectrum& spectrum,
                           const GibbsEnsemble& ensemble) {
  const double mean = mean_energy(spectrum, ensemble);
  const double t2 = ensemble.temperature * ensemble.temperature;
  const Vector weighted =
      (ensemble.weights.array() * (spectrum.gaps.array() - mean)).matrix() / t2;
  return m.overlap * weighted;
}

CfiResult cfi(const Measurement& m, const Spectrum& spectrum, const GibbsEnsemble& ensemble,
              double floor) {
  return cfi_from_distribution(outcome_probabilities(m, ensemble),
                               outcome_derivatives(m, spectrum, ensemble), floor);
}

CfiResult cfi_observable(const Spectrum& spectrum, const ObservableMatrix& observable,
                         double temperature, double tol, double floor) {
  const GibbsEnsemble ensemble = gibbs(spectrum, temperature);
  return cfi(make_measurement(spectrum, observable, tol), spectrum, ensemble, floor);
}

ExpectationTable make_expectations(const Spectrum& spectrum, const ObservableMatrix& observable) {
  check_dims(spectrum, observable);
  const Matrix applied = observable.matrix * spectrum.vectors;
  ExpectationTable t;
  t.a = (spectrum.vectors.array() * applied.array()).colwise().sum().transpose();
  t.a2 = applied.colwise().squaredNorm().transpose();
  return t;
}

EpfResult epf_sensitivity(const ExpectationTable& table, const Spectrum& spectrum,
                          const GibbsEnsemble& ensemble) {
  const Vector& p = ensemble.weights;
  const double t2 = ensemble.temperature * ensemble.temperature;
  EpfResult r;
  r.mean = p.dot(table.a);
  r.observable_variance = std::max(0.0, p.dot(table.a2) - r.mean * r.mean);

  const double mean_gap = mean_energy(spectrum, ensemble);
  const Vector centred_a = table.a.array() - r.mean;
  const Vector centred_e = spectrum.gaps.array() - mean_gap;
  const double cov = p.dot((centred_a.array() * centred_e.array()).matrix());
  r.mean_derivative = cov / t2;

  const double var_h = energy_variance(spectrum, ensemble);
  const double bound = std::sqrt(r.observable_variance * var_h);
  if (!(std::abs(cov) > 1e-12 * bound) || r.observable_variance == 0.0) {
    r.insensitive = true;
    r.variance = std::numeric_limits<double>::infinity();
    return r;
  }
  r.variance = r.observable_variance / (r.mean_derivative * r.mean_derivative);
  return r;
}

EpfResult epf_sensitivity(const Spectrum& spectrum, const ObservableMatrix& observable,
                          double temperature) {
  return epf_sensitivity(make_expectations(spectrum, observable), spectrum,
                         gibbs(spectrum, temperature));
}

double snr(double f_q, double temperature) {
  if (f_q < 0.0) fail(ErrorCode::InvalidArgument, "QFI must be non-negative");
  check_temperature(temperature);
  return std::sqrt(f_q) * temperature;
}

double two_level_qfi(double delta_g, double temperature, double g0, double g1) {
  if (!(delta_g > 0.0)) fail(ErrorCode::InvalidArgument, "two-level gap must be positive");
  check_temperature(temperature);
  if (!(g0 >= 1.0) || !(g1 >= 1.0)) {
    fail(ErrorCode::InvalidArgument, "multiplicities must be >= 1");
  }
  // Factor e^{Delta/2T} out of the bracket so low T cannot overflow.
  const double ratio = delta_g / temperature;
  const double tail = std::exp(-ratio);
  const double bracket = g0 + g1 * tail;
  return g0 * g1 * std::pow(ratio, 4) * tail / (bracket * bracket) / (delta_g * delta_g);
}

}  // namespace critherm
