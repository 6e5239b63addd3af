#pragma once

#include "critherm/models.hpp"
#include "critherm/spectral.hpp"

#include <map>
#include <string>

namespace critherm {

/// Outcomes whose probability falls below this floor are left out of CFI sums.
inline constexpr double kProbabilityFloor = 1e-14;

/// Canonical ensemble over a spectrum, with Boltzmann factors taken relative
/// to the ground energy (k_B = 1).
struct GibbsEnsemble {
  double temperature = 0.0;
  /// p_n = exp(-Delta_n / T) / Z
  Vector weights;
  /// Z = sum_n exp(-Delta_n / T)
  double partition = 0.0;
  /// Every excited Boltzmann factor underflowed; the state is the ground
  /// manifold alone.
  bool ground_state_limit = false;
};

GibbsEnsemble gibbs(const Spectrum& spectrum, double temperature);

/// <Delta> and Var(H) under the ensemble (shift invariant).
double mean_energy(const Spectrum& spectrum, const GibbsEnsemble& ensemble);
double energy_variance(const Spectrum& spectrum, const GibbsEnsemble& ensemble);

/// F_Q = Var(H) / T^4, the quantum Fisher information for temperature.
double qfi_temperature(const Spectrum& spectrum, const GibbsEnsemble& ensemble);
double qfi_temperature(const Spectrum& spectrum, double temperature);

/// Projective measurement of an observable expressed against an energy
/// eigenbasis: overlap(alpha, n) = sum_{a in alpha} |<a|psi_n>|^2, where the
/// outcomes alpha are the eigenvalue groups of the observable. Summing over
/// whole eigenspaces makes the result independent of the basis chosen inside
/// degenerate groups.
struct Measurement {
  Matrix overlap;
  /// Representative (lowest) eigenvalue of each outcome.
  Vector outcome_values;
  std::vector<int> multiplicities;

  Index outcomes() const { return overlap.rows(); }
};

/// tol <= 0 selects default_degeneracy_tolerance over the observable's
/// eigenvalues.
Measurement make_measurement(const Spectrum& spectrum, const ObservableMatrix& observable,
                             double tol = 0.0);

struct CfiResult {
  double value = 0.0;
  int excluded_outcomes = 0;
  double excluded_mass = 0.0;
};

/// F_c = sum_alpha (dp_alpha/dT)^2 / p_alpha over outcomes with p > floor.
CfiResult cfi_from_distribution(const Vector& probabilities, const Vector& derivatives,
                                double floor = kProbabilityFloor);

/// Outcome probabilities and their exact temperature derivatives:
/// dp_alpha/dT = T^-2 sum_n p_n (Delta_n - <Delta>) overlap(alpha, n).
Vector outcome_probabilities(const Measurement& m, const GibbsEnsemble& ensemble);
Vector outcome_derivatives(const Measurement& m, const Spectrum& spectrum,
                           const GibbsEnsemble& ensemble);

CfiResult cfi(const Measurement& m, const Spectrum& spectrum, const GibbsEnsemble& ensemble,
              double floor = kProbabilityFloor);

CfiResult cfi_observable(const Spectrum& spectrum, const ObservableMatrix& observable,
                         double temperature, double tol = 0.0, double floor = kProbabilityFloor);

/// Diagonal matrix elements <psi_n|A|psi_n> and <psi_n|A^2|psi_n>. Under a
/// Gibbs state these fix every moment the error-propagation formula needs.
struct ExpectationTable {
  Vector a;
  Vector a2;
};

ExpectationTable make_expectations(const Spectrum& spectrum, const ObservableMatrix& observable);

struct EpfResult {
  /// delta^2 T = Var(A) / |d<A>/dT|^2; +infinity when insensitive.
  double variance = 0.0;
  /// d<A>/dT vanished relative to sqrt(Var(A) Var(H)) / T^2.
  bool insensitive = false;
  double mean = 0.0;
  double mean_derivative = 0.0;
  double observable_variance = 0.0;

  /// 1 / delta^2 T, zero when insensitive.
  double inverse() const { return insensitive ? 0.0 : 1.0 / variance; }
};

/// d<A>/dT = Cov(A, H) / T^2 is used in closed form.
EpfResult epf_sensitivity(const ExpectationTable& table, const Spectrum& spectrum,
                          const GibbsEnsemble& ensemble);
EpfResult epf_sensitivity(const Spectrum& spectrum, const ObservableMatrix& observable,
                          double temperature);

/// Single-shot signal-to-noise ratio sqrt(F_Q) * T.
double snr(double f_q, double temperature);

/// Two-manifold approximation with ground and first-excited multiplicities:
///   F_Q = g0 g1 Delta^-2 (Delta/T)^4 (g0 e^{Delta/2T} + g1 e^{-Delta/2T})^-2
double two_level_qfi(double delta_g, double temperature, double g0 = 1.0, double g1 = 1.0);

struct ObservableSensitivity {
  double f_c = 0.0;
  EpfResult epf;
};

struct SensitivityPoint {
  double lambda = 0.0;
  double temperature = 0.0;
  double f_q = 0.0;
  double snr = 0.0;
  std::map<std::string, ObservableSensitivity> per_observable;
};

}  // namespace critherm
