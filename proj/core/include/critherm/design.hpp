#pragma once

#include "critherm/spectral.hpp"
#include "critherm/thermo.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace critherm {

/// Optimal two-manifold thermometer: one ground state and m degenerate
/// excited states at gap x * T.
struct OptimalDesign {
  double m = 1.0;
  /// Delta_max / T, the root of e^x (x - 2)/(x + 2) = m.
  double x_star = 0.0;
  /// F_Q,max = chi_max / T^2
  double chi_max = 0.0;
  /// |e^x (x - 2)/(x + 2) - m| / m at x_star.
  double relative_residual = 0.0;
};

OptimalDesign optimal_gap(double m);

/// m x^2 e^{-x} / (1 + m e^{-x})^2
double optimal_chi(double m, double x);

/// T^2 F_c for a ground state plus excited states at reduced gaps
/// x_a = Delta_a / T, evaluated as the pairwise double sum
///   Z^-2 [ sum_a x_a^2 e^{-x_a} + sum_{a<b} (x_a - x_b)^2 e^{-x_a - x_b} ].
double reduced_gap_information(std::span<const double> reduced_gaps);

enum class BaselineForm {
  /// (4/g^2) (g/2T)^4 / sinh^2(g/2T), the exact low-T limit of an equally
  /// spaced ladder E_n = g n.
  Generic,
  /// (1/q^2) (q/T)^4 / sinh^2(q/T)
  Spin1,
  /// (4/h^2) (h/2T)^4 / sinh^2(h/2T)
  XXZ,
};

std::string_view to_string(BaselineForm form) noexcept;
BaselineForm parse_baseline_form(std::string_view text);

/// QFI of the non-interacting counterpart; throws for zero coupling.
double baseline_qfi(BaselineForm form, double coupling, double temperature);

struct BaselineEnvelope {
  double t_star = 0.0;
  double f_max = 0.0;
};

/// max over T of baseline_qfi at fixed coupling.
BaselineEnvelope baseline_envelope(BaselineForm form, double coupling);

/// Gaussian detection smearing over a discrete outcome set:
///   P'(a) = sum_b K(a, b) P(b) / N_b,  K = exp(-(E_a - E_b)^2 / 2 sigma^2),
/// with N_b = sum_a K(a, b) over the same outcome set, so P' stays
/// normalized. sigma = 0 is the identity.
Vector smear_distribution(std::span<const double> energies, const Vector& probabilities,
                          double sigma);

/// CFI of the energy readout after smearing. Outcomes are the
/// degeneracy-grouped levels; probabilities and their analytic T-derivatives
/// pass through the same kernel.
CfiResult smeared_energy_cfi(const Spectrum& spectrum, double temperature, double sigma,
                             double tol = 0.0);

/// Ground state plus m degenerate excited states at Delta = T log m.
Spectrum noise_reference_spectrum(int m, double temperature);

enum class AuxiliaryReading {
  /// log y = (T log m / sigma)^2
  AsPrinted,
  /// log y = -(T log m / sigma)^2
  Reciprocal,
};

std::string_view to_string(AuxiliaryReading r) noexcept;

struct FdnValue {
  /// T^2 F_dn
  double coefficient = 0.0;
  double value = 0.0;
  double log_y = 0.0;
};

/// Closed-form detection-noise CFI
///   F_dn = T^-2 m (1-y)^2 log^2 m / [4 (1+y+2my)(m + 2y + m y^{log^2 m})],
/// evaluated in log space.
FdnValue fdn_analytic(int m, double temperature, double sigma,
                      AuxiliaryReading reading = AuxiliaryReading::AsPrinted);

struct NoiseRow {
  double sigma_over_t = 0.0;
  /// All values are T^2 F.
  double numeric = 0.0;
  double printed = 0.0;
  double reciprocal = 0.0;
};

struct NoiseReport {
  int m = 0;
  /// log^2 m / 4, the noiseless energy CFI of the reference spectrum.
  double noiseless = 0.0;
  std::vector<NoiseRow> rows;
  /// Numeric CFI never increased along the sigma grid.
  bool numeric_monotone = true;
  double max_rel_dev_printed = 0.0;
  double max_rel_dev_reciprocal = 0.0;
};

NoiseReport noise_discrepancy(int m, std::span<const double> sigma_over_t);

}  // namespace critherm
