#include "critherm/design.hpp"

#include "critherm/error.hpp"
#include "critherm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

namespace critherm {

double optimal_chi(double m, double x) {
  const double tail = m * std::exp(-x);
  return x * x * tail / ((1.0 + tail) * (1.0 + tail));
}

OptimalDesign optimal_gap(double m) {
  if (!(m >= 1.0) || !std::isfinite(m)) {
    fail(ErrorCode::InvalidArgument, "excited-state count m must be >= 1");
  }
  const double log_m = std::log(m);
  // log of e^x (x-2)/(x+2) - log m, increasing for x > 2.
  const auto phi = [&](double x) { return x + std::log(x - 2.0) - std::log(x + 2.0) - log_m; };
  const double lo = 2.0 + 1e-300;
  const double hi = 2.0 + log_m + 20.0;
  OptimalDesign d;
  d.m = m;
  d.x_star = bisect(phi, lo, hi, 1e-13);
  d.chi_max = optimal_chi(m, d.x_star);
  d.relative_residual = std::abs(std::expm1(phi(d.x_star)));
  return d;
}

double reduced_gap_information(std::span<const double> reduced_gaps) {
  double z = 1.0;
  double single = 0.0;
  double pairs = 0.0;
  for (std::size_t a = 0; a < reduced_gaps.size(); ++a) {
    const double xa = reduced_gaps[a];
    const double wa = std::exp(-xa);
    z += wa;
    single += xa * xa * wa;
    for (std::size_t b = a + 1; b < reduced_gaps.size(); ++b) {
      const double diff = xa - reduced_gaps[b];
      pairs += diff * diff * wa * std::exp(-reduced_gaps[b]);
    }
  }
  return (single + pairs) / (z * z);
}

std::string_view to_string(BaselineForm form) noexcept {
  switch (form) {
    case BaselineForm::Generic:
      return "generic";
    case BaselineForm::Spin1:
      return "spin1";
    case BaselineForm::XXZ:
      return "xxz";
  }
  return "generic";
}

BaselineForm parse_baseline_form(std::string_view text) {
  for (auto form : {BaselineForm::Generic, BaselineForm::Spin1, BaselineForm::XXZ}) {
    if (text == to_string(form)) return form;
  }
  fail(ErrorCode::InvalidArgument, "unknown baseline form '" + std::string(text) + "'");
}

namespace {

// u^4 / sinh^2(u) for u > 0, written with e^{-2u} so large u cannot overflow.
double quartic_over_sinh2(double u) {
  const double tail = std::exp(-2.0 * u);
  const double denom = -std::expm1(-2.0 * u);
  return 4.0 * std::pow(u, 4) * tail / (denom * denom);
}

struct BaselineShape {
  double prefactor;  // multiplies quartic_over_sinh2(u) / coupling^2
  double u_per_ratio;  // u = u_per_ratio * |coupling| / T
};

BaselineShape shape(BaselineForm form) {
  return form == BaselineForm::Spin1 ? BaselineShape{1.0, 1.0} : BaselineShape{4.0, 0.5};
}

void check_coupling(double coupling) {
  if (coupling == 0.0 || !std::isfinite(coupling)) {
    fail(ErrorCode::InvalidArgument, "baseline QFI needs a non-zero finite coupling");
  }
}

}  // namespace

double baseline_qfi(BaselineForm form, double coupling, double temperature) {
  check_coupling(coupling);
  if (!(temperature > 0.0)) fail(ErrorCode::InvalidArgument, "temperature must be positive");
  const BaselineShape s = shape(form);
  const double u = s.u_per_ratio * std::abs(coupling) / temperature;
  return s.prefactor * quartic_over_sinh2(u) / (coupling * coupling);
}

BaselineEnvelope baseline_envelope(BaselineForm form, double coupling) {
  check_coupling(coupling);
  const BaselineShape s = shape(form);
  const Extremum ext = golden_section_max(quartic_over_sinh2, 0.05, 20.0, 1e-12);
  return {s.u_per_ratio * std::abs(coupling) / ext.x,
          s.prefactor * ext.value / (coupling * coupling)};
}

namespace {

Matrix smearing_kernel(std::span<const double> energies, double sigma) {
  const auto n = static_cast<Index>(energies.size());
  Matrix k(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const double d = energies[a] - energies[b];
      k(a, b) = std::exp(-d * d / (2.0 * sigma * sigma));
    }
  }
  for (Index b = 0; b < n; ++b) k.col(b) /= k.col(b).sum();
  return k;
}

}  // namespace

Vector smear_distribution(std::span<const double> energies, const Vector& probabilities,
                          double sigma) {
  if (static_cast<Index>(energies.size()) != probabilities.size()) {
    fail(ErrorCode::InvalidArgument, "outcome energies and probabilities differ in length");
  }
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "noise width sigma must be >= 0");
  if (sigma == 0.0) return probabilities;
  return smearing_kernel(energies, sigma) * probabilities;
}

CfiResult smeared_energy_cfi(const Spectrum& spectrum, double temperature, double sigma,
                             double tol) {
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "noise width sigma must be >= 0");
  const GibbsEnsemble ens = gibbs(spectrum, temperature);
  const DegeneracyGrouping groups =
      group_degenerate(spectrum, tol > 0.0 ? tol : default_degeneracy_tolerance(spectrum));
  const double mean = mean_energy(spectrum, ens);
  const double t2 = temperature * temperature;

  const auto n = static_cast<Index>(groups.size());
  std::vector<double> energies(groups.size());
  Vector p = Vector::Zero(n);
  Vector dp = Vector::Zero(n);
  for (Index a = 0; a < n; ++a) {
    const auto& members = groups.groups[static_cast<std::size_t>(a)];
    energies[static_cast<std::size_t>(a)] = spectrum.gaps[members.front()];
    for (Index i : members) {
      p[a] += ens.weights[i];
      dp[a] += ens.weights[i] * (spectrum.gaps[i] - mean) / t2;
    }
  }
  if (sigma > 0.0) {
    const Matrix k = smearing_kernel(energies, sigma);
    p = k * p;
    dp = k * dp;
  }
  return cfi_from_distribution(p, dp);
}

Spectrum noise_reference_spectrum(int m, double temperature) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "noise reference needs m >= 2 (log m > 0)");
  if (!(temperature > 0.0)) fail(ErrorCode::InvalidArgument, "temperature must be positive");
  std::vector<double> levels(static_cast<std::size_t>(m) + 1, temperature * std::log(m));
  levels[0] = 0.0;
  return Spectrum::from_levels(levels);
}

std::string_view to_string(AuxiliaryReading r) noexcept {
  return r == AuxiliaryReading::AsPrinted ? "as_printed" : "reciprocal";
}

namespace {

double log_sum_exp(std::initializer_list<double> terms) {
  const double top = std::max(terms);
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

// log |1 - e^{ly}|
double log_abs_one_minus_exp(double ly) {
  if (ly == 0.0) return -std::numeric_limits<double>::infinity();
  if (ly < 0.0) return std::log1p(-std::exp(ly));
  return ly + std::log1p(-std::exp(-ly));
}

}  // namespace

FdnValue fdn_analytic(int m, double temperature, double sigma, AuxiliaryReading reading) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "F_dn needs m >= 2 (log m > 0)");
  if (!(temperature > 0.0) || !(sigma > 0.0)) {
    fail(ErrorCode::InvalidArgument, "F_dn needs T > 0 and sigma > 0");
  }
  const double log_m = std::log(static_cast<double>(m));
  const double l2 = log_m * log_m;
  const double s = std::pow(temperature * log_m / sigma, 2);
  if (!std::isfinite(s)) {
    fail(ErrorCode::InvalidArgument, "sigma/T too small: the auxiliary log y overflows");
  }
  FdnValue out;
  out.log_y = reading == AuxiliaryReading::AsPrinted ? s : -s;
  const double ly = out.log_y;

  const double ln_num = log_m + 2.0 * log_abs_one_minus_exp(ly) + std::log(l2);
  const double ln_den = std::log(4.0) + log_sum_exp({0.0, std::log(1.0 + 2.0 * m) + ly}) +
                        log_sum_exp({log_m, std::log(2.0) + ly, log_m + l2 * ly});
  out.coefficient = std::exp(ln_num - ln_den);
  out.value = out.coefficient / (temperature * temperature);
  return out;
}

NoiseReport noise_discrepancy(int m, std::span<const double> sigma_over_t) {
  const Spectrum reference = noise_reference_spectrum(m, 1.0);
  NoiseReport report;
  report.m = m;
  const double log_m = std::log(static_cast<double>(m));
  report.noiseless = log_m * log_m / 4.0;
  double previous = std::numeric_limits<double>::infinity();
  double previous_ratio = -std::numeric_limits<double>::infinity();
  for (double r : sigma_over_t) {
    if (!(r > previous_ratio)) {
      fail(ErrorCode::InvalidArgument, "sigma/T grid must be strictly increasing");
    }
    previous_ratio = r;
    NoiseRow row;
    row.sigma_over_t = r;
    row.numeric = smeared_energy_cfi(reference, 1.0, r).value;
    row.printed = fdn_analytic(m, 1.0, r, AuxiliaryReading::AsPrinted).coefficient;
    row.reciprocal = fdn_analytic(m, 1.0, r, AuxiliaryReading::Reciprocal).coefficient;
    if (row.numeric > previous * (1.0 + 1e-12)) report.numeric_monotone = false;
    previous = row.numeric;
    if (row.numeric > 0.0) {
      report.max_rel_dev_printed =
          std::max(report.max_rel_dev_printed, std::abs(row.printed - row.numeric) / row.numeric);
      report.max_rel_dev_reciprocal = std::max(
          report.max_rel_dev_reciprocal, std::abs(row.reciprocal - row.numeric) / row.numeric);
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace critherm
