#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace critherm {

struct ScalingExponents {
  double z = 1.0;
  double nu = 1.0;
  double d = 1.0;

  /// Delta_g ~ size^{-z/d}
  double gap_power() const { return z / d; }
  /// x = eps * size^{1/(nu d)}
  double x_power() const { return 1.0 / (nu * d); }

  /// All-connected spin-1 condensate: z nu = 1/2, Delta_g ~ N^{-1/3}.
  static ScalingExponents spin1() { return {1.0, 0.5, 3.0}; }
  /// XX chain at zeta_z = 0: z = 1, nu = 4/7.
  static ScalingExponents xxz() { return {1.0, 4.0 / 7.0, 1.0}; }
};

void validate(const ScalingExponents& e);

enum class ScalingQuantity { Gap, Qfi, Snr };
std::string_view to_string(ScalingQuantity q) noexcept;

/// Raw samples of one quantity against eps = lambda - lambda_c for one size.
/// For Qfi the values are Delta_g^2 F_Q; t_over_gap is the fixed T/Delta_g
/// the curve was sampled at (ignored for Gap).
struct ScalingCurve {
  int size = 0;
  std::vector<double> epsilon;
  std::vector<double> values;
  ScalingQuantity quantity = ScalingQuantity::Gap;
  double t_over_gap = 0.0;
};

void validate(const ScalingCurve& c);

enum class Abscissa {
  /// eps * size^{1/(nu d)}
  Linear,
  /// sgn(eps) * size * |eps|^{nu d}
  Caption,
};
std::string_view to_string(Abscissa a) noexcept;

double scaling_variable(double epsilon, int size, const ScalingExponents& e, Abscissa form);

struct RescaledCurve {
  int size = 0;
  std::vector<double> x;
  std::vector<double> y;
};

struct CollapseResult {
  std::vector<RescaledCurve> rescaled;
  double residual = 0.0;
  std::pair<double, double> grid_range{0.0, 0.0};
};

inline constexpr int kCollapseGridPoints = 201;

/// RMS over an evenly spaced grid on the common x-window of
/// std_across_curves(x) / mean_across_curves(|y(x)|), with population std and
/// linear interpolation. A single curve has residual 0.
CollapseResult collapse(std::vector<RescaledCurve> curves, int grid_points = kCollapseGridPoints);

/// Delta_g * size^{z/d} against the scaling variable.
CollapseResult rescale_gap(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                           Abscissa form);
/// Delta_g^2 F_Q against the scaling variable, no vertical rescaling.
CollapseResult rescale_qfi(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                           Abscissa form);
/// SNR against the scaling variable, no vertical rescaling.
CollapseResult rescale_snr(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                           Abscissa form);

/// Two-level scaling function y^-4 / (4 cosh^2(1/(2y))), y = T/Delta_g.
double gtilde(double y);

struct GtildePeak {
  double y_star = 0.0;
  double value = 0.0;
};

/// Golden-section maximum of gtilde on (0.01, 10) to 1e-8.
GtildePeak gtilde_peak();

}  // namespace critherm
