#include "critherm/scaling.hpp"

#include "critherm/error.hpp"
#include "critherm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace critherm {

std::string_view to_string(ScalingQuantity q) noexcept {
  switch (q) {
    case ScalingQuantity::Gap:
      return "gap";
    case ScalingQuantity::Qfi:
      return "qfi";
    case ScalingQuantity::Snr:
      return "snr";
  }
  return "gap";
}

std::string_view to_string(Abscissa a) noexcept {
  return a == Abscissa::Linear ? "linear" : "caption";
}

void validate(const ScalingExponents& e) {
  if (!(e.z > 0.0) || !(e.nu > 0.0) || !(e.d > 0.0)) {
    fail(ErrorCode::InvalidArgument, "scaling exponents z, nu, d must be positive");
  }
}

void validate(const ScalingCurve& c) {
  const std::string tag = "curve for size " + std::to_string(c.size);
  if (c.size < 1) fail(ErrorCode::InvalidArgument, tag + ": size must be positive");
  if (c.epsilon.empty() || c.epsilon.size() != c.values.size()) {
    fail(ErrorCode::InvalidArgument, tag + ": epsilon and values must be non-empty and aligned");
  }
  for (std::size_t i = 0; i < c.epsilon.size(); ++i) {
    if (i > 0 && !(c.epsilon[i] > c.epsilon[i - 1])) {
      fail(ErrorCode::InvalidArgument, tag + ": epsilon must be strictly increasing");
    }
    if (!std::isfinite(c.values[i]) || !std::isfinite(c.epsilon[i])) {
      fail(ErrorCode::InvalidArgument, tag + ": samples must be finite");
    }
  }
}

double scaling_variable(double epsilon, int size, const ScalingExponents& e, Abscissa form) {
  const double n = size;
  if (form == Abscissa::Linear) return epsilon * std::pow(n, e.x_power());
  if (epsilon == 0.0) return 0.0;
  return std::copysign(n * std::pow(std::abs(epsilon), e.nu * e.d), epsilon);
}

namespace {

double interpolate(const RescaledCurve& c, double x) {
  const auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
  if (it == c.x.begin()) return c.y.front();
  if (it == c.x.end()) return c.y.back();
  const auto hi = static_cast<std::size_t>(it - c.x.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - c.x[lo]) / (c.x[hi] - c.x[lo]);
  return c.y[lo] + t * (c.y[hi] - c.y[lo]);
}

CollapseResult rescale(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                       Abscissa form, ScalingQuantity quantity) {
  validate(e);
  if (curves.empty()) fail(ErrorCode::InvalidArgument, "collapse needs at least one curve");
  for (const auto& c : curves) {
    validate(c);
    if (c.quantity != quantity) {
      fail(ErrorCode::InvalidArgument, "expected " + std::string(to_string(quantity)) +
                                           " curves, got " + std::string(to_string(c.quantity)));
    }
  }
  if (quantity != ScalingQuantity::Gap) {
    const double ratio = curves.front().t_over_gap;
    for (const auto& c : curves) {
      if (std::abs(c.t_over_gap - ratio) > 1e-12 * std::max(1.0, std::abs(ratio))) {
        std::ostringstream msg;
        msg << "curves sampled at different T/Delta_g: " << ratio << " vs " << c.t_over_gap
            << " (size " << c.size << ")";
        fail(ErrorCode::MixedRatios, msg.str());
      }
    }
  }

  std::vector<RescaledCurve> out;
  out.reserve(curves.size());
  for (const auto& c : curves) {
    RescaledCurve r;
    r.size = c.size;
    const double vscale =
        quantity == ScalingQuantity::Gap ? std::pow(double(c.size), e.gap_power()) : 1.0;
    for (std::size_t i = 0; i < c.epsilon.size(); ++i) {
      r.x.push_back(scaling_variable(c.epsilon[i], c.size, e, form));
      r.y.push_back(c.values[i] * vscale);
    }
    out.push_back(std::move(r));
  }
  return collapse(std::move(out));
}

}  // namespace

CollapseResult collapse(std::vector<RescaledCurve> curves, int grid_points) {
  if (curves.empty()) fail(ErrorCode::InvalidArgument, "collapse needs at least one curve");
  if (grid_points < 2) fail(ErrorCode::InvalidArgument, "collapse grid needs >= 2 points");
  CollapseResult result;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    if (c.x.empty() || c.x.size() != c.y.size()) {
      fail(ErrorCode::InvalidArgument, "rescaled curve for size " + std::to_string(c.size) +
                                           " is empty or misaligned");
    }
    lo = std::max(lo, c.x.front());
    hi = std::min(hi, c.x.back());
  }
  result.grid_range = {lo, hi};
  result.rescaled = std::move(curves);
  if (result.rescaled.size() == 1) return result;

  if (!(hi > lo)) {
    std::ostringstream msg;
    msg << "rescaled x-ranges do not overlap:";
    for (const auto& c : result.rescaled) {
      msg << " size " << c.size << " [" << c.x.front() << ", " << c.x.back() << "]";
    }
    fail(ErrorCode::NonOverlappingRanges, msg.str());
  }

  const auto n = static_cast<double>(result.rescaled.size());
  double acc = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double x = lo + (hi - lo) * k / (grid_points - 1);
    std::vector<double> ys;
    ys.reserve(result.rescaled.size());
    double sum = 0.0;
    double sum_abs = 0.0;
    for (const auto& c : result.rescaled) {
      ys.push_back(interpolate(c, x));
      sum += ys.back();
      sum_abs += std::abs(ys.back());
    }
    const double mean = sum / n;
    double var = 0.0;
    for (double y : ys) var += (y - mean) * (y - mean);
    var /= n;
    const double scale = sum_abs / n;
    if (scale > 0.0) acc += var / (scale * scale);
  }
  result.residual = std::sqrt(acc / grid_points);
  return result;
}

CollapseResult rescale_gap(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                           Abscissa form) {
  return rescale(curves, e, form, ScalingQuantity::Gap);
}

CollapseResult rescale_qfi(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                           Abscissa form) {
  return rescale(curves, e, form, ScalingQuantity::Qfi);
}

CollapseResult rescale_snr(const std::vector<ScalingCurve>& curves, const ScalingExponents& e,
                           Abscissa form) {
  return rescale(curves, e, form, ScalingQuantity::Snr);
}

double gtilde(double y) {
  if (!(y > 0.0)) fail(ErrorCode::InvalidArgument, "gtilde needs y > 0");
  // 1/(4 cosh^2(u/2)) = e^{-u} / (1 + e^{-u})^2
  const double u = 1.0 / y;
  const double tail = std::exp(-u);
  return std::pow(u, 4) * tail / ((1.0 + tail) * (1.0 + tail));
}

GtildePeak gtilde_peak() {
  const Extremum ext = golden_section_max([](double y) { return gtilde(y); }, 0.01, 10.0, 1e-8);
  return {ext.x, ext.value};
}

}  // namespace critherm
