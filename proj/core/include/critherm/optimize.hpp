#pragma once

#include <cmath>
#include <utility>

namespace critherm {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b], stopping
/// once the bracket is narrower than tol.
template <class F>
Extremum golden_section_max(F&& f, double a, double b, double tol = 1e-10, int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (std::abs(b - a) > tol && it < max_iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

/// Bisection for a sign change of f on [a, b]. Returns the midpoint of the
/// final bracket; the caller guarantees f(a) and f(b) differ in sign.
template <class F>
double bisect(F&& f, double a, double b, double tol = 1e-12, int max_iter = 400) {
  double fa = f(a);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace critherm
