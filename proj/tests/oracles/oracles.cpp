#include "oracles.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

Matrix site_operator(const Matrix& op, int site, int sites) {
  Matrix out = Matrix::Identity(1, 1);
  for (int j = 0; j < sites; ++j) {
    const Matrix factor = j == site ? op : Matrix::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

Matrix sx() {
  Matrix m(2, 2);
  m << 0, 0.5, 0.5, 0;
  return m;
}

Matrix sz() {
  Matrix m(2, 2);
  m << 0.5, 0, 0, -0.5;
  return m;
}

// i s^y is real; s^y s^y = -(i s^y)(i s^y).
Matrix isy() {
  Matrix m(2, 2);
  m << 0, 0.5, -0.5, 0;
  return m;
}

}  // namespace

Matrix xxz_kron(int sites, double zeta_z, double h) {
  const int dim = 1 << sites;
  Matrix hm = Matrix::Zero(dim, dim);
  for (int j = 0; j < sites; ++j) {
    const int k = (j + 1) % sites;
    hm -= 4.0 * site_operator(sx(), j, sites) * site_operator(sx(), k, sites);
    hm += 4.0 * site_operator(isy(), j, sites) * site_operator(isy(), k, sites);
    hm -= 4.0 * zeta_z * site_operator(sz(), j, sites) * site_operator(sz(), k, sites);
    hm += 2.0 * h * site_operator(sx(), j, sites);
  }
  return hm;
}

Matrix kron_total_sz(int sites) {
  Matrix out = Matrix::Zero(1 << sites, 1 << sites);
  for (int j = 0; j < sites; ++j) out += site_operator(sz(), j, sites);
  return out;
}

Matrix kron_total_sx(int sites) {
  Matrix out = Matrix::Zero(1 << sites, 1 << sites);
  for (int j = 0; j < sites; ++j) out += site_operator(sx(), j, sites);
  return out;
}

double energy_variance(const std::vector<double>& levels, double temperature) {
  const long double e0 = *std::min_element(levels.begin(), levels.end());
  long double z = 0, m1 = 0, m2 = 0;
  for (double e : levels) {
    const long double d = e - e0;
    const long double w = std::exp(-d / temperature);
    z += w;
    m1 += w * d;
    m2 += w * d * d;
  }
  m1 /= z;
  m2 /= z;
  return static_cast<double>(m2 - m1 * m1);
}

double qfi(const std::vector<double>& levels, double temperature) {
  return energy_variance(levels, temperature) / std::pow(temperature, 4);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

ScanMax grid_scan_max(const std::function<double(double)>& f, double lo, double hi, double step) {
  ScanMax best{lo, f(lo)};
  const auto n = static_cast<long>((hi - lo) / step);
  for (long i = 1; i <= n; ++i) {
    const double x = lo + step * i;
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

Matrix Gen::symmetric(int dim, double scale) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = uniform(-scale, scale);
  }
  return a;
}

std::vector<double> Gen::levels(int count, double min_gap, double max_gap) {
  std::vector<double> out{0.0};
  for (int i = 1; i < count; ++i) out.push_back(out.back() + uniform(min_gap, max_gap));
  return out;
}

Vector Gen::probabilities(int count) {
  Vector p(count);
  for (int i = 0; i < count; ++i) p[i] = uniform(0.01, 1.0);
  return p / p.sum();
}

}  // namespace oracle
