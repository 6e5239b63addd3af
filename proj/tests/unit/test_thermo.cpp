#include "critherm/models.hpp"
#include "critherm/scaling.hpp"
#include "critherm/spectral.hpp"
#include "critherm/thermo.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <Eigen/QR>

using namespace critherm;

namespace {

Spectrum levels(std::initializer_list<double> e) {
  return Spectrum::from_levels(std::vector<double>(e));
}

double max_over(const std::vector<double>& grid, const std::function<double(double)>& f) {
  double best = -1.0;
  for (double x : grid) best = std::max(best, f(x));
  return best;
}

}  // namespace

TEST(Gibbs, InfiniteTemperatureIsUniform) {
  const Spectrum s = eig_hermitian(build_spin1_sector(10).at(-1.0));
  const GibbsEnsemble g = gibbs(s, 1e12);
  for (Index n = 0; n < s.dim(); ++n) EXPECT_NEAR(g.weights[n], 1.0 / s.dim(), 1e-9);
}

TEST(Gibbs, TwoLevelClosedForm) {
  const GibbsEnsemble g = gibbs(levels({0.0, 1.0}), 1.0);
  const double e = std::exp(-1.0);
  EXPECT_NEAR(g.weights[0], 1.0 / (1.0 + e), 1e-15);
  EXPECT_NEAR(g.weights[1], e / (1.0 + e), 1e-15);
  EXPECT_NEAR(g.partition, 1.0 + e, 1e-15);
}

TEST(Gibbs, RejectsNonPositiveTemperature) {
  const Spectrum s = levels({0.0, 1.0});
  EXPECT_ERROR_CODE(gibbs(s, 0.0), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(gibbs(s, -1.0), ErrorCode::InvalidArgument);
}

TEST(Gibbs, UnderflowReturnsGroundStateLimit) {
  const GibbsEnsemble g = gibbs(levels({0.0, 1.0, 2.0}), 1e-4);
  EXPECT_TRUE(g.ground_state_limit);
  EXPECT_EQ(g.weights[0], 1.0);
  EXPECT_FALSE(gibbs(levels({0.0, 1.0}), 1.0).ground_state_limit);
}

TEST(Gibbs, WeightsAreNormalizedAndGroundIsMaximal) {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Spectrum s = Spectrum::from_levels(gen.levels(gen.integer(2, 40), 0.0, 2.0));
    const GibbsEnsemble g = gibbs(s, gen.uniform(0.01, 10.0));
    EXPECT_NEAR(g.weights.sum(), 1.0, 1e-12);
    EXPECT_GE(g.weights.minCoeff(), 0.0);
    EXPECT_EQ(g.weights.maxCoeff(), g.weights[0]);
  }
}

TEST(Qfi, TwoLevelPeakValue) {
  const Spectrum s = levels({0.0, 1.0});
  EXPECT_NEAR(qfi_temperature(s, 0.24), 4.53, 0.01);
}

TEST(Qfi, VanishesAtHighTemperature) {
  const Spectrum s = eig_hermitian(build_spin1_sector(20).at(-1.0));
  EXPECT_LT(qfi_temperature(s, 1e6), 1e-18);
}

TEST(Qfi, MatchesFiniteDifferenceEnergyCfi) {
  const Spectrum s = eig_hermitian(build_spin1_sector(4).at(-1.8));
  const double t = 0.5;
  const double h = 1e-5;
  std::vector<double> e(s.energies.data(), s.energies.data() + s.dim());
  const auto prob = [&](std::size_t n, double temp) {
    double z = 0.0;
    for (double x : e) z += std::exp(-(x - e[0]) / temp);
    return std::exp(-(e[n] - e[0]) / temp) / z;
  };
  double fd = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    const double dp = oracle::central_difference([&](double x) { return prob(n, x); }, t, h);
    fd += dp * dp / prob(n, t);
  }
  EXPECT_LT(rel_diff(fd, qfi_temperature(s, t)), 1e-6);
  EXPECT_LT(rel_diff(oracle::qfi(e, t), qfi_temperature(s, t)), 1e-12);
}

TEST(Cfi, EnergyMeasurementIsOptimal) {
  const ParamHamiltonian h = build_spin1_sector(60);
  for (double q : {-2.2, -1.9, -1.0}) {
    const Spectrum s = eig_hermitian(h.at(q));
    for (double t : {0.05, 0.3, 2.0}) {
      const CfiResult fc = cfi_observable(s, energy_observable(h, q), t);
      if (fc.excluded_outcomes == 0) {
        EXPECT_LT(rel_diff(fc.value, qfi_temperature(s, t)), 1e-10) << "q=" << q << " T=" << t;
      } else {
        // Outcomes under the probability floor drop out; the loss is bounded by their mass.
        EXPECT_LT(fc.excluded_mass, kProbabilityFloor * fc.excluded_outcomes);
        EXPECT_LE(fc.value, qfi_temperature(s, t));
      }
    }
  }
}

TEST(Cfi, IdentityCarriesNoInformation) {
  const Spectrum s = eig_hermitian(build_xxz(4, 0.0).at(0.3));
  const ObservableMatrix id = custom_observable(Matrix::Identity(16, 16), "identity");
  const CfiResult r = cfi_observable(s, id, 0.7);
  EXPECT_LT(r.value, 1e-25);
}

TEST(Cfi, N0PeaksHigherSlightlyOffCriticality) {
  const ParamHamiltonian h = build_spin1_sector(200);
  const ObservableMatrix n0 = build_observable(ModelSpec::spin1(200), ObservableLabel::N0);
  const auto temps = linspace(0.01, 0.6, 60);
  const Spectrum near = eig_hermitian(h.at(-1.8));
  const Spectrum crit = eig_hermitian(h.at(-1.869));
  const double f_near = max_over(temps, [&](double t) { return cfi_observable(near, n0, t).value; });
  const double f_crit = max_over(temps, [&](double t) { return cfi_observable(crit, n0, t).value; });
  EXPECT_GT(f_near, f_crit);
}

TEST(Cfi, FloorExcludesAndReportsTinyOutcomes) {
  Vector p(3), dp(3);
  p << 0.6, 0.4, 1e-20;
  dp << 0.1, -0.1, 1e-18;
  const CfiResult r = cfi_from_distribution(p, dp);
  EXPECT_EQ(r.excluded_outcomes, 1);
  EXPECT_DOUBLE_EQ(r.excluded_mass, 1e-20);
  EXPECT_NEAR(r.value, 0.01 / 0.6 + 0.01 / 0.4, 1e-15);
  EXPECT_ERROR_CODE(cfi_from_distribution(p, Vector(2)), ErrorCode::InvalidArgument);
}

TEST(Cfi, RejectsMismatchedObservable) {
  const Spectrum s = levels({0.0, 1.0});
  EXPECT_ERROR_CODE(cfi_observable(s, custom_observable(Matrix::Identity(3, 3), "x"), 1.0),
                    ErrorCode::InvalidArgument);
}

TEST(Cfi, IndependentOfBasisInsideDegenerateLevels) {
  const ParamHamiltonian h = build_xxz(4, 0.0);
  Spectrum s = eig_hermitian(h.at(0.0));
  const ObservableMatrix sx2 = build_observable(ModelSpec::xxz(4), ObservableLabel::Sx2);
  const double before = cfi_observable(s, sx2, 0.4).value;
  oracle::Gen gen(5);
  const DegeneracyGrouping g = group_degenerate(s, 1e-9);
  for (const auto& grp : g.groups) {
    const auto k = static_cast<Index>(grp.size());
    if (k < 2) continue;
    const Matrix q = Eigen::HouseholderQR<Matrix>(gen.symmetric(int(k))).householderQ();
    Matrix block(s.dim(), k);
    for (Index c = 0; c < k; ++c) block.col(c) = s.vectors.col(grp[c]);
    block = (block * q).eval();
    for (Index c = 0; c < k; ++c) s.vectors.col(grp[c]) = block.col(c);
  }
  EXPECT_LT(rel_diff(before, cfi_observable(s, sx2, 0.4).value), 1e-10);
}

TEST(Epf, EnergyReadoutSaturatesQfi) {
  const ParamHamiltonian h = build_spin1_sector(40);
  const Spectrum s = eig_hermitian(h.at(-1.5));
  const double t = 0.3;
  const EpfResult r = epf_sensitivity(s, energy_observable(h, -1.5), t);
  ASSERT_FALSE(r.insensitive);
  EXPECT_LT(rel_diff(r.variance, 1.0 / qfi_temperature(s, t)), 1e-10);
}

TEST(Epf, AnalyticDerivativeMatchesFiniteDifference) {
  const Spectrum s = eig_hermitian(build_spin1_sector(50).at(-1.7));
  const ObservableMatrix a = build_observable(ModelSpec::spin1(50), ObservableLabel::Jperp2);
  const ExpectationTable table = make_expectations(s, a);
  for (double t : {0.2, 0.5, 1.5}) {
    const EpfResult r = epf_sensitivity(table, s, gibbs(s, t));
    const double fd = oracle::central_difference(
        [&](double x) { return epf_sensitivity(table, s, gibbs(s, x)).mean; }, t, 1e-5);
    EXPECT_LT(rel_diff(r.mean_derivative, fd), 1e-6) << "T=" << t;
  }
}

TEST(Epf, ConstantObservableIsInsensitive) {
  const Spectrum s = levels({0.0, 1.0, 3.0});
  const EpfResult r = epf_sensitivity(s, custom_observable(2.0 * Matrix::Identity(3, 3), "c"), 1.0);
  EXPECT_TRUE(r.insensitive);
  EXPECT_TRUE(std::isinf(r.variance));
  EXPECT_EQ(r.inverse(), 0.0);
}

TEST(Epf, HierarchyAtNearCriticalPoint) {
  const Spectrum s = eig_hermitian(build_spin1_sector(200).at(-1.8));
  const ObservableMatrix a = build_observable(ModelSpec::spin1(200), ObservableLabel::Jperp2);
  for (double t : linspace(0.02, 0.6, 15)) {
    const double fq = qfi_temperature(s, t);
    const double fc = cfi_observable(s, a, t).value;
    const double inv = epf_sensitivity(s, a, t).inverse();
    EXPECT_LE(inv, fc * (1 + 1e-9) + 1e-300) << "T=" << t;
    EXPECT_LE(fc, fq * (1 + 1e-9)) << "T=" << t;
  }
}

TEST(Snr, Examples) {
  EXPECT_NEAR(snr(4.53, 0.24), 0.51, 0.005);
  EXPECT_EQ(snr(0.0, 1.0), 0.0);
  EXPECT_ERROR_CODE(snr(-1.0, 1.0), ErrorCode::InvalidArgument);
}

TEST(TwoLevel, PeakAndCoshIdentity) {
  EXPECT_NEAR(two_level_qfi(1.0, 0.24), 4.53, 0.01);
  oracle::Gen gen(4);
  for (int i = 0; i < 20; ++i) {
    const double d = gen.uniform(0.1, 5.0);
    const double t = d * gen.uniform(0.05, 5.0);
    const double r = d / t;
    const double expect = std::pow(r, 4) / (4.0 * std::pow(std::cosh(r / 2.0), 2)) / (d * d);
    EXPECT_LT(rel_diff(two_level_qfi(d, t), expect), 1e-12);
  }
}

TEST(TwoLevel, ThreeLevelSpectrumIsCloseAtLowTemperature) {
  const Spectrum s = levels({0.0, 1.0, 10.0});
  EXPECT_LT(rel_diff(qfi_temperature(s, 0.2), two_level_qfi(1.0, 0.2)), 0.01);
}

TEST(TwoLevel, DegenerateMultiplicitiesMatchFullQfi) {
  const Spectrum s = levels({0.0, 1.0, 1.0, 1.0});
  for (double t : {0.1, 0.3, 1.0}) {
    EXPECT_LT(rel_diff(qfi_temperature(s, t), two_level_qfi(1.0, t, 1.0, 3.0)), 1e-12);
  }
}

TEST(TwoLevel, RejectsBadArguments) {
  EXPECT_ERROR_CODE(two_level_qfi(0.0, 1.0), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(two_level_qfi(1.0, 1.0, 0.5, 1.0), ErrorCode::InvalidArgument);
}

TEST(Properties, MeasurementHierarchyOnRandomPoints) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const bool spin1 = gen.integer(0, 1) == 0;
    const ModelSpec spec = spin1 ? ModelSpec::spin1(2 * gen.integer(2, 60)) : ModelSpec::xxz(gen.integer(2, 6));
    const double lambda = spin1 ? gen.uniform(-3, 3) : gen.uniform(-1, 1);
    const ParamHamiltonian h = build_model(spec);
    const Spectrum s = eig_hermitian(h.at(lambda));
    const double t = gen.uniform(0.05, 3.0);
    const double fq = qfi_temperature(s, t);
    const auto labels = spin1 ? std::vector{ObservableLabel::Jperp2, ObservableLabel::N0}
                              : std::vector{ObservableLabel::Sx2, ObservableLabel::Sz2};
    for (auto label : labels) {
      const ObservableMatrix a = build_observable(spec, label);
      const double fc = cfi_observable(s, a, t).value;
      const double inv = epf_sensitivity(s, a, t).inverse();
      EXPECT_LE(fc, fq * (1 + 1e-9) + 1e-300);
      EXPECT_LE(inv, fc * (1 + 1e-9) + 1e-300);
    }
  }
}

TEST(Properties, AnalyticProbabilityDerivativesMatchFiniteDifferences) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 * gen.integer(2, 30);
    const Spectrum s = eig_hermitian(build_spin1_sector(n).at(gen.uniform(-3, 3)));
    const Measurement m = make_measurement(s, build_observable(ModelSpec::spin1(n), ObservableLabel::N0));
    const double t = s.ground_gap() * gen.uniform(0.3, 3.0);
    const Vector analytic = outcome_derivatives(m, s, gibbs(s, t));
    const double h = 1e-5 * t;
    const Vector fd = (outcome_probabilities(m, gibbs(s, t + h)) - outcome_probabilities(m, gibbs(s, t - h))) / (2 * h);
    // The dominant outcome is well conditioned.
    Index best = 0;
    outcome_probabilities(m, gibbs(s, t)).maxCoeff(&best);
    EXPECT_LT(rel_diff(analytic[best], fd[best]), 1e-6);
  }
}

TEST(Properties, MergingOutcomesNeverIncreasesCfi) {
  oracle::Gen gen(51);
  for (int trial = 0; trial < 30; ++trial) {
    const Spectrum s = Spectrum::from_levels(gen.levels(gen.integer(3, 12), 0.05, 1.0));
    const ObservableMatrix a = custom_observable(gen.symmetric(int(s.dim())), "random");
    const double t = gen.uniform(0.1, 2.0);
    const GibbsEnsemble g = gibbs(s, t);
    Measurement fine = make_measurement(s, a);
    if (fine.outcomes() < 2) continue;
    Measurement coarse = fine;
    coarse.overlap.row(0) += coarse.overlap.row(1);
    coarse.overlap.row(1).setZero();
    EXPECT_LE(cfi(coarse, s, g).value, cfi(fine, s, g).value * (1 + 1e-12));
  }
}

TEST(Properties, LowTemperatureConvergesToTwoLevel) {
  const Spectrum s = eig_hermitian(build_spin1_sector(100).at(-1.0));
  ASSERT_GE(s.gaps[2], 1.5 * s.gaps[1]);
  const double dg = s.ground_gap();
  const double e10 = rel_diff(qfi_temperature(s, 0.1 * dg), two_level_qfi(dg, 0.1 * dg));
  const double e05 = rel_diff(qfi_temperature(s, 0.05 * dg), two_level_qfi(dg, 0.05 * dg));
  EXPECT_LT(e05, e10 + 1e-15);
  EXPECT_LT(e05, 1e-6);
}

TEST(Properties, TwoLevelVanishesInBothLimits) {
  EXPECT_LT(two_level_qfi(1.0, 0.01), 1e-30);
  EXPECT_LT(two_level_qfi(1.0, 1e4), 1e-15);
}
