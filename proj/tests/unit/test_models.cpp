#include "critherm/models.hpp"
#include "critherm/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <cstdlib>

using namespace critherm;

namespace {

Vector sorted_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> s(m, Eigen::EigenvaluesOnly);
  return s.eigenvalues();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Spin1Sector, TwoAtomsControlIsOccupationBookkeeping) {
  const ParamHamiltonian h = build_spin1_sector(2);
  ASSERT_EQ(h.dim(), 2);
  EXPECT_DOUBLE_EQ(h.control(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(h.control(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(h.control(0, 1), 0.0);
  EXPECT_EQ(h.control_symbol, "q");
  EXPECT_EQ(h.basis_labels[1], "(1,0,1)");
}

TEST(Spin1Sector, DimensionAndTridiagonalShape) {
  for (int n : {2, 10, 40}) {
    const ParamHamiltonian h = build_spin1_sector(n);
    EXPECT_EQ(h.dim(), n / 2 + 1);
    for (Index i = 0; i < h.dim(); ++i) {
      for (Index j = 0; j < h.dim(); ++j) {
        if (std::abs(i - j) > 1) EXPECT_EQ(h.base(i, j), 0.0);
      }
    }
  }
}

TEST(Spin1Sector, MatchesFullFockOracleForEveryEvenSize) {
  for (int n = 2; n <= 12; n += 2) {
    const ParamHamiltonian sector = build_spin1_sector(n);
    const Spin1FullSpace full = build_spin1_full_oracle(n);
    for (double q : {-3.0, -2.0, 0.0, 2.0, 3.0}) {
      const Vector a = sorted_eigenvalues(sector.at(q));
      const Vector b = sorted_eigenvalues(full.zero_magnetization_block(full.hamiltonian.at(q)));
      ASSERT_EQ(a.size(), b.size());
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10) << "N=" << n << " q=" << q;
    }
  }
}

TEST(Spin1Oracle, FourAtomsMatchSectorBlockExactly) {
  const Spin1FullSpace full = build_spin1_full_oracle(4);
  const ParamHamiltonian sector = build_spin1_sector(4);
  const Matrix block = full.zero_magnetization_block(full.hamiltonian.at(0.7));
  EXPECT_LT(max_abs(block - sector.at(0.7)), 1e-10);
}

TEST(Spin1Oracle, TotalSpinAndHamiltonianCommuteWithJz) {
  const Spin1FullSpace full = build_spin1_full_oracle(2);
  const Eigen::MatrixXcd j2 = full.j2.cast<std::complex<double>>();
  EXPECT_LT((j2 * full.jz - full.jz * j2).cwiseAbs().maxCoeff(), 1e-12);
  for (double q : {-1.0, 0.5}) {
    const Eigen::MatrixXcd h = full.hamiltonian.at(q).cast<std::complex<double>>();
    EXPECT_LT((h * full.jz - full.jz * h).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Spin1Oracle, GroundEnergyAtZeroFieldIsMaximalSpin) {
  const int n = 4;
  const Spin1FullSpace full = build_spin1_full_oracle(n);
  const Vector e = sorted_eigenvalues(full.hamiltonian.at(0.0));
  EXPECT_NEAR(e[0], -double(n) * (n + 1) / (2.0 * n), 1e-10);
}

TEST(Spin1Oracle, RejectsLargeAtomCounts) {
  EXPECT_ERROR_CODE(build_spin1_full_oracle(kSpin1OracleMaxAtoms + 2), ErrorCode::SizeCapExceeded);
}

TEST(Spin1Sector, RejectsOddAndOversizedInputs) {
  EXPECT_ERROR_CODE(build_spin1_sector(7), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(build_spin1_sector(0), ErrorCode::InvalidArgument);
  SizeCaps caps;
  caps.spin1_atoms = 50;
  try {
    build_spin1_sector(52, caps);
    FAIL() << "expected size cap error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeCapExceeded);
    EXPECT_NE(std::string(e.what()).find("52"), std::string::npos);
  }
}

TEST(Spin1Sector, LargeSystemHasGapMinimaNearBothCriticalPoints) {
  const ParamHamiltonian h = build_spin1_sector(1000);
  const CriticalPoint left = locate_critical_point(h, linspace(-2.2, -1.7, 51));
  const CriticalPoint right = locate_critical_point(h, linspace(1.7, 2.2, 51));
  EXPECT_FALSE(left.at_boundary);
  EXPECT_FALSE(right.at_boundary);
  EXPECT_NEAR(left.lambda, -2.0, 0.1);
  EXPECT_NEAR(right.lambda, 2.0, 0.1);
  // The gap away from criticality is much larger than at the minimum.
  const Vector far = sorted_eigenvalues(h.at(0.0));
  EXPECT_GT(far[1] - far[0], 2.0 * left.min_gap);
}

TEST(Xxz, TwoSiteClosedForm) {
  // -4 (s^x s^x + s^y s^y) counted twice flips ud <-> du with amplitude -4.
  const ParamHamiltonian h = build_xxz(2, 0.0);
  const Vector e = sorted_eigenvalues(h.at(0.0));
  ASSERT_EQ(e.size(), 4);
  EXPECT_NEAR(e[0], -4.0, 1e-12);
  EXPECT_NEAR(e[1], 0.0, 1e-12);
  EXPECT_NEAR(e[2], 0.0, 1e-12);
  EXPECT_NEAR(e[3], 4.0, 1e-12);
}

TEST(Xxz, SpectrumMatchesKroneckerOracle) {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = gen.integer(2, 7);
    const double zeta = gen.uniform(-1.0, 1.0);
    const double h = gen.uniform(-1.5, 1.5);
    const Vector a = sorted_eigenvalues(build_xxz(m, zeta).at(h));
    const Vector b = sorted_eigenvalues(oracle::xxz_kron(m, zeta, h));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10) << "M=" << m;
  }
}

TEST(Xxz, ConservesSzWithoutFieldAndIsTranslationInvariant) {
  for (int m : {3, 4, 6}) {
    const ParamHamiltonian h = build_xxz(m, 0.0);
    const Matrix sz = xxz_total_sz(m);
    const Matrix h0 = h.at(0.0);
    EXPECT_LT(max_abs(h0 * sz - sz * h0), 1e-12);
    const Matrix shift = xxz_cyclic_shift(m);
    for (double field : {0.0, 0.3}) {
      const Matrix hf = build_xxz(m, 0.4).at(field);
      EXPECT_LT(max_abs(hf * shift - shift * hf), 1e-12);
    }
  }
}

TEST(Xxz, RejectsOutOfRangeSizes) {
  EXPECT_ERROR_CODE(build_xxz(1, 0.0), ErrorCode::InvalidArgument);
  SizeCaps caps;
  caps.xxz_sites = 6;
  EXPECT_ERROR_CODE(build_xxz(7, 0.0, caps), ErrorCode::SizeCapExceeded);
}

TEST(Xxz, EnvironmentOverridesSizeCap) {
  ::setenv("CRITHERM_SIZE_CAP", "5", 1);
  EXPECT_EQ(default_size_caps().xxz_sites, 5);
  ::setenv("CRITHERM_SIZE_CAP", "abc", 1);
  EXPECT_ERROR_CODE(default_size_caps(), ErrorCode::InvalidArgument);
  ::unsetenv("CRITHERM_SIZE_CAP");
  EXPECT_EQ(default_size_caps().xxz_sites, 12);
}

TEST(Observables, N0IsDiagonalOccupation) {
  const ObservableMatrix n0 = build_observable(ModelSpec::spin1(8), ObservableLabel::N0);
  for (Index k = 0; k < n0.dim(); ++k) EXPECT_DOUBLE_EQ(n0.matrix(k, k), 8.0 - 2.0 * k);
  EXPECT_EQ(max_abs(n0.matrix - Matrix(n0.matrix.diagonal().asDiagonal())), 0.0);
}

TEST(Observables, Sz2IsSquaredMagnetization) {
  const ObservableMatrix sz2 = build_observable(ModelSpec::xxz(3), ObservableLabel::Sz2);
  for (Index s = 0; s < sz2.dim(); ++s) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j) m += ((s >> j) & 1) ? -0.5 : 0.5;
    EXPECT_DOUBLE_EQ(sz2.matrix(s, s), m * m);
  }
}

TEST(Observables, Jperp2MatchesOracleBlock) {
  const Spin1FullSpace full = build_spin1_full_oracle(4);
  const Eigen::MatrixXcd jz2 = full.jz * full.jz;
  EXPECT_LT(jz2.imag().cwiseAbs().maxCoeff(), 1e-12);
  const Matrix jperp = full.j2 - jz2.real();
  const ObservableMatrix obs = build_observable(ModelSpec::spin1(4), ObservableLabel::Jperp2);
  EXPECT_LT(max_abs(full.zero_magnetization_block(jperp) - obs.matrix), 1e-10);
}

TEST(Observables, Sx2SpectrumMatchesOracle) {
  const ObservableMatrix obs = build_observable(ModelSpec::xxz(4), ObservableLabel::Sx2);
  const Matrix sx = oracle::kron_total_sx(4);
  EXPECT_LT((sorted_eigenvalues(obs.matrix) - sorted_eigenvalues(sx * sx)).cwiseAbs().maxCoeff(),
            1e-10);
}

TEST(Observables, IncompatibleLabelsAreRejected) {
  EXPECT_ERROR_CODE(build_observable(ModelSpec::spin1(4), ObservableLabel::Sx2),
                    ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(build_observable(ModelSpec::xxz(4), ObservableLabel::N0),
                    ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(build_observable(ModelSpec::xxz(4), ObservableLabel::Custom),
                    ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(parse_observable_label("Sy2"), ErrorCode::InvalidArgument);
}

TEST(Observables, LabelsRoundTrip) {
  for (auto l : {ObservableLabel::Jperp2, ObservableLabel::N0, ObservableLabel::Sx2,
                 ObservableLabel::Sz2, ObservableLabel::Energy}) {
    EXPECT_EQ(parse_observable_label(to_string(l)), l);
  }
}

TEST(Properties, EveryBuiltMatrixIsHermitian) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 * gen.integer(1, 60);
    const ParamHamiltonian s = build_spin1_sector(n);
    EXPECT_LT(max_asymmetry(s.base), 1e-12);
    EXPECT_LT(max_asymmetry(s.control), 1e-12);
    for (auto l : {ObservableLabel::Jperp2, ObservableLabel::N0}) {
      EXPECT_LT(max_asymmetry(build_observable(ModelSpec::spin1(n), l).matrix), 1e-12);
    }
    const int m = gen.integer(2, 8);
    const ParamHamiltonian x = build_xxz(m, gen.uniform(-1, 1));
    EXPECT_LT(max_asymmetry(x.base), 1e-12);
    EXPECT_LT(max_asymmetry(x.control), 1e-12);
    for (auto l : {ObservableLabel::Sx2, ObservableLabel::Sz2}) {
      EXPECT_LT(max_asymmetry(build_observable(ModelSpec::xxz(m), l).matrix), 1e-12);
    }
  }
}

TEST(Properties, Spin1GapMinimaAppearOnBothSides) {
  const ParamHamiltonian h = build_spin1_sector(200);
  const CriticalPoint left = locate_critical_point(h, linspace(-2.4, -1.4, 101));
  const CriticalPoint right = locate_critical_point(h, linspace(1.4, 2.4, 101));
  EXPECT_FALSE(left.at_boundary);
  EXPECT_FALSE(right.at_boundary);
  EXPECT_LT(left.lambda, 0.0);
  EXPECT_GT(right.lambda, 0.0);
}
