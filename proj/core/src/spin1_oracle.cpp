#include "critherm/error.hpp"
#include "critherm/models.hpp"

#include <algorithm>
#include <complex>
#include <map>

namespace critherm {

namespace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Single-particle spin-1 matrices in the (m = +1, 0, -1) basis.
std::array<Eigen::Matrix3cd, 3> spin1_matrices() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Eigen::Matrix3cd sx, sy, sz;
  sx << 0, r, 0, r, 0, r, 0, r, 0;
  sy << 0, -i * r, 0, i * r, 0, -i * r, 0, i * r, 0;
  sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  return {sx, sy, sz};
}

// sum_{m,m'} s_{m m'} a_m^dag a_{m'} on the fixed-N Fock basis.
CMatrix second_quantize(const Eigen::Matrix3cd& single,
                        const std::vector<std::array<int, 3>>& occupations,
                        const std::map<std::array<int, 3>, Index>& index_of) {
  const auto dim = static_cast<Index>(occupations.size());
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    const auto& n = occupations[col];
    for (int m = 0; m < 3; ++m) {
      for (int mp = 0; mp < 3; ++mp) {
        const Complex s = single(m, mp);
        if (s == Complex(0.0)) continue;
        if (m == mp) {
          out(col, col) += s * static_cast<double>(n[m]);
          continue;
        }
        if (n[mp] == 0) continue;
        auto target = n;
        const double amp = std::sqrt(static_cast<double>(n[mp]) * (n[m] + 1));
        target[mp] -= 1;
        target[m] += 1;
        out(index_of.at(target), col) += s * amp;
      }
    }
  }
  return out;
}

Matrix real_part_checked(const CMatrix& m, const char* what) {
  const double imag = m.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-12) {
    fail(ErrorCode::SolverFailure,
         std::string("spin-1 oracle: ") + what + " has imaginary part " + std::to_string(imag));
  }
  return m.real();
}

}  // namespace

Spin1FullSpace build_spin1_full_oracle(int atoms) {
  if (atoms < 1) fail(ErrorCode::InvalidArgument, "spin-1 oracle needs N >= 1");
  if (atoms > kSpin1OracleMaxAtoms) {
    fail(ErrorCode::SizeCapExceeded, "spin-1 full-space oracle is limited to N <= " +
                                         std::to_string(kSpin1OracleMaxAtoms) + ", got N = " +
                                         std::to_string(atoms));
  }

  Spin1FullSpace space;
  space.atoms = atoms;
  std::map<std::array<int, 3>, Index> index_of;
  for (int up = 0; up <= atoms; ++up) {
    for (int zero = 0; zero + up <= atoms; ++zero) {
      const std::array<int, 3> occ{up, zero, atoms - up - zero};
      index_of[occ] = static_cast<Index>(space.occupations.size());
      space.occupations.push_back(occ);
    }
  }

  const auto [sx, sy, sz] = spin1_matrices();
  space.jx = second_quantize(sx, space.occupations, index_of);
  space.jy = second_quantize(sy, space.occupations, index_of);
  space.jz = second_quantize(sz, space.occupations, index_of);

  const CMatrix j2 = space.jx * space.jx + space.jy * space.jy + space.jz * space.jz;
  space.j2 = real_part_checked(j2, "J^2");

  const auto dim = static_cast<Index>(space.occupations.size());
  space.n0 = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) space.n0(i, i) = space.occupations[i][1];

  ParamHamiltonian& h = space.hamiltonian;
  h.model = ModelSpec::spin1(atoms);
  h.base = -space.j2 / (2.0 * atoms);
  h.control = -space.n0;
  h.control_symbol = "q";
  for (const auto& occ : space.occupations) {
    h.basis_labels.push_back("(" + std::to_string(occ[0]) + "," + std::to_string(occ[1]) + "," +
                             std::to_string(occ[2]) + ")");
  }

  for (Index i = 0; i < dim; ++i) {
    if (space.occupations[i][0] == space.occupations[i][2]) space.zero_magnetization.push_back(i);
  }
  std::sort(space.zero_magnetization.begin(), space.zero_magnetization.end(),
            [&](Index a, Index b) { return space.occupations[a][0] < space.occupations[b][0]; });
  return space;
}

Matrix Spin1FullSpace::zero_magnetization_block(const Matrix& full) const {
  const auto n = static_cast<Index>(zero_magnetization.size());
  Matrix block(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) block(r, c) = full(zero_magnetization[r], zero_magnetization[c]);
  }
  return block;
}

}  // namespace critherm
