#pragma once

#include "azumaya/azumaya.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

namespace test_support {

using namespace azumaya;
using matalg::ComplexMatrix;
using matalg::StarHom;

inline ComplexMatrix vec_operator_left(const ComplexMatrix& a) {
  // vec(aX) = (I⊗a) vec(X) in column-major vec.
  return matalg::kron(matalg::identity(a.rows()), a);
}

inline ComplexMatrix vec_operator_right(const ComplexMatrix& a) {
  // vec(Xa) = (aᵀ⊗I) vec(X).
  return matalg::kron(a.transpose(), matalg::identity(a.rows()));
}

/// Dimension of {X : X·φ(e_ij) = φ(e_ij)·X for all i, j}, from the null
/// space of the stacked commutation system.
inline int commutant_dimension_oracle(const StarHom& phi) {
  const auto n = static_cast<Eigen::Index>(phi.n());
  ComplexMatrix sys(n * n * static_cast<Eigen::Index>(phi.units().size()), n * n);
  Eigen::Index row = 0;
  for (const auto& a : phi.units()) {
    sys.block(row, 0, n * n, n * n) = vec_operator_left(a) - vec_operator_right(a);
    row += n * n;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(sys);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-6) ++rank;
  return static_cast<int>(n * n) - rank;
}

/// Worst matrix-unit relation residual over all k⁴ products, evaluated
/// directly.
inline double unit_relation_oracle(const StarHom& phi) {
  const int k = phi.k();
  double worst = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
          ComplexMatrix want = j == p ? phi.unit(i, q) : ComplexMatrix::Zero(phi.n(), phi.n());
          worst = std::max(worst, (phi.unit(i, j) * phi.unit(p, q) - want).norm());
        }
  return worst;
}

/// Rank of an integer matrix by fraction-free Gaussian elimination over ℚ,
/// independent of the Smith form.
inline std::size_t rational_rank(simplicial::IntMatrix m) {
  using simplicial::BigInt;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = m.rows();
    for (std::size_t r = rank; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c).is_zero()) continue;
      BigInt a = m(rank, c), b = m(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = a * m(r, j) - b * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

inline std::vector<simplicial::ComplexPtr> bundled_complexes() {
  using namespace simplicial;
  return {share(tetrahedron_boundary()), share(circle3()), share(torus7()), share(rp2_6()),
          share(rp2_times_circle())};
}

} // namespace test_support
