#pragma once

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "rindler/ensembles.hpp"
#include "rindler/tensor.hpp"

namespace rindler::testing {

inline ComplexMatrix random_hermitian(SampleStream& s, std::size_t n) {
  return ginibre_matrix(s, n, n).hermitian_part();
}

inline StateVector random_vector(SampleStream& s, std::size_t n) {
  StateVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = s.complex_normal();
  return v;
}

inline ComplexMatrix random_density(std::uint64_t seed, std::size_t n = 4) {
  return ginibre_density(SeededRng(seed), 0, n);
}

/// Eigenvalues of diag(ev) padded with zeros, sorted.
inline std::vector<double> padded(std::vector<double> ev, std::size_t n) {
  ev.resize(n, 0.0);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline void expect_matrix_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LE(max_abs_diff(a, b), tol);
}

inline void expect_vector_near(const StateVector& a, const StateVector& b, double tol) {
  ASSERT_EQ(a.dim(), b.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  EXPECT_LE(worst, tol);
}

}  // namespace rindler::testing
