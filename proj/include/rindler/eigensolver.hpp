#pragma once

// Dense Hermitian eigensolvers for the small (<= 256) matrices of this library.
//
// hermitian_eigenvalues: Householder reduction to a real symmetric tridiagonal
// matrix followed by implicit QL with Wilkinson shifts. hermitian_eigensystem:
// cyclic complex Jacobi, slower but also returns eigenvectors. Both symmetrize
// their input as (M + M^dagger)/2 first.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rindler/errors.hpp"
#include "rindler/tensor.hpp"

namespace rindler {

/// Inputs further than this from Hermitian are rejected.
inline constexpr double kHermitianTolerance = 1e-10;

namespace detail {

inline void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) throw DimensionError(std::string(what) + ": matrix is not square");
  if (m.hermitian_defect() > kHermitianTolerance)
    throw ContractViolation(std::string(what) + ": matrix is not Hermitian within tolerance");
}

// Eigenvalues of the symmetric tridiagonal matrix with diagonal d and
// off-diagonal e (e[i] couples i and i+1, e[n-1] ignored). Sorted ascending
// on return; e is destroyed.
inline void tridiagonal_ql(std::span<double> d, std::span<double> e) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > 60) throw ContractViolation("tridiagonal_ql: no convergence");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
}

// Eigenvalues (ascending, into `out`) of the n x n Hermitian matrix stored
// row-major in `a`, which is destroyed. `v` and `p` are scratch of length n.
inline void hermitian_eigenvalues_core(std::span<Complex> a, std::size_t n, std::span<double> out,
                                       std::span<double> offdiag, std::span<Complex> v, std::span<Complex> p) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(at(i, k));
    const double tail2 = xnorm2 - std::norm(at(k + 1, k));
    if (tail2 <= 0.0) continue;  // column already tridiagonal

    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = at(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;

    // v = (x - alpha e0) / ||x - alpha e0||, H = I - 2 v v^dagger
    for (std::size_t i = 0; i < len; ++i) v[i] = at(k + 1 + i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < len; ++i) vnorm2 += std::norm(v[i]);
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = 0; i < len; ++i) v[i] *= inv;

    // p = A_sub v, K = v^dagger p (real), w = p - K v; A_sub -= 2(v w^dagger + w v^dagger)
    Complex kappa = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < len; ++j) s += at(k + 1 + i, k + 1 + j) * v[j];
      p[i] = s;
      kappa += std::conj(v[i]) * s;
    }
    for (std::size_t i = 0; i < len; ++i) p[i] -= kappa.real() * v[i];
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j)
        at(k + 1 + i, k + 1 + j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));

    at(k + 1, k) = alpha;
    at(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) at(i, k) = at(k, i) = 0.0;
  }

  // A diagonal phase similarity turns the Hermitian tridiagonal into a real one
  // with |off-diagonal| entries; the spectrum is unchanged.
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) offdiag[i] = std::abs(at(i + 1, i));
  tridiagonal_ql(out.first(n), offdiag.first(n));
}

inline std::vector<double> hermitian_eigenvalues_inplace(std::vector<Complex>& a, std::size_t n) {
  std::vector<double> d(n), e(n);
  std::vector<Complex> v(n), p(n);
  hermitian_eigenvalues_core(a, n, d, e, v, p);
  return d;
}

inline std::vector<Complex> symmetrized_copy(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return a;
}

}  // namespace detail

/// All eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  detail::require_hermitian(m, "hermitian_eigenvalues");
  auto a = detail::symmetrized_copy(m);
  return detail::hermitian_eigenvalues_inplace(a, m.rows());
}

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Eigenvalues and orthonormal eigenvectors by cyclic Jacobi rotations.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  detail::require_hermitian(m, "hermitian_eigensystem");
  const std::size_t n = m.rows();
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix w = ComplexMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const Complex phase = a(p, q) / mag;  // a(p,q) = mag * phase
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // V restricted to (p,q): [[c, s], [-s conj(phase), c conj(phase)]]
        const Complex vpp = c, vpq = s, vqp = -s * std::conj(phase), vqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex wkp = w(k, p), wkq = w(k, q);
          w(k, p) = wkp * vpp + wkq * vqp;
          w(k, q) = wkp * vpq + wkq * vqq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = w(i, order[k]);
  }
  return out;
}

/// Connected components of the graph with an edge (i,j) wherever
/// |pattern(i,j)| > tol. A matrix whose entries vanish outside these blocks
/// is block diagonal up to a permutation.
inline std::vector<std::vector<std::size_t>> block_components(const ComplexMatrix& pattern, double tol = 0.0) {
  if (!pattern.is_square()) throw DimensionError("block_components: matrix is not square");
  const std::size_t n = pattern.rows();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(pattern(i, j)) > tol || std::abs(pattern(j, i)) > tol) parent[find(i)] = find(j);

  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i);
  }
  return blocks;
}

/// Eigenvalues of a Hermitian matrix known to be block diagonal over `blocks`
/// (entries outside the blocks are ignored). No validation; hot-path use.
inline std::vector<double> block_hermitian_eigenvalues(const ComplexMatrix& m,
                                                       const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<double> all(m.rows());
  std::vector<Complex> work, v(m.rows()), p(m.rows());
  std::vector<double> e(m.rows());
  std::size_t filled = 0;
  for (const auto& block : blocks) {
    const std::size_t k = block.size();
    work.resize(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        work[i * k + j] = 0.5 * (m(block[i], block[j]) + std::conj(m(block[j], block[i])));
    detail::hermitian_eigenvalues_core(work, k, std::span(all).subspan(filled, k), e, v, p);
    filled += k;
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace rindler
