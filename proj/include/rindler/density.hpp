#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include "rindler/eigensolver.hpp"
#include "rindler/errors.hpp"
#include "rindler/tensor.hpp"

namespace rindler {

/// Default tolerance for density-matrix validation.
inline constexpr double kDensityTolerance = 1e-10;

/// Throws ValidationError naming the failing check (shape, hermitian, trace, psd).
inline void validate_density(const ComplexMatrix& rho, std::size_t expected_dim, const char* what,
                             double tol = kDensityTolerance) {
  const std::string prefix(what);
  if (!rho.is_square() || (expected_dim != 0 && rho.rows() != expected_dim))
    throw ValidationError(prefix + ": shape check failed (expected " + std::to_string(expected_dim) + "x" +
                          std::to_string(expected_dim) + ")");
  if (rho.hermitian_defect() > tol) throw ValidationError(prefix + ": hermitian check failed");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) throw ValidationError(prefix + ": trace check failed (trace = " + std::to_string(tr.real()) + ")");
  const auto ev = hermitian_eigenvalues(rho);
  if (ev.front() < -tol)
    throw ValidationError(prefix + ": psd check failed (min eigenvalue = " + std::to_string(ev.front()) + ")");
}

}  // namespace rindler
