#pragma once

// Unruh modes in the Rindler basis and the embedding of two-mode Unruh-basis
// density matrices into the 256-dim Rindler Fock space.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "rindler/density.hpp"
#include "rindler/errors.hpp"
#include "rindler/fock.hpp"
#include "rindler/tensor.hpp"

namespace rindler {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// Acceleration angle r with tan r = exp(-pi * omega / a). r = 0 is an
/// inertial observer, r = pi/4 the infinite-acceleration limit.
/// `omega_over_a` may be +inf (returns 0) or 0 (returns pi/4).
inline double r_from_acceleration(double omega_over_a) {
  if (!(omega_over_a >= 0.0)) throw ValidationError("r_from_acceleration: omega/a must be nonnegative");
  if (std::isinf(omega_over_a)) return 0.0;
  return std::atan(std::exp(-std::numbers::pi * omega_over_a));
}

inline void validate_r(double r, const char* what) {
  if (!(r >= 0.0 && r <= kQuarterPi))
    throw ValidationError(std::string(what) + ": acceleration angle r=" + std::to_string(r) + " outside [0, pi/4]");
}

/// Physical knobs of the embedding. The excitation of slot i is
/// qR_i C_R^dag + qL_i C_L^dag with qL_i = exp(i qL_phase) sqrt(1 - qR_i^2).
struct UnruhParams {
  double r1 = 0.0;
  double r2 = 0.0;
  std::array<double, 2> qR{1.0, 1.0};
  double qL_phase = 0.0;

  /// Shared qR for both frequencies.
  static UnruhParams make(double r1, double r2, double qR, double qL_phase = 0.0) {
    UnruhParams p{r1, r2, {qR, qR}, qL_phase};
    p.validate();
    return p;
  }
  /// Single mode approximation, qR = 1.
  static UnruhParams sma(double r1, double r2) { return make(r1, r2, 1.0); }

  double r(FrequencySlot slot) const noexcept { return slot == FrequencySlot::One ? r1 : r2; }
  double q_right(FrequencySlot slot) const noexcept { return qR[slot == FrequencySlot::One ? 0 : 1]; }
  Complex q_left(FrequencySlot slot) const {
    const double q = q_right(slot);
    return std::polar(std::sqrt(std::max(0.0, 1.0 - q * q)), qL_phase);
  }

  void validate() const {
    validate_r(r1, "UnruhParams");
    validate_r(r2, "UnruhParams");
    for (double q : qR)
      if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("UnruhParams: qR=" + std::to_string(q) + " outside [0, 1]");
    if (!std::isfinite(qL_phase)) throw ValidationError("UnruhParams: qL phase must be finite");
  }
};

/// Basis of the two-mode Unruh space, in matrix order |00>, |01>, |10>, |11>
/// where the left label belongs to frequency slot 1.
enum class UnruhBasisState : std::size_t { Vac = 0, Slot2 = 1, Slot1 = 2, Both = 3 };

/// cos^2 r |0000> - sin r cos r |0011> + sin r cos r |1100> - sin^2 r |1111>
inline StateVector unruh_vacuum(double r) {
  validate_r(r, "unruh_vacuum");
  const double c = std::cos(r), s = std::sin(r);
  StateVector v(kSlotDim);
  v[0b0000] = c * c;
  v[0b0011] = -s * c;
  v[0b1100] = s * c;
  v[0b1111] = -s * s;
  return v;
}

/// (qR C_R^dag + qL C_L^dag) v for the Unruh creators of `slot`:
///   C_R^dag = cos r c_I^dag - sin r d_II,   C_L^dag = cos r c_II^dag - sin r d_I.
/// Works on 16-dim (single slot) and 256-dim vectors.
inline StateVector apply_unruh_creation(FrequencySlot slot, double r, double qR, Complex qL, const StateVector& v) {
  const double c = std::cos(r), s = std::sin(r);
  const ModeId cI{slot, Species::ParticleI}, dII{slot, Species::AntiparticleII};
  const ModeId dI{slot, Species::AntiparticleI}, cII{slot, Species::ParticleII};
  StateVector out(v.dim());
  if (qR != 0.0) {
    out += (qR * c) * apply_creation(cI, v);
    out -= (qR * s) * apply_annihilation(dII, v);
  }
  if (qL != Complex{}) {
    out += (qL * c) * apply_creation(cII, v);
    out -= (qL * s) * apply_annihilation(dI, v);
  }
  return out;
}

inline void validate_q(double qR, Complex qL, const char* what) {
  if (std::abs(qR * qR + std::norm(qL) - 1.0) > 1e-12)
    throw ValidationError(std::string(what) + ": |qR|^2 + |qL|^2 must equal 1");
}

/// Single-frequency Unruh excitation (qR C_R^dag + qL C_L^dag)|0>_U.
inline StateVector unruh_excitation(double r, double qR, Complex qL) {
  validate_q(qR, qL, "unruh_excitation");
  return apply_unruh_creation(FrequencySlot::One, r, qR, qL, unruh_vacuum(r));
}

/// The four Unruh basis kets as 256-dim Rindler vectors, in basis order.
/// |11> is C^dag_{w1} C^dag_{w2} |0>_U (slot-1 creator applied last).
inline std::array<StateVector, 4> unruh_basis_kets(const UnruhParams& params) {
  params.validate();
  constexpr auto one = FrequencySlot::One, two = FrequencySlot::Two;
  for (auto slot : {one, two}) validate_q(params.q_right(slot), params.q_left(slot), "unruh_basis_kets");

  auto create = [&](FrequencySlot slot, const StateVector& v) {
    return apply_unruh_creation(slot, params.r(slot), params.q_right(slot), params.q_left(slot), v);
  };
  const StateVector vac = kron(unruh_vacuum(params.r1), unruh_vacuum(params.r2));
  StateVector k01 = create(two, vac);
  StateVector k10 = create(one, vac);
  StateVector k11 = create(one, k01);
  return {vac, std::move(k01), std::move(k10), std::move(k11)};
}

/// Sum_ab rho4(a,b) |a><b| over the embedded Unruh basis kets.
inline ComplexMatrix embed_state(const ComplexMatrix& rho4, const UnruhParams& params) {
  validate_density(rho4, 4, "embed_state");
  const ComplexMatrix rho = rho4.hermitian_part();
  const auto kets = unruh_basis_kets(params);
  ComplexMatrix out(kFockDim, kFockDim);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const Complex w = rho(a, b);
      if (w == Complex{}) continue;
      for (std::size_t i = 0; i < kFockDim; ++i) {
        const Complex wi = w * kets[a][i];
        if (wi == Complex{}) continue;
        for (std::size_t j = 0; j < kFockDim; ++j) out(i, j) += wi * std::conj(kets[b][j]);
      }
    }
  return out;
}

}  // namespace rindler
