#pragma once

// Fermionic Fock space of the eight Rindler modes probed by two observers.
//
// Each frequency slot carries four modes, in the order of the |ijkl> kets
//
//   |ijkl> = (c_I^dag)^i (d_II^dag)^j (d_I^dag)^k (c_II^dag)^l |0>
//
// and slot 1 precedes slot 2 in the global Jordan-Wigner order:
//
//   0:(c_I,w1) 1:(d_II,w1) 2:(d_I,w1) 3:(c_II,w1) 4:(c_I,w2) 5:(d_II,w2) 6:(d_I,w2) 7:(c_II,w2)
//
// Mode m is qubit m of the register (bit 7 - m of the 256-dim basis index).
// Creating or annihilating mode m picks up (-1)^(occupied modes before m),
// which makes the ordered products above carry sign +1.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>

#include "rindler/errors.hpp"
#include "rindler/tensor.hpp"

namespace rindler {

inline constexpr std::size_t kModesPerSlot = 4;
inline constexpr std::size_t kTotalModes = 8;
inline constexpr std::size_t kSlotDim = 16;
inline constexpr std::size_t kFockDim = 256;

enum class Species : std::uint8_t {
  ParticleI = 0,       // c_I
  AntiparticleII = 1,  // d_II
  AntiparticleI = 2,   // d_I
  ParticleII = 3,      // c_II
};

enum class FrequencySlot : std::uint8_t { One = 1, Two = 2 };

inline constexpr bool in_region_one(Species s) noexcept {
  return s == Species::ParticleI || s == Species::AntiparticleI;
}

struct ModeId {
  FrequencySlot slot = FrequencySlot::One;
  Species species = Species::ParticleI;

  constexpr std::size_t local_index() const noexcept { return static_cast<std::size_t>(species); }
  constexpr std::size_t global_index() const noexcept {
    return (slot == FrequencySlot::One ? 0 : kModesPerSlot) + local_index();
  }

  static ModeId from_global(std::size_t index) {
    if (index >= kTotalModes) throw IndexError("ModeId: global index " + std::to_string(index) + " out of range");
    return {index < kModesPerSlot ? FrequencySlot::One : FrequencySlot::Two,
            static_cast<Species>(index % kModesPerSlot)};
  }

  friend constexpr bool operator==(const ModeId&, const ModeId&) = default;
};

/// Occupation pattern over the global mode order (mode 0 = most significant bit).
struct FockBasisIndex {
  std::uint8_t bits = 0;

  constexpr bool occupied(std::size_t global_mode) const noexcept {
    return (bits >> (kTotalModes - 1 - global_mode)) & 1u;
  }
  /// The |ijkl> nibble of one frequency slot.
  constexpr std::uint8_t slot_nibble(FrequencySlot slot) const noexcept {
    return slot == FrequencySlot::One ? static_cast<std::uint8_t>(bits >> 4) : static_cast<std::uint8_t>(bits & 0xF);
  }
  static constexpr FockBasisIndex from_nibbles(std::uint8_t slot1, std::uint8_t slot2) noexcept {
    return {static_cast<std::uint8_t>(((slot1 & 0xF) << 4) | (slot2 & 0xF))};
  }
};

namespace detail {

struct ModeLayout {
  std::size_t n_modes;
  std::size_t position;
};

// On a 16-dim vector only the slot's own four modes exist, so the species
// position is used and the slot is ignored.
inline ModeLayout layout_for(const ModeId& mode, const StateVector& v, const char* what) {
  if (v.dim() == kFockDim) return {kTotalModes, mode.global_index()};
  if (v.dim() == kSlotDim) return {kModesPerSlot, mode.local_index()};
  throw DimensionError(std::string(what) + ": expected a 16- or 256-dim vector, got " + std::to_string(v.dim()));
}

inline double jordan_wigner_sign(std::size_t index, const ModeLayout& layout) noexcept {
  const std::size_t earlier = layout.position == 0 ? 0 : index >> (layout.n_modes - layout.position);
  return (std::popcount(earlier) & 1) ? -1.0 : 1.0;
}

template <bool Create>
StateVector apply_ladder(const ModeId& mode, const StateVector& v, const char* what) {
  const ModeLayout layout = layout_for(mode, v, what);
  const std::size_t bit = std::size_t{1} << (layout.n_modes - 1 - layout.position);
  StateVector out(v.dim());
  for (std::size_t idx = 0; idx < v.dim(); ++idx) {
    if (v[idx] == Complex{}) continue;
    const bool occupied = idx & bit;
    if (occupied == Create) continue;
    out[idx ^ bit] += jordan_wigner_sign(idx, layout) * v[idx];
  }
  return out;
}

}  // namespace detail

/// a^dagger_mode v
inline StateVector apply_creation(const ModeId& mode, const StateVector& v) {
  return detail::apply_ladder<true>(mode, v, "apply_creation");
}

/// a_mode v
inline StateVector apply_annihilation(const ModeId& mode, const StateVector& v) {
  return detail::apply_ladder<false>(mode, v, "apply_annihilation");
}

/// Embeds a single-frequency ket into the two-frequency space with the other
/// slot in its Rindler vacuum.
inline StateVector lift_single_frequency(const StateVector& v, FrequencySlot slot) {
  if (v.dim() != kSlotDim) throw DimensionError("lift_single_frequency: expected a 16-dim vector");
  StateVector out(kFockDim);
  for (std::size_t n = 0; n < kSlotDim; ++n) {
    const auto nib = static_cast<std::uint8_t>(n);
    const auto idx = slot == FrequencySlot::One ? FockBasisIndex::from_nibbles(nib, 0) : FockBasisIndex::from_nibbles(0, nib);
    out[idx.bits] = v[n];
  }
  return out;
}

}  // namespace rindler
