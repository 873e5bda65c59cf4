#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rindler/density.hpp"
#include "rindler/eigensolver.hpp"
#include "rindler/errors.hpp"
#include "rindler/fock.hpp"
#include "rindler/tensor.hpp"
#include "rindler/unruh.hpp"

namespace rindler {

/// Eigenvalues of the partial transpose below -kEigenNegativeTolerance count
/// towards the negativity.
inline constexpr double kEigenNegativeTolerance = 1e-12;
/// Negativities below this are treated as "no entanglement".
inline constexpr double kZeroNegativity = 1e-10;

/// Which wedge each observer sits in. "Anti" observers live in region II.
enum class Bipartition : std::size_t {
  RobRodney = 0,
  RobAntiRodney = 1,
  AntiRobRodney = 2,
  AntiRobAntiRodney = 3,
};

inline constexpr std::array<Bipartition, 4> kAllBipartitions{
    Bipartition::RobRodney, Bipartition::RobAntiRodney, Bipartition::AntiRobRodney, Bipartition::AntiRobAntiRodney};

/// Global modes kept by the observer pair: slot-1 pair then slot-2 pair, ascending.
inline constexpr std::array<std::size_t, 4> kept_modes(Bipartition b) {
  constexpr std::array<std::size_t, 2> region_one{0, 2}, region_two{1, 3};
  const bool rob = b == Bipartition::RobRodney || b == Bipartition::RobAntiRodney;
  const bool rodney = b == Bipartition::RobRodney || b == Bipartition::AntiRobRodney;
  const auto& first = rob ? region_one : region_two;
  const auto& second = rodney ? region_one : region_two;
  return {first[0], first[1], second[0] + kModesPerSlot, second[1] + kModesPerSlot};
}

inline constexpr std::array<std::size_t, 4> traced_modes(Bipartition b) {
  const auto kept = kept_modes(b);
  std::array<std::size_t, 4> out{};
  std::size_t k = 0;
  for (std::size_t m = 0; m < kTotalModes; ++m)
    if (std::find(kept.begin(), kept.end(), m) == kept.end()) out[k++] = m;
  return out;
}

inline constexpr std::string_view name(Bipartition b) {
  constexpr std::array<std::string_view, 4> names{"RobRodney", "RobAntiRodney", "AntiRobRodney", "AntiRobAntiRodney"};
  return names[static_cast<std::size_t>(b)];
}

/// rr, ra, ar, aa
inline constexpr std::string_view short_name(Bipartition b) {
  constexpr std::array<std::string_view, 4> names{"rr", "ra", "ar", "aa"};
  return names[static_cast<std::size_t>(b)];
}

inline std::optional<Bipartition> parse_bipartition(std::string_view s) {
  for (auto b : kAllBipartitions)
    if (s == short_name(b) || s == name(b)) return b;
  return std::nullopt;
}

struct NegativityResult {
  double value = 0.0;
  double min_eigenvalue = 0.0;
  std::optional<Bipartition> bipartition;
};

/// Sum of |lambda| over eigenvalues below -kEigenNegativeTolerance.
inline NegativityResult negativity_from_spectrum(const std::vector<double>& ascending) {
  NegativityResult r;
  r.min_eigenvalue = ascending.empty() ? 0.0 : ascending.front();
  for (double lambda : ascending) {
    if (lambda >= -kEigenNegativeTolerance) break;
    r.value -= lambda;
  }
  return r;
}

namespace detail {

inline QubitRegister register_for(const ComplexMatrix& rho, const char* what) {
  if (!rho.is_square() || !std::has_single_bit(rho.rows()) || rho.rows() < 2)
    throw ValidationError(std::string(what) + ": shape check failed (need a 2^n x 2^n matrix)");
  return QubitRegister(static_cast<std::size_t>(std::countr_zero(rho.rows())));
}

inline NegativityResult negativity_unchecked(const ComplexMatrix& rho, const QubitRegister& reg,
                                             std::span<const std::size_t> cut) {
  auto pt = partial_transpose(rho, reg, cut);
  auto work = symmetrized_copy(pt);
  return negativity_from_spectrum(hermitian_eigenvalues_inplace(work, pt.rows()));
}

inline constexpr std::array<std::size_t, 1> kSecondQubit{1};
inline constexpr std::array<std::size_t, 2> kSlotTwoPair{2, 3};

}  // namespace detail

/// Qubit partial trace of a 256-dim Rindler state onto the observer pair's
/// modes. Output qubits: slot-1 kept modes, then slot-2 kept modes.
/// Checks shape, Hermiticity and trace; positivity is the caller's promise.
inline ComplexMatrix reduce(const ComplexMatrix& rho256, Bipartition b) {
  if (!rho256.is_square() || rho256.rows() != kFockDim) throw ValidationError("reduce: shape check failed (need 256x256)");
  if (rho256.hermitian_defect() > kDensityTolerance) throw ValidationError("reduce: hermitian check failed");
  if (std::abs(rho256.trace() - 1.0) > kDensityTolerance) throw ValidationError("reduce: trace check failed");
  const auto traced = traced_modes(b);
  return partial_trace(rho256, QubitRegister(kTotalModes), traced);
}

/// Negativity of `rho` across the cut that transposes `cut_qubits`.
inline NegativityResult negativity(const ComplexMatrix& rho, std::span<const std::size_t> cut_qubits) {
  const auto reg = detail::register_for(rho, "negativity");
  validate_density(rho, rho.rows(), "negativity");
  return detail::negativity_unchecked(rho.hermitian_part(), reg, cut_qubits);
}

/// Negativity of a 4x4 Unruh-basis state between the two Unruh modes.
inline NegativityResult inertial_negativity(const ComplexMatrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw ValidationError("inertial_negativity: shape check failed (need 4x4)");
  return negativity(rho4, detail::kSecondQubit);
}

class BipartitionNegativities {
 public:
  NegativityResult& operator[](Bipartition b) { return values_[static_cast<std::size_t>(b)]; }
  const NegativityResult& operator[](Bipartition b) const { return values_[static_cast<std::size_t>(b)]; }

 private:
  std::array<NegativityResult, 4> values_{};
};

/// Embed, reduce onto each observer pair and take the negativity across the
/// slot-1 / slot-2 cut.
inline BipartitionNegativities all_bipartition_negativities(const ComplexMatrix& rho4, const UnruhParams& params) {
  const ComplexMatrix rho256 = embed_state(rho4, params);
  BipartitionNegativities out;
  for (auto b : kAllBipartitions) {
    const ComplexMatrix reduced = reduce(rho256, b).hermitian_part();
    out[b] = detail::negativity_unchecked(reduced, QubitRegister(4), detail::kSlotTwoPair);
    out[b].bipartition = b;
  }
  return out;
}

/// Tr_traced |u><v| for 256-dim u, v, without forming the outer product.
inline ComplexMatrix reduced_outer(const StateVector& u, const StateVector& v, Bipartition b) {
  if (u.dim() != kFockDim || v.dim() != kFockDim) throw DimensionError("reduced_outer: expected 256-dim vectors");
  const QubitRegister full(kTotalModes);
  const auto kept = kept_modes(b);
  const auto traced = traced_modes(b);
  std::array<std::size_t, 16> kept_full{}, traced_full{};
  for (std::size_t p = 0; p < 16; ++p)
    for (std::size_t k = 0; k < 4; ++k)
      if (p & (std::size_t{1} << (3 - k))) {
        kept_full[p] |= full.mask(kept[k]);
        traced_full[p] |= full.mask(traced[k]);
      }
  ComplexMatrix out(16, 16);
  for (std::size_t t = 0; t < 16; ++t)
    for (std::size_t x = 0; x < 16; ++x) {
      const Complex ux = u[kept_full[x] | traced_full[t]];
      if (ux == Complex{}) continue;
      for (std::size_t y = 0; y < 16; ++y) out(x, y) += ux * std::conj(v[kept_full[y] | traced_full[t]]);
    }
  return out;
}

/// Precomputed linear map rho4 -> partial transpose of the reduced 16x16
/// state for fixed (params, bipartition). Only entries inside the structural
/// blocks of that map are stored, so an evaluation costs a few small
/// eigensolves instead of a 256-dim embedding. Immutable after construction.
class NegativityKernel {
 public:
  /// Partial transpose of a reduced state, restricted to the kernel's blocks
  /// (block after block, each row-major).
  using CompactState = std::vector<Complex>;

  NegativityKernel(const UnruhParams& params, Bipartition b) : NegativityKernel(unruh_basis_kets(params), b) {}

  /// From already embedded Unruh basis kets (see unruh_basis_kets).
  NegativityKernel(const std::array<StateVector, 4>& kets, Bipartition b) : bipartition_(b) {
    const QubitRegister kept(4);
    std::array<ComplexMatrix, 16> terms;
    ComplexMatrix pattern(16, 16);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t c = 0; c < 4; ++c) {
        auto& t = terms[a * 4 + c] = partial_transpose(reduced_outer(kets[a], kets[c], b), kept, detail::kSlotTwoPair);
        for (std::size_t k = 0; k < t.data().size(); ++k)
          if (t.data()[k] != Complex{}) pattern.data()[k] = 1.0;
      }
    blocks_ = block_components(pattern);
    for (const auto& block : blocks_)
      for (auto i : block)
        for (auto j : block) entries_.push_back(i * 16 + j);
    for (std::size_t t = 0; t < 16; ++t) {
      terms_[t].reserve(entries_.size());
      for (auto e : entries_) terms_[t].push_back(terms[t].data()[e]);
    }
  }

  Bipartition bipartition() const noexcept { return bipartition_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

  /// Linear in rho4; no validation.
  CompactState compact_state(const ComplexMatrix& rho4) const {
    CompactState m(entries_.size());
    for (std::size_t t = 0; t < 16; ++t) {
      const Complex w = rho4(t / 4, t % 4);
      if (w == Complex{}) continue;
      const auto& term = terms_[t];
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += w * term[k];
    }
    return m;
  }

  /// Partial transpose of the reduced state of rho4 as a full 16x16 matrix.
  ComplexMatrix transposed_reduced_state(const ComplexMatrix& rho4) const {
    const auto compact = compact_state(rho4);
    ComplexMatrix m(16, 16);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.data()[entries_[k]] = compact[k];
    return m;
  }

  NegativityResult evaluate(std::span<const Complex> compact) const {
    std::array<Complex, 256> work{};
    std::array<Complex, 16> v{}, p{};
    std::array<double, 16> values{}, offdiag{};
    std::size_t offset = 0, filled = 0;
    for (const auto& block : blocks_) {
      const std::size_t k = block.size();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          work[i * k + j] = 0.5 * (compact[offset + i * k + j] + std::conj(compact[offset + j * k + i]));
      detail::hermitian_eigenvalues_core(std::span(work).first(k * k), k, std::span(values).subspan(filled, k),
                                         offdiag, v, p);
      offset += k * k;
      filled += k;
    }
    std::sort(values.begin(), values.end());
    auto r = negativity_from_spectrum(std::vector<double>(values.begin(), values.end()));
    r.bipartition = bipartition_;
    return r;
  }

  /// Negativity of rho4 for this kernel's bipartition. rho4 is trusted to be a
  /// valid density matrix.
  NegativityResult operator()(const ComplexMatrix& rho4) const { return evaluate(compact_state(rho4)); }

 private:
  Bipartition bipartition_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> entries_;  // flat 16x16 indices, block by block
  std::array<CompactState, 16> terms_;
};

}  // namespace rindler
