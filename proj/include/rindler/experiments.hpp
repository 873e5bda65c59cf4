#pragma once

// The three pipelines: Monte Carlo extinction survey, (r1, r2) sweep over
// all observer pairs, and the mixedness scan towards a Bell state.
//
// Work items (samples, grid cells) are independent. Each worker writes only
// its own slots of a preallocated result vector and reductions run in index
// order afterwards, so the output does not depend on the worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "rindler/ensembles.hpp"
#include "rindler/entanglement.hpp"
#include "rindler/errors.hpp"
#include "rindler/unruh.hpp"

namespace rindler {

/// Calls fn(i) for i in [0, n) on up to `workers` threads (strided split).
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(used);
  for (unsigned w = 0; w < used; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += used) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- survey

struct SurveyConfig {
  std::size_t n_samples = 100000;
  double qR = 1.0;
  double qL_phase = 0.0;
  std::uint64_t seed = 0;
  double r1 = kQuarterPi;  // extinction point
  double r2 = kQuarterPi;
  std::size_t histogram_bins = 100;
  double histogram_max = 0.5;

  void validate() const {
    if (n_samples < 1) throw ValidationError("survey: n_samples must be at least 1");
    if (histogram_bins < 1) throw ValidationError("survey: histogram_bins must be at least 1");
    UnruhParams::make(r1, r2, qR, qL_phase);
  }
};

struct SurveySample {
  std::size_t index = 0;
  double inertial_negativity = 0.0;
  bool extinct = false;  // entangled inertially, no Rob-Rodney entanglement at the extinction point

  friend bool operator==(const SurveySample&, const SurveySample&) = default;
};

struct SurveyResult {
  SurveyConfig config;
  std::size_t n_samples = 0;
  std::size_t n_entangled = 0;
  std::size_t n_extinct = 0;
  std::vector<std::size_t> histogram;  // inertial negativity of entangled samples on [0, histogram_max]
  std::vector<SurveySample> samples;

  double fraction_entangled() const {
    return n_samples == 0 ? 0.0 : static_cast<double>(n_entangled) / static_cast<double>(n_samples);
  }
  double fraction_extinct_given_entangled() const {
    return n_entangled == 0 ? 0.0 : static_cast<double>(n_extinct) / static_cast<double>(n_entangled);
  }
};

inline SurveyResult run_survey(const SurveyConfig& cfg, unsigned workers = 1) {
  cfg.validate();
  const NegativityKernel rob_rodney(UnruhParams::make(cfg.r1, cfg.r2, cfg.qR, cfg.qL_phase), Bipartition::RobRodney);
  const SeededRng rng(cfg.seed);
  const QubitRegister two_modes(2);

  SurveyResult result;
  result.config = cfg;
  result.n_samples = cfg.n_samples;
  result.samples.resize(cfg.n_samples);
  parallel_for(cfg.n_samples, workers, [&](std::size_t i) {
    const ComplexMatrix rho = ginibre_density(rng, i);
    const double inertial = detail::negativity_unchecked(rho, two_modes, detail::kSecondQubit).value;
    const bool entangled = inertial > kZeroNegativity;
    const bool extinct = entangled && rob_rodney(rho).value < kZeroNegativity;
    result.samples[i] = {i, inertial, extinct};
  });

  result.histogram.assign(cfg.histogram_bins, 0);
  const double width = cfg.histogram_max / static_cast<double>(cfg.histogram_bins);
  for (const auto& s : result.samples) {
    if (!(s.inertial_negativity > kZeroNegativity)) continue;
    ++result.n_entangled;
    if (s.extinct) ++result.n_extinct;
    const auto bin = static_cast<std::size_t>(s.inertial_negativity / width);
    ++result.histogram[std::min(bin, cfg.histogram_bins - 1)];
  }
  return result;
}

// ---------------------------------------------------------------- sweep

struct SweepCell {
  double r1 = 0.0;
  double r2 = 0.0;
  double n_rr = 0.0;
  double n_ra = 0.0;
  double n_ar = 0.0;
  double n_aa = 0.0;

  double operator[](Bipartition b) const {
    switch (b) {
      case Bipartition::RobRodney: return n_rr;
      case Bipartition::RobAntiRodney: return n_ra;
      case Bipartition::AntiRobRodney: return n_ar;
      case Bipartition::AntiRobAntiRodney: return n_aa;
    }
    return 0.0;
  }

  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

struct SweepResult {
  std::size_t grid_n = 0;
  double qR = 1.0;
  std::vector<SweepCell> cells;  // row-major: r1 outer, r2 inner

  const SweepCell& at(std::size_t i1, std::size_t i2) const { return cells[i1 * grid_n + i2]; }
};

/// k-th of n uniform points on [0, pi/4], endpoints exact.
inline double grid_angle(std::size_t k, std::size_t n) {
  if (k + 1 == n) return kQuarterPi;
  return kQuarterPi * static_cast<double>(k) / static_cast<double>(n - 1);
}

inline SweepResult run_sweep(const ComplexMatrix& rho4, double qR, std::size_t grid_n, unsigned workers = 1,
                             double qL_phase = 0.0) {
  if (grid_n < 2) throw ValidationError("sweep: grid must have at least 2 points per axis");
  validate_density(rho4, 4, "sweep");
  UnruhParams::make(0.0, 0.0, qR, qL_phase);
  const ComplexMatrix rho = rho4.hermitian_part();

  SweepResult result{grid_n, qR, std::vector<SweepCell>(grid_n * grid_n)};
  parallel_for(grid_n * grid_n, workers, [&](std::size_t cell) {
    const double r1 = grid_angle(cell / grid_n, grid_n);
    const double r2 = grid_angle(cell % grid_n, grid_n);
    const auto kets = unruh_basis_kets(UnruhParams::make(r1, r2, qR, qL_phase));
    std::array<double, 4> n{};
    for (auto b : kAllBipartitions) n[static_cast<std::size_t>(b)] = NegativityKernel(kets, b)(rho).value;
    result.cells[cell] = {r1, r2, n[0], n[1], n[2], n[3]};
  });
  return result;
}

// ---------------------------------------------------------------- radius

struct RadiusConfig {
  std::size_t n_samples = 100000;
  double p_step = 0.01;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_samples < 1) throw ValidationError("radius: n_samples must be at least 1");
    if (!(p_step > 0.0 && p_step <= 0.5)) throw ValidationError("radius: p_step must lie in (0, 0.5]");
  }
};

struct RadiusSample {
  std::size_t index = 0;
  double first_zero_p = std::numeric_limits<double>::quiet_NaN();  // NaN: survives up to p = 1

  friend bool operator==(const RadiusSample& a, const RadiusSample& b) {
    return a.index == b.index &&
           (a.first_zero_p == b.first_zero_p || (std::isnan(a.first_zero_p) && std::isnan(b.first_zero_p)));
  }
};

struct RadiusResult {
  RadiusConfig config;
  double p_min = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::size_t> argmin_index;
  std::optional<ComplexMatrix> argmin_state;
  std::vector<RadiusSample> samples;
};

/// Mixing weights 0, step, 2 step, ... up to 1.
inline std::vector<double> radius_p_grid(double p_step) {
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double p = static_cast<double>(k) * p_step;
    if (p > 1.0 + 1e-12) break;
    grid.push_back(std::min(p, 1.0));
  }
  return grid;
}

/// Rob-Rodney negativity at infinite acceleration under the single mode
/// approximation: the criterion of the radius scan.
inline NegativityKernel infinite_acceleration_kernel() {
  return NegativityKernel(UnruhParams::sma(kQuarterPi, kQuarterPi), Bipartition::RobRodney);
}

/// Rob-Rodney negativity at infinite acceleration (single mode approximation)
/// along (1 - p)|Psi><Psi| + p a. The map is linear, so both endpoints are
/// reduced once and mixed per p.
class MixedFamilyScan {
 public:
  MixedFamilyScan(const NegativityKernel& kernel, const ComplexMatrix& a)
      : kernel_(kernel), bell_(kernel.compact_state(bell_psi_state())), a_(kernel.compact_state(a)), mix_(bell_.size()) {}

  double operator()(double p) {
    for (std::size_t k = 0; k < mix_.size(); ++k) mix_[k] = (1.0 - p) * bell_[k] + p * a_[k];
    return kernel_.evaluate(mix_).value;
  }

 private:
  const NegativityKernel& kernel_;
  NegativityKernel::CompactState bell_, a_, mix_;
};

/// First grid p with no Rob-Rodney entanglement at infinite acceleration;
/// NaN if there is none.
inline double first_zero_p(const NegativityKernel& kernel, const ComplexMatrix& a, const std::vector<double>& p_grid) {
  MixedFamilyScan scan(kernel, a);
  for (double p : p_grid)
    if (scan(p) < kZeroNegativity) return p;
  return std::numeric_limits<double>::quiet_NaN();
}

inline RadiusResult run_radius_scan(const RadiusConfig& cfg, unsigned workers = 1) {
  cfg.validate();
  const NegativityKernel kernel = infinite_acceleration_kernel();
  const SeededRng rng(cfg.seed);
  const auto p_grid = radius_p_grid(cfg.p_step);

  RadiusResult result;
  result.config = cfg;
  result.samples.resize(cfg.n_samples);
  parallel_for(cfg.n_samples, workers, [&](std::size_t i) {
    result.samples[i] = {i, first_zero_p(kernel, ginibre_density(rng, i), p_grid)};
  });

  for (const auto& s : result.samples)
    if (!std::isnan(s.first_zero_p) && (!result.argmin_index || s.first_zero_p < result.p_min)) {
      result.p_min = s.first_zero_p;
      result.argmin_index = s.index;
    }
  if (result.argmin_index) result.argmin_state = ginibre_density(rng, *result.argmin_index);
  return result;
}

/// Re-checks the reported minimum: zero negativity at p_min, nonzero at every
/// scanned p below it.
inline bool radius_bracketing_holds(const RadiusResult& r) {
  if (!r.argmin_state) return true;
  const auto kernel = infinite_acceleration_kernel();
  MixedFamilyScan n_at(kernel, *r.argmin_state);
  if (!(n_at(r.p_min) < kZeroNegativity)) return false;
  for (double p : radius_p_grid(r.config.p_step)) {
    if (p >= r.p_min) break;
    if (n_at(p) < kZeroNegativity) return false;
  }
  return true;
}

}  // namespace rindler
