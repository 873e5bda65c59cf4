// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rindler/ensembles.hpp"
#include "rindler/entanglement.hpp"
#include "rindler/experiments.hpp"
#include "rindler/fock.hpp"
#include "rindler/io.hpp"
#include "rindler/unruh.hpp"

namespace {

using namespace rindler;

constexpr std::uint64_t kSeed = 2011;
constexpr std::size_t kSurveySamples = 100000;
constexpr std::size_t kEntangledSamples = 100000;

int failures = 0;

void report(bool ok, const std::string& id, const std::string& detail) {
  std::printf("%s  [%s] %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

struct Extinction {
  double fraction = 0.0;
  std::size_t entangled = 0;
  std::size_t drawn = 0;
};

// Extinction fraction over the first n entangled samples (index order).
Extinction extinction_over_entangled(double qR, std::size_t n) {
  SurveyConfig cfg;
  cfg.qR = qR;
  cfg.seed = kSeed;
  cfg.n_samples = n + n / 2;
  while (true) {
    const auto r = run_survey(cfg, default_workers());
    if (r.n_entangled >= n) {
      Extinction e;
      for (const auto& s : r.samples) {
        if (!(s.inertial_negativity > kZeroNegativity)) continue;
        e.fraction += s.extinct;
        e.drawn = s.index + 1;
        if (++e.entangled == n) break;
      }
      e.fraction /= static_cast<double>(n);
      return e;
    }
    cfg.n_samples *= 2;
  }
}

// Unimodal up to counting noise: rises to the argmax and falls after it,
// each step allowed to go the wrong way by 3 standard deviations.
bool unimodal(const std::vector<std::size_t>& c, std::size_t& mode) {
  mode = 0;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] > c[mode]) mode = i;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double a = static_cast<double>(c[i]), b = static_cast<double>(c[i + 1]);
    const double tol = 3.0 * std::sqrt(a + b);
    if (i < mode && b < a - tol) return false;
    if (i >= mode && b > a + tol) return false;
  }
  return true;
}

void survey_criteria() {
  SurveyConfig cfg;
  cfg.n_samples = kSurveySamples;
  cfg.seed = kSeed;
  const auto r = run_survey(cfg, default_workers());
  const double f = r.fraction_entangled();
  report(within(f, 0.749, 0.769), "1 survey abundance",
         "fraction entangled " + fmt(f) + " over " + std::to_string(r.n_samples) + " samples, want [0.749, 0.769]");

  std::size_t mode = 0;
  const bool uni = unimodal(r.histogram, mode);
  const double separable = 1.0 - f;
  report(uni && std::abs(separable - 0.24) <= 0.015, "histogram",
         std::string(uni ? "unimodal" : "not unimodal") + " (mode bin " + std::to_string(mode) + "), separable mass " +
             fmt(separable) + ", want 0.24 +- 0.015");

  const double q_mid = 0.97, q_balanced = 1.0 / std::numbers::sqrt2;
  const auto e1 = extinction_over_entangled(1.0, kEntangledSamples);
  const auto e2 = extinction_over_entangled(q_mid, kEntangledSamples);
  const auto e3 = extinction_over_entangled(q_balanced, kEntangledSamples);
  auto line = [](const char* q, const Extinction& e, double want) {
    return std::string("qR=") + q + ": " + fmt(e.fraction) + " (want " + fmt(want) + " +- 0.02, " +
           std::to_string(e.entangled) + " entangled of " + std::to_string(e.drawn) + " drawn)";
  };
  report(std::abs(e1.fraction - 0.85) <= 0.02, "2a extinction", line("1", e1, 0.85));
  report(std::abs(e2.fraction - 0.79) <= 0.02, "2b extinction", line("0.97", e2, 0.79));
  report(std::abs(e3.fraction - 0.75) <= 0.02, "2c extinction", line("1/sqrt2", e3, 0.75));
  report(e1.fraction > e2.fraction && e2.fraction > e3.fraction, "2d extinction ordering",
         fmt(e1.fraction) + " > " + fmt(e2.fraction) + " > " + fmt(e3.fraction));
}

void w_state_criteria() {
  const double expected = (std::sqrt(5.0) - 1.0) / 6.0;
  const double n = inertial_negativity(w_reduced_state()).value;
  report(std::abs(n - expected) <= 1e-10, "3a W inertial negativity",
         fmt(n, 17) + " vs (sqrt5-1)/6 = " + fmt(expected, 17));

  const auto at_limit = all_bipartition_negativities(w_reduced_state(), UnruhParams::sma(kQuarterPi, kQuarterPi));
  double worst = 0.0;
  for (auto b : kAllBipartitions) worst = std::max(worst, at_limit[b].value);
  report(worst < 1e-10, "3b W extinction", "max over bipartitions at (pi/4, pi/4) = " + fmt(worst) + ", want < 1e-10");

  const auto sweep = run_sweep(w_reduced_state(), 1.0, 64, default_workers());
  double aa = 0.0;
  for (const auto& c : sweep.cells) aa = std::max(aa, c.n_aa);
  report(aa < 1e-12, "3c W AntiRob-AntiRodney", "max N_AA on 64x64 grid = " + fmt(aa) + ", want < 1e-12");
}

void radius_criteria() {
  RadiusConfig cfg;
  cfg.n_samples = 100000;
  cfg.p_step = 0.01;
  cfg.seed = kSeed;
  const auto r = run_radius_scan(cfg, default_workers());
  report(within(r.p_min, 0.26, 0.33) && radius_bracketing_holds(r), "4a radius of survival",
         "p_min " + fmt(r.p_min) + " (sample " + (r.argmin_index ? std::to_string(*r.argmin_index) : "none") +
             "), want [0.26, 0.33], bracketing " + (radius_bracketing_holds(r) ? "ok" : "broken"));
  const double bell = all_bipartition_negativities(bell_psi_state(), UnruhParams::sma(kQuarterPi, kQuarterPi))
                          [Bipartition::RobRodney]
                              .value;
  report(bell > 1e-6, "4b pure endpoint survives", "N_RR(Bell) at (pi/4, pi/4) = " + fmt(bell) + ", want > 1e-6");
}

ComplexMatrix swap_modes(const ComplexMatrix& rho) {
  const std::array<std::size_t, 4> perm{0, 2, 1, 3};
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(perm[i], perm[j]) = rho(i, j);
  return out;
}

void invariant_criteria() {
  const SeededRng rng(kSeed);
  constexpr auto RR = Bipartition::RobRodney, RA = Bipartition::RobAntiRodney, AR = Bipartition::AntiRobRodney;

  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto rho = ginibre_density(rng, i);
    const double n = all_bipartition_negativities(rho, UnruhParams::sma(0.0, 0.0))[RR].value;
    worst = std::max(worst, std::abs(n - inertial_negativity(rho).value));
  }
  report(worst <= 1e-10, "5a zero-acceleration consistency", "max |N_RR(0,0) - N_inertial| over 1000 states = " + fmt(worst));

  worst = 0.0;
  const double q = 1.0 / std::numbers::sqrt2;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto rho = ginibre_density(rng, 10000 + i);
    for (std::size_t g = 0; g < 16; ++g) {
      const auto n = all_bipartition_negativities(rho, UnruhParams::make(grid_angle(g / 4, 4), grid_angle(g % 4, 4), q));
      for (auto b : kAllBipartitions) worst = std::max(worst, std::abs(n[b].value - n[RR].value));
    }
  }
  report(worst <= 1e-10, "5b balanced four-way equality", "max spread over 100 states x 16 points = " + fmt(worst));

  worst = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto base = ginibre_density(rng, 20000 + i);
    const auto rho = (0.5 * (base + swap_modes(base))).hermitian_part();
    for (std::size_t g = 0; g < 16; ++g) {
      const double r1 = grid_angle(g / 4, 4), r2 = grid_angle(g % 4, 4);
      const double ra = all_bipartition_negativities(rho, UnruhParams::sma(r1, r2))[RA].value;
      const double ar = all_bipartition_negativities(rho, UnruhParams::sma(r2, r1))[AR].value;
      worst = std::max(worst, std::abs(ra - ar));
    }
  }
  report(worst <= 1e-10, "5c diagonal symmetry", "max |N_RA(r1,r2) - N_AR(r2,r1)| over 100 states x 16 points = " + fmt(worst));

  double anti = 0.0, nil = 0.0, car = 0.0, adj = 0.0;
  for (std::size_t t = 0; t < 4; ++t) {
    auto s = rng.stream(30000 + t);
    StateVector u(kFockDim), v(kFockDim);
    for (std::size_t k = 0; k < kFockDim; ++k) {
      u[k] = s.complex_normal();
      v[k] = s.complex_normal();
    }
    for (std::size_t a = 0; a < kTotalModes; ++a) {
      const auto ma = ModeId::from_global(a);
      nil = std::max({nil, apply_creation(ma, apply_creation(ma, v)).norm(),
                      apply_annihilation(ma, apply_annihilation(ma, v)).norm()});
      adj = std::max(adj, std::abs(inner(u, apply_creation(ma, v)) - inner(apply_annihilation(ma, u), v)));
      for (std::size_t b = 0; b < kTotalModes; ++b) {
        const auto mb = ModeId::from_global(b);
        anti = std::max({anti,
                         (apply_creation(ma, apply_creation(mb, v)) + apply_creation(mb, apply_creation(ma, v))).norm(),
                         (apply_annihilation(ma, apply_annihilation(mb, v)) + apply_annihilation(mb, apply_annihilation(ma, v)))
                             .norm()});
        auto mixed = apply_annihilation(ma, apply_creation(mb, v)) + apply_creation(mb, apply_annihilation(ma, v));
        if (a == b) mixed -= v;
        car = std::max(car, mixed.norm());
      }
    }
  }
  report(anti == 0.0 && nil == 0.0 && car <= 1e-13 && adj <= 1e-13, "5d fermionic algebra",
         "anticommutators " + fmt(anti) + ", nilpotence " + fmt(nil) + ", {a, a^dag} - delta " + fmt(car) +
             ", adjointness " + fmt(adj));

  worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    auto s = rng.stream(40000 + i);
    const auto rho4 = ginibre_density(rng, 40100 + i);
    const auto params = UnruhParams::make(kQuarterPi * s.uniform(), kQuarterPi * s.uniform(), s.uniform(), 6.0 * s.uniform());
    auto small = hermitian_eigenvalues(rho4);
    small.resize(kFockDim, 0.0);
    std::sort(small.begin(), small.end());
    const auto big = hermitian_eigenvalues(embed_state(rho4, params));
    for (std::size_t k = 0; k < kFockDim; ++k) worst = std::max(worst, std::abs(big[k] - small[k]));
  }
  report(worst <= 1e-10, "5e embedding isometry", "max spectrum deviation over 8 states = " + fmt(worst));
}

void monotone_criteria() {
  const std::vector<std::pair<const char*, ComplexMatrix>> states{
      {"W", w_reduced_state()}, {"alpha+i beta", alpha_beta_state().hermitian_part()}};
  for (const auto& [label, rho] : states) {
    bool ok = true;
    double previous = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> first_zero;
    for (std::size_t k = 0; k < 64; ++k) {
      const double r = grid_angle(k, 64);
      const double n = NegativityKernel(UnruhParams::sma(r, r), Bipartition::RobRodney)(rho).value;
      if (n > previous) ok = false;
      if (first_zero && n >= 1e-10) ok = false;
      if (!first_zero && n < 1e-10) first_zero = k;
      previous = n;
    }
    report(ok, std::string("6 monotone diagonal (") + label + ")",
           std::string(ok ? "non-increasing" : "violated") + ", first zero at grid point " +
               (first_zero ? std::to_string(*first_zero) : std::string("none")) + " of 64");
  }
}

void determinism_criteria() {
  SurveyConfig survey;
  survey.n_samples = 20000;
  survey.seed = kSeed;
  survey.qR = 0.97;
  RadiusConfig radius;
  radius.n_samples = 5000;
  radius.seed = kSeed;
  const auto rho = alpha_beta_state().hermitian_part();

  std::vector<std::string> outputs[3];
  for (unsigned workers : {1u, 4u, 8u}) {
    outputs[0].push_back(io::to_csv(run_survey(survey, workers)));
    outputs[1].push_back(io::to_csv(run_sweep(rho, 0.9, 24, workers)));
    outputs[2].push_back(io::to_csv(run_radius_scan(radius, workers)));
  }
  // a second single-worker run of each
  outputs[0].push_back(io::to_csv(run_survey(survey, 1)));
  outputs[1].push_back(io::to_csv(run_sweep(rho, 0.9, 24, 1)));
  outputs[2].push_back(io::to_csv(run_radius_scan(radius, 1)));

  const char* names[3] = {"survey", "sweep", "radius"};
  for (int e = 0; e < 3; ++e) {
    bool same = true;
    for (const auto& o : outputs[e]) same &= o == outputs[e].front();
    report(same, std::string("7 determinism (") + names[e] + ")",
           std::string(same ? "byte-identical" : "differs") + " CSV across reruns with 1, 4, 8 workers (" +
               std::to_string(outputs[e].front().size()) + " bytes)");
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::printf("acceptance suite, seed %llu, %u worker(s)\n", static_cast<unsigned long long>(kSeed), default_workers());
  w_state_criteria();
  invariant_criteria();
  monotone_criteria();
  determinism_criteria();
  survey_criteria();
  radius_criteria();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s: %d failure(s), %.1f s\n", failures == 0 ? "ALL PASS" : "FAILED", failures, seconds);
  return failures == 0 ? 0 : 1;
}
