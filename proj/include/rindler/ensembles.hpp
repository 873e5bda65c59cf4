#pragma once

// Random and named two-mode density matrices.
//
// Random streams: sample i of a run with seed s draws from a std::mt19937_64
// seeded with splitmix64(s ^ splitmix64(i)). Normal variates use the
// Box-Muller transform on 53-bit uniforms, so every sample is a pure function
// of (seed, i) on any platform, independent of how samples are scheduled.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rindler/density.hpp"
#include "rindler/errors.hpp"
#include "rindler/tensor.hpp"

namespace rindler {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class SampleStream {
 public:
  explicit SampleStream(std::uint64_t engine_seed) : engine_(engine_seed) {}

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal, N(0, 1).
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Real and imaginary parts independent N(0, 1).
  Complex complex_normal() noexcept {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }
  SampleStream stream(std::uint64_t sample_index) const { return SampleStream(splitmix64(seed_ ^ splitmix64(sample_index))); }

 private:
  std::uint64_t seed_;
};

inline ComplexMatrix ginibre_matrix(SampleStream& stream, std::size_t rows, std::size_t cols) {
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) z = stream.complex_normal();
  return g;
}

/// G G^dagger / Tr(G G^dagger) with G Ginibre: the Hilbert-Schmidt measure.
inline ComplexMatrix ginibre_density(SampleStream& stream, std::size_t dim = 4) {
  if (dim < 2) throw ValidationError("ginibre_density: dim must be at least 2");
  const ComplexMatrix g = ginibre_matrix(stream, dim, dim);
  ComplexMatrix rho = g * g.adjoint();
  rho = rho.hermitian_part();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

inline ComplexMatrix ginibre_density(const SeededRng& rng, std::uint64_t sample_index, std::size_t dim = 4) {
  auto stream = rng.stream(sample_index);
  return ginibre_density(stream, dim);
}

/// Haar-random unitary: Gram-Schmidt on Ginibre columns.
inline ComplexMatrix haar_unitary(SampleStream& stream, std::size_t dim) {
  ComplexMatrix q = ginibre_matrix(stream, dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, j)) * q(i, k);
      for (std::size_t i = 0; i < dim; ++i) q(i, k) -= proj * q(i, j);
    }
    double n = 0.0;
    for (std::size_t i = 0; i < dim; ++i) n += std::norm(q(i, k));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < dim; ++i) q(i, k) /= n;
  }
  return q;
}

/// (|100> + |010> + |001>) / sqrt(3)
inline StateVector w_state() {
  StateVector w(8);
  const double a = 1.0 / std::sqrt(3.0);
  w[0b100] = a;
  w[0b010] = a;
  w[0b001] = a;
  return w;
}

/// The W state with one party traced out:
/// (|10><10| + |10><01| + |01><10| + |01><01| + |00><00|) / 3.
inline ComplexMatrix w_reduced_state() {
  ComplexMatrix rho(4, 4);
  const double third = 1.0 / 3.0;
  rho(0, 0) = third;
  rho(1, 1) = rho(2, 2) = third;
  rho(1, 2) = rho(2, 1) = third;
  return rho;
}

/// A mixed state showing extinction even with one inertial observer,
/// entries as printed to four decimals.
inline ComplexMatrix alpha_beta_state() {
  // clang-format off
  constexpr double alpha[4][4] = {
      {0.0564, 0.0190, 0.0515, 0.1014},
      {0.0190, 0.1902, 0.0394, 0.1575},
      {0.0515, 0.0394, 0.2174, 0.2247},
      {0.1014, 0.1575, 0.2247, 0.5360}};
  constexpr double beta[4][4] = {
      {0.0,     -0.0089, -0.0645, -0.0339},
      {0.0089,   0.0,    -0.0233,  0.0149},
      {0.0645,   0.0233,  0.0,     0.0962},
      {0.0339,  -0.0149, -0.0962,  0.0}};
  // clang-format on
  ComplexMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = {alpha[i][j], beta[i][j]};
  return rho;
}

/// |Psi> = (|00> + |11>) / sqrt(2)
inline StateVector bell_psi() {
  StateVector v(4);
  v[0] = v[3] = 1.0 / std::numbers::sqrt2;
  return v;
}

inline ComplexMatrix bell_psi_state() {
  const auto v = bell_psi();
  return outer(v, v);
}

/// (1 - p)|Psi><Psi| + p a
inline ComplexMatrix mixed_family(double p, const ComplexMatrix& a) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("mixed_family: p outside [0, 1]");
  validate_density(a, 4, "mixed_family");
  return (1.0 - p) * bell_psi_state() + p * a;
}

/// Printed matrices are rounded; asymmetry up to this much is symmetrized away.
inline constexpr double kStateFileHermitianTolerance = 1e-3;
inline constexpr std::string_view kStateFileBasis = "unruh-00-01-10-11";

/// Parses {"re": 4x4, "im": 4x4, "basis": "unruh-00-01-10-11"} into a
/// symmetrized, validated density matrix. "im" and "basis" are optional.
inline ComplexMatrix parse_state_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("state file: parse check failed: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("re")) throw ValidationError("state file: shape check failed (missing \"re\")");
  if (doc.contains("basis") && doc["basis"] != kStateFileBasis)
    throw ValidationError("state file: basis check failed (expected \"unruh-00-01-10-11\")");

  auto read_part = [&](const char* key, ComplexMatrix& m, bool imaginary) {
    if (!doc.contains(key)) return;
    const auto& rows = doc[key];
    if (!rows.is_array() || rows.size() != 4)
      throw ValidationError(std::string("state file: shape check failed (\"") + key + "\" must be 4x4)");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 4)
        throw ValidationError(std::string("state file: shape check failed (\"") + key + "\" must be 4x4)");
      for (std::size_t j = 0; j < 4; ++j) {
        if (!rows[i][j].is_number())
          throw ValidationError(std::string("state file: shape check failed (non-numeric entry in \"") + key + "\")");
        const double x = rows[i][j].get<double>();
        m(i, j) += imaginary ? Complex{0.0, x} : Complex{x, 0.0};
      }
    }
  };
  ComplexMatrix rho(4, 4);
  read_part("re", rho, false);
  read_part("im", rho, true);
  if (rho.hermitian_defect() > kStateFileHermitianTolerance) throw ValidationError("state file: hermitian check failed");
  rho = rho.hermitian_part();
  validate_density(rho, 4, "state file");
  return rho;
}

inline ComplexMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("state file: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

/// "w", "alphabeta", "bell", or a path to a state file.
inline ComplexMatrix resolve_state(const std::string& name) {
  if (name == "w") return w_reduced_state();
  if (name == "alphabeta") return alpha_beta_state().hermitian_part();
  if (name == "bell") return bell_psi_state();
  return load_state_file(name);
}

}  // namespace rindler
