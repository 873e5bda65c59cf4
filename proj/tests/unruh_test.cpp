#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rindler/eigensolver.hpp"
#include "rindler/errors.hpp"
#include "rindler/unruh.hpp"
#include "test_support.hpp"

namespace rindler {
namespace {

constexpr auto one = FrequencySlot::One;
constexpr auto two = FrequencySlot::Two;

StateVector ket16(std::size_t bits) { return StateVector::basis(kSlotDim, bits); }

const std::vector<double> kAngles{0.0, 0.2, kQuarterPi};
const std::vector<double> kWeights{0.0, 0.5, 1.0 / std::numbers::sqrt2, 0.97, 1.0};

TEST(Unruh, AccelerationAngle) {
  EXPECT_DOUBLE_EQ(r_from_acceleration(0.0), kQuarterPi);
  EXPECT_EQ(r_from_acceleration(std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_NEAR(r_from_acceleration(1.0), 0.04318704852478213, 1e-15);
  EXPECT_NEAR(std::tan(r_from_acceleration(0.3)), std::exp(-std::numbers::pi * 0.3), 1e-15);
  EXPECT_THROW(r_from_acceleration(-1.0), ValidationError);
  EXPECT_THROW(r_from_acceleration(std::nan("")), ValidationError);
}

TEST(Unruh, VacuumAtZeroAcceleration) { testing::expect_vector_near(unruh_vacuum(0.0), ket16(0b0000), 0.0); }

TEST(Unruh, VacuumAtInfiniteAcceleration) {
  StateVector expected(kSlotDim);
  expected[0b0000] = 0.5;
  expected[0b0011] = -0.5;
  expected[0b1100] = 0.5;
  expected[0b1111] = -0.5;
  testing::expect_vector_near(unruh_vacuum(kQuarterPi), expected, 1e-15);
}

TEST(Unruh, VacuumIsNormalized) {
  for (double r : {0.0, 0.1, 0.3, 0.5, kQuarterPi}) EXPECT_NEAR(unruh_vacuum(r).norm(), 1.0, 1e-15);
  EXPECT_THROW(unruh_vacuum(-0.1), ValidationError);
  EXPECT_THROW(unruh_vacuum(1.0), ValidationError);
}

TEST(Unruh, VacuumIsAnnihilatedByUnruhOperators) {
  for (double r : {0.0, 0.3, kQuarterPi}) {
    const double c = std::cos(r), s = std::sin(r);
    const auto vac = unruh_vacuum(r);
    // C_R = cos r c_I - sin r d_II^dag, C_L = cos r c_II - sin r d_I^dag
    const auto cr = c * apply_annihilation({one, Species::ParticleI}, vac) -
                    Complex(s) * apply_creation({one, Species::AntiparticleII}, vac);
    const auto cl = c * apply_annihilation({one, Species::ParticleII}, vac) -
                    Complex(s) * apply_creation({one, Species::AntiparticleI}, vac);
    EXPECT_LE(cr.norm(), 1e-15);
    EXPECT_LE(cl.norm(), 1e-15);
  }
}

TEST(Unruh, RightExcitation) {
  for (double r : {0.0, 0.3, kQuarterPi}) {
    StateVector expected(kSlotDim);
    expected[0b1000] = std::cos(r);
    expected[0b1011] = -std::sin(r);
    testing::expect_vector_near(unruh_excitation(r, 1.0, 0.0), expected, 1e-15);
  }
  testing::expect_vector_near(unruh_excitation(0.0, 1.0, 0.0), ket16(0b1000), 0.0);
}

TEST(Unruh, LeftExcitation) {
  for (double r : {0.0, 0.3, kQuarterPi}) {
    StateVector expected(kSlotDim);
    expected[0b0001] = std::cos(r);
    expected[0b1101] = std::sin(r);
    testing::expect_vector_near(unruh_excitation(r, 0.0, 1.0), expected, 1e-15);
  }
}

TEST(Unruh, ExcitationRejectsUnnormalizedWeights) {
  EXPECT_THROW(unruh_excitation(0.1, 0.5, 0.5), ValidationError);
}

TEST(Unruh, ExcitationOrthogonalToVacuum) {
  for (double r : kAngles)
    for (double q : kWeights)
      for (double phase : {0.0, 1.0, std::numbers::pi}) {
        const auto ql = std::polar(std::sqrt(1.0 - q * q), phase);
        const auto exc = unruh_excitation(r, q, ql);
        EXPECT_LE(std::abs(inner(exc, unruh_vacuum(r))), 1e-13);
        EXPECT_NEAR(exc.norm(), 1.0, 1e-13);
      }
}

TEST(Unruh, BasisKetsOrthonormal) {
  for (double r1 : kAngles)
    for (double r2 : kAngles)
      for (double q : kWeights)
        for (double phase : {0.0, 0.7}) {
          const auto kets = unruh_basis_kets(UnruhParams::make(r1, r2, q, phase));
          for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b)
              EXPECT_LE(std::abs(inner(kets[a], kets[b]) - (a == b ? 1.0 : 0.0)), 1e-13);
        }
}

TEST(Unruh, BasisKetOrdering) {
  const auto params = UnruhParams::make(0.3, 0.5, 0.8, 0.4);
  const auto kets = unruh_basis_kets(params);
  const auto e1 = unruh_excitation(0.3, 0.8, params.q_left(one));
  const auto e2 = unruh_excitation(0.5, 0.8, params.q_left(two));
  testing::expect_vector_near(kets[0], kron(unruh_vacuum(0.3), unruh_vacuum(0.5)), 0.0);
  testing::expect_vector_near(kets[1], kron(unruh_vacuum(0.3), e2), 1e-15);
  testing::expect_vector_near(kets[2], kron(e1, unruh_vacuum(0.5)), 1e-15);
  testing::expect_vector_near(kets[3], kron(e1, e2), 1e-15);
}

TEST(Unruh, ParamsValidation) {
  EXPECT_THROW(UnruhParams::make(-0.1, 0.0, 1.0), ValidationError);
  EXPECT_THROW(UnruhParams::make(0.0, 0.8, 1.0), ValidationError);
  EXPECT_THROW(UnruhParams::make(0.0, 0.0, 1.1), ValidationError);
  EXPECT_THROW(UnruhParams::make(0.0, 0.0, -0.1), ValidationError);
  EXPECT_THROW(UnruhParams::make(0.0, 0.0, 0.5, std::numeric_limits<double>::infinity()), ValidationError);
  const auto p = UnruhParams::make(0.1, 0.2, 0.6, 0.0);
  EXPECT_NEAR(std::abs(p.q_left(one)), 0.8, 1e-15);
  EXPECT_EQ(UnruhParams::sma(0.1, 0.2).q_right(two), 1.0);
}

TEST(Embed, VacuumProjectorAtZeroAcceleration) {
  const auto rho = embed_state(ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}), UnruhParams::sma(0.0, 0.0));
  ComplexMatrix expected(kFockDim, kFockDim);
  expected(0, 0) = 1.0;
  testing::expect_matrix_near(rho, expected, 0.0);
}

TEST(Embed, VacuumProjectorAnyAcceleration) {
  for (double r1 : kAngles)
    for (double r2 : kAngles) {
      const auto vac = kron(unruh_vacuum(r1), unruh_vacuum(r2));
      const auto rho = embed_state(ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}), UnruhParams::make(r1, r2, 0.6));
      testing::expect_matrix_near(rho, outer(vac, vac), 1e-15);
    }
}

TEST(Embed, PreservesSpectrum) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    SampleStream s(seed);
    const auto rho4 = testing::random_density(seed);
    const auto params = UnruhParams::make(kQuarterPi * s.uniform(), kQuarterPi * s.uniform(), s.uniform(), 6.0 * s.uniform());
    const auto rho = embed_state(rho4, params);
    EXPECT_LE(rho.hermitian_defect(), 1e-15);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    const auto big = hermitian_eigenvalues(rho);
    const auto small = testing::padded(hermitian_eigenvalues(rho4), kFockDim);
    for (std::size_t k = 0; k < kFockDim; ++k) EXPECT_NEAR(big[k], small[k], 1e-10);
  }
}

TEST(Embed, SingleModeApproximationAtRestStaysInRegionOne) {
  const auto kets = unruh_basis_kets(UnruhParams::sma(0.0, 0.0));
  const std::size_t region_two_bits = 0b01010101;  // d_II and c_II of both slots
  for (const auto& k : kets)
    for (std::size_t i = 0; i < kFockDim; ++i)
      if (i & region_two_bits) EXPECT_EQ(k[i], Complex{});
}

TEST(Embed, RejectsInvalidDensities) {
  const auto p = UnruhParams::sma(0.1, 0.1);
  EXPECT_THROW(embed_state(ComplexMatrix::identity(3), p), ValidationError);
  EXPECT_THROW(embed_state(ComplexMatrix::identity(4), p), ValidationError);  // trace 4
  EXPECT_THROW(embed_state(ComplexMatrix::diagonal({1.5, -0.5, 0.0, 0.0}), p), ValidationError);
  ComplexMatrix skew = ComplexMatrix::diagonal({0.25, 0.25, 0.25, 0.25});
  skew(0, 1) = 0.1;
  EXPECT_THROW(embed_state(skew, p), ValidationError);
}

}  // namespace
}  // namespace rindler
