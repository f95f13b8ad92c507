#include "perfectw/lattice.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "perfectw/evolution.hpp"
#include "test_util.hpp"

using namespace perfectw;

TEST(ChainSpec, Validation) {
  EXPECT_THROW(ChainSpec(4, {1.0, 2.0}), DomainError);        // wrong count
  EXPECT_THROW(ChainSpec(3, {1.0, 0.0}), DomainError);        // nonpositive
  EXPECT_THROW(ChainSpec(3, {1.0, -0.5}), DomainError);
  EXPECT_NO_THROW(ChainSpec(3, {1.0, 0.5}));
}

// Off-diagonals carry the negative of each coupling (the sign convention that
// reproduces the published chain-generated state phases under exp(-izM)).
TEST(ChainMatrix, TableIEntries) {
  const ChainSpec spec(4, {1.2043, 0.686372, 0.781121});
  const CouplingMatrix m = chain_matrix(spec);
  EXPECT_EQ(m.dim(), 4);
  EXPECT_EQ(m.matrix()(0, 1), Complex(-1.2043, 0.0));
  EXPECT_EQ(m.matrix()(1, 2), Complex(-0.686372, 0.0));
  EXPECT_EQ(m.matrix()(2, 3), Complex(-0.781121, 0.0));
  EXPECT_EQ(m.matrix()(0, 2), Complex(0.0, 0.0));
  EXPECT_EQ(m.matrix()(0, 0), Complex(0.0, 0.0));
  EXPECT_EQ((m.matrix() - m.matrix().transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ChainMatrix, TwoGuideChain) {
  const CouplingMatrix m = chain_matrix(ChainSpec(2, {0.7}));
  EXPECT_EQ(m.matrix()(0, 1), Complex(-0.7, 0.0));
  EXPECT_EQ(m.matrix()(1, 0), Complex(-0.7, 0.0));
  EXPECT_EQ(m.matrix()(0, 0), Complex(0.0, 0.0));
}

TEST(ChainMatrix, PropagationConstantOnDiagonal) {
  const CouplingMatrix m = chain_matrix(ChainSpec(2, {0.7}, 1.5));
  EXPECT_EQ(m.matrix()(0, 0), Complex(1.5, 0.0));
  EXPECT_EQ(m.matrix()(1, 1), Complex(1.5, 0.0));
}

TEST(RingSpec, Validation) {
  EXPECT_THROW(RingSpec(2, 1.0, 1.0), DomainError);
  EXPECT_THROW(RingSpec(3, 0.0, 1.0), DomainError);
  EXPECT_THROW(RingSpec(3, 1.0, -1.0), DomainError);
  EXPECT_NO_THROW(RingSpec(3, 1.0, 0.0));  // degenerate star graph
}

TEST(RingMatrix, StarGraphWhenRingCouplingVanishes) {
  const CouplingMatrix m = ring_matrix(RingSpec(3, 0.4, 0.0));
  EXPECT_EQ(m.dim(), 4);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(m.matrix()(j, 3), Complex(0.4, 0.0));
    EXPECT_EQ(m.matrix()(3, j), Complex(0.4, 0.0));
  }
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(m.matrix()(j, k), Complex(0.0, 0.0));
    }
  }
}

TEST(RingMatrix, RingEntriesAndSymmetry) {
  const CouplingMatrix m = ring_matrix(RingSpec(7, 0.2, 0.5));
  EXPECT_EQ(m.matrix()(0, 1), Complex(0.5, 0.0));
  EXPECT_EQ(m.matrix()(0, 6), Complex(0.5, 0.0));  // wrap-around neighbor
  EXPECT_EQ(m.matrix()(2, 7), Complex(0.2, 0.0));
  EXPECT_EQ(m.matrix()(0, 3), Complex(0.0, 0.0));
  EXPECT_EQ((m.matrix() - m.matrix().transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(RingGeometry, SevenGuides) {
  const RingGeometry g = ring_geometry(7);
  // closed-form values, frozen from an independent high-precision evaluation
  EXPECT_NEAR(g.r_over_d0, 7.357910607328665, 1e-9);
  EXPECT_NEAR(g.a_over_d0, 6.384955532801008, 1e-9);
  EXPECT_NEAR(g.kappa_over_k, 6.375291175868777e-4, 1e-15);
  EXPECT_NEAR(g.c_over_k, 1.6867434986973333e-3, 1e-15);
  // published rounded values
  EXPECT_NEAR(g.r_over_d0, 7.35791, 1e-4);
  EXPECT_NEAR(g.a_over_d0, 6.38496, 1e-4);
  EXPECT_NEAR(g.kappa_over_k, 0.6375e-3, 1e-7);
  EXPECT_NEAR(g.c_over_k, 1.6867e-3, 1e-7);
}

TEST(RingGeometry, InvariantsHold) {
  for (int n = 7; n <= 12; ++n) {
    const RingGeometry g = ring_geometry(n);
    EXPECT_NEAR(g.a_over_d0, 2.0 * g.r_over_d0 * std::sin(std::numbers::pi / n), 1e-12);
    EXPECT_NEAR(n * g.kappa_over_k * g.kappa_over_k, g.c_over_k * g.c_over_k, 1e-12);
  }
}

TEST(RingGeometry, EightGuidesClosedForm) {
  const RingGeometry g = ring_geometry(8);
  const double expected =
      std::log(std::sqrt(8.0)) / (1.0 - 2.0 * std::sin(std::numbers::pi / 8.0));
  EXPECT_NEAR(g.r_over_d0, expected, 1e-14);
  EXPECT_NEAR(g.r_over_d0, 4.4312614654544555, 1e-9);
}

TEST(RingGeometry, InfeasibleAndOversized) {
  EXPECT_THROW(ring_geometry(6), DomainError);
  EXPECT_THROW(ring_geometry(5), DomainError);
  EXPECT_THROW(ring_geometry(13), DomainError);
  EXPECT_NO_THROW(ring_geometry(13, /*allow_second_neighbor=*/true));
}

TEST(RingCentralAmplitude, NoEvolutionAtZero) {
  const auto [central, surrounding] = ring_central_amplitude(RingSpec(7, 0.3, 0.8), 0.0);
  EXPECT_EQ(central, Complex(1.0, 0.0));
  EXPECT_EQ(surrounding, Complex(0.0, 0.0));
}

TEST(RingCentralAmplitude, ResonanceHalfProbability) {
  for (int n = 7; n <= 12; ++n) {
    const RingSpec spec = RingSpec::resonant(n, 1.0);
    const double z = std::numbers::pi / (2.0 * std::sqrt(2.0));
    const auto [central, surrounding] = ring_central_amplitude(spec, z);
    EXPECT_NEAR(std::norm(central), 0.5, 1e-12);
    EXPECT_NEAR(std::norm(surrounding), 0.5 / n, 1e-12);
  }
}

TEST(RingCentralAmplitude, ConservesProbability) {
  perfectw::SplitMix64 rng(0x2177u);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 3 + static_cast<int>(rng.next() % 10);
    const RingSpec spec(n, rng.uniform(0.05, 2.0), rng.uniform(0.0, 2.0));
    const auto [central, surrounding] = ring_central_amplitude(spec, rng.uniform(0.0, 20.0));
    EXPECT_NEAR(std::norm(central) + n * std::norm(surrounding), 1.0, 1e-12);
  }
}

// The closed form must agree with the full matrix exponential, including the
// per-mode phases, for arbitrary (not just resonant) rings.
TEST(RingCentralAmplitude, MatchesMatrixEvolution) {
  perfectw::SplitMix64 rng(0x0eceu);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.next() % 8);
    const RingSpec spec(n, rng.uniform(0.1, 1.5), rng.uniform(0.0, 1.5));
    const double z = rng.uniform(0.0, 8.0);
    const auto [central, surrounding] = ring_central_amplitude(spec, z);
    const PhotonAmplitudes evolved =
        evolve(ring_matrix(spec), z, PhotonAmplitudes::basis_state(n + 1, n));
    EXPECT_LT(std::abs(evolved.amplitude(n) - central), 1e-10);
    for (int j = 0; j < n; ++j) {
      EXPECT_LT(std::abs(evolved.amplitude(j) - surrounding), 1e-10);
    }
  }
}

TEST(WPrimeDistance, KnownValues) {
  const double base = std::numbers::pi / (2.0 * std::sqrt(2.0));
  EXPECT_NEAR(w_prime_distance(1.0, 1), base, 1e-15);
  EXPECT_NEAR(w_prime_distance(2.0, 1), base / 2.0, 1e-15);
  EXPECT_NEAR(w_prime_distance(1.0, 3), 3.0 * base, 1e-15);
}

TEST(WPrimeDistance, HigherOddCrossingStillHalf) {
  const RingSpec spec = RingSpec::resonant(9, 1.0);
  const double z = w_prime_distance(spec.c(), 3);
  const auto [central, surrounding] = ring_central_amplitude(spec, z);
  EXPECT_NEAR(std::norm(central), 0.5, 1e-12);
}

TEST(WPrimeDistance, RejectsEvenOrNonpositive) {
  EXPECT_THROW(w_prime_distance(1.0, 2), DomainError);
  EXPECT_THROW(w_prime_distance(1.0, 0), DomainError);
  EXPECT_THROW(w_prime_distance(1.0, -3), DomainError);
  EXPECT_THROW(w_prime_distance(0.0, 1), DomainError);
}
