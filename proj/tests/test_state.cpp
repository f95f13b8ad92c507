#include "perfectw/state.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace perfectw;

TEST(PhotonAmplitudes, RejectsNonUnitNorm) {
  Eigen::VectorXcd v(2);
  v << 0.5, 0.5;
  EXPECT_THROW(PhotonAmplitudes{v}, DomainError);
  EXPECT_NO_THROW(PhotonAmplitudes::renormalized(v));
}

TEST(PhotonAmplitudes, RenormalizedMatchesDirection) {
  Eigen::VectorXcd v(3);
  v << Complex{3.0, 0.0}, Complex{0.0, 4.0}, Complex{0.0, 0.0};
  const PhotonAmplitudes s = PhotonAmplitudes::renormalized(v);
  EXPECT_NEAR(std::abs(s.amplitude(0)), 0.6, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(1)), 0.8, 1e-15);
}

TEST(PhotonAmplitudes, BasisState) {
  const PhotonAmplitudes s = PhotonAmplitudes::basis_state(4, 2);
  EXPECT_EQ(s.mode_count(), 4);
  EXPECT_EQ(s.amplitude(2), Complex(1.0, 0.0));
  EXPECT_THROW(PhotonAmplitudes::basis_state(4, 4), DomainError);
}

TEST(AlphaVector, Invariants) {
  Eigen::VectorXcd with_zero(2);
  with_zero << Complex{1.0, 0.0}, Complex{0.0, 0.0};
  EXPECT_THROW(AlphaVector{with_zero}, DomainError);

  Eigen::VectorXcd not_unit(2);
  not_unit << Complex{1.0, 0.0}, Complex{1.0, 0.0};
  EXPECT_THROW(AlphaVector{not_unit}, DomainError);

  const AlphaVector u = AlphaVector::uniform(3);
  EXPECT_EQ(u.size(), 3);
  EXPECT_EQ(u.mode_count(), 4);
  EXPECT_NEAR(u[0].real(), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(PerfectW, KnownAmplitudes) {
  const PhotonAmplitudes w3 = perfect_w(3);
  EXPECT_NEAR(std::abs(w3.amplitude(0) - Complex{0.5, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w3.amplitude(1) - Complex{0.5, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w3.amplitude(2) - Complex{1.0 / std::sqrt(2.0), 0.0}), 0.0, 1e-15);

  const PhotonAmplitudes w4 = perfect_w(4);
  const double s6 = 1.0 / std::sqrt(6.0);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(w4.amplitude(j) - Complex{s6, 0.0}), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(w4.amplitude(3) - Complex{std::sqrt(3.0) * s6, 0.0}), 0.0, 1e-15);

  const PhotonAmplitudes w5 = perfect_w(5);
  const double s8 = 1.0 / (2.0 * std::sqrt(2.0));
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(std::abs(w5.amplitude(j) - Complex{s8, 0.0}), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(w5.amplitude(4) - Complex{2.0 * s8, 0.0}), 0.0, 1e-15);
}

TEST(PerfectW, RejectsSmallN) {
  EXPECT_THROW(perfect_w(2), DomainError);
  EXPECT_THROW(perfect_w(0), DomainError);
}

TEST(GeneralizedWPair, UniformAlphaReducesToPerfectW) {
  for (int n = 3; n <= 10; ++n) {
    auto [plus, minus] = generalized_w_pair(AlphaVector::uniform(n - 1), 1);
    EXPECT_LT(pwtest::max_abs_diff(plus.amplitudes(), perfect_w(n).amplitudes()), 1e-15);
    EXPECT_NEAR(fidelity(plus, minus), 0.0, 1e-15);
  }
}

TEST(GeneralizedWPair, OrthonormalForRandomAlphas) {
  perfectw::SplitMix64 rng(0x57a7e5u);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 3 + static_cast<int>(rng.next() % 8);
    const AlphaVector alphas = pwtest::random_alphas(rng, n - 1);
    for (int index : {1, 2}) {
      auto [plus, minus] = generalized_w_pair(alphas, index);
      EXPECT_NEAR(plus.amplitudes().squaredNorm(), 1.0, 1e-14);
      EXPECT_NEAR(minus.amplitudes().squaredNorm(), 1.0, 1e-14);
      EXPECT_LT(std::abs(plus.amplitudes().dot(minus.amplitudes())), 1e-14);
    }
  }
}

TEST(GeneralizedWPair, RejectsBadIndex) {
  EXPECT_THROW(generalized_w_pair(AlphaVector::uniform(3), 0), DomainError);
  EXPECT_THROW(generalized_w_pair(AlphaVector::uniform(3), 3), DomainError);
}

TEST(Fidelity, SelfAndOrthogonal) {
  const PhotonAmplitudes w = perfect_w(5);
  EXPECT_NEAR(fidelity(w, w), 1.0, 1e-14);
  auto [plus, minus] = generalized_w_pair(AlphaVector::uniform(4), 1);
  EXPECT_NEAR(fidelity(plus, minus), 0.0, 1e-15);
}

// Fidelity between perfect_w(4) and the generated 4-mode state before phase
// correction. Both the closed form |(-1 + i + 1 + 3i)/6|^2 and the direct
// dot-product oracle give 4/9.
TEST(Fidelity, PerfectW4AgainstGeneratedState) {
  Eigen::VectorXcd gen(4);
  const double s6 = 1.0 / std::sqrt(6.0);
  gen << Complex{-s6, 0.0}, Complex{0.0, s6}, Complex{s6, 0.0},
      Complex{0.0, std::sqrt(3.0) * s6};
  const PhotonAmplitudes generated(gen);
  const PhotonAmplitudes w4 = perfect_w(4);

  Complex overlap{0.0, 0.0};  // independent oracle: explicit inner product
  for (int j = 0; j < 4; ++j) {
    overlap += std::conj(w4.amplitude(j)) * generated.amplitude(j);
  }
  EXPECT_NEAR(std::norm(overlap), 4.0 / 9.0, 1e-15);
  EXPECT_NEAR(fidelity(w4, generated), 4.0 / 9.0, 1e-15);
}

TEST(Fidelity, SymmetricBoundedPhaseInvariant) {
  perfectw::SplitMix64 rng(0xf1de11u);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + static_cast<int>(rng.next() % 7);
    const PhotonAmplitudes a = pwtest::random_state(rng, n);
    const PhotonAmplitudes b = pwtest::random_state(rng, n);
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-14);
    EXPECT_NEAR(f, fidelity(b, a), 1e-14);
    const Complex phase = std::exp(kImaginary * rng.uniform(0.0, 6.28));
    const PhotonAmplitudes rotated =
        PhotonAmplitudes::renormalized(phase * a.amplitudes());
    EXPECT_NEAR(fidelity(rotated, b), f, 1e-13);
  }
}

TEST(Fidelity, DimensionMismatch) {
  EXPECT_THROW(fidelity(perfect_w(4), perfect_w(5)), DomainError);
}

TEST(Decompose, PerfectW4) {
  const WDecomposition d = decompose(perfect_w(4));
  EXPECT_NEAR(d.lambda, 0.0, 1e-15);
  EXPECT_EQ(d.branch, +1);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(d.alphas[j] - Complex{1.0 / std::sqrt(3.0), 0.0}), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(d.d1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.d2), 0.0, 1e-15);
  EXPECT_NEAR(std::norm(d.d1) + std::norm(d.d2), 1.0, 1e-14);

  const WDecomposition other = decompose(perfect_w(4), -1);
  EXPECT_NEAR(std::abs(other.d2), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(other.d1), 0.0, 1e-15);
}

TEST(Decompose, RejectsBasisStates) {
  // |C_N| = 1: all weight on the last mode.
  EXPECT_THROW(decompose(PhotonAmplitudes::basis_state(4, 3)), DomainError);
  // C_N = 0: all weight on the first mode.
  EXPECT_THROW(decompose(PhotonAmplitudes::basis_state(4, 0)), DomainError);
}

TEST(Decompose, RejectsZeroMiddleAmplitude) {
  Eigen::VectorXcd v(4);
  v << Complex{1.0 / std::sqrt(2.0), 0.0}, Complex{0.0, 0.0}, Complex{0.5, 0.0},
      Complex{0.5, 0.0};
  EXPECT_THROW(decompose(PhotonAmplitudes(v)), DomainError);
}

TEST(Decompose, RoundTripReconstruction) {
  perfectw::SplitMix64 rng(0xdec0deu);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(rng.next() % 6);
    const PhotonAmplitudes state = pwtest::random_entangled_state(rng, n);
    for (int branch : {+1, -1}) {
      const WDecomposition d = decompose(state, branch);
      EXPECT_NEAR(std::norm(d.d1) + std::norm(d.d2), 1.0, 1e-13);
      EXPECT_NEAR(d.lambda, 1.0 - 2.0 * std::norm(state.amplitude(n - 1)), 1e-14);
      const PhotonAmplitudes rebuilt = recompose(d);
      EXPECT_NEAR(fidelity(rebuilt, state), 1.0, 1e-12);
      // global_phase makes the round trip exact, not just phase-equivalent
      EXPECT_LT(pwtest::max_abs_diff(rebuilt.amplitudes(), state.amplitudes()), 1e-12);
    }
  }
}

TEST(Decompose, DefaultBranchMakesD1Dominant) {
  perfectw::SplitMix64 rng(0xb1a2cdu);
  for (int rep = 0; rep < 30; ++rep) {
    const WDecomposition d = decompose(pwtest::random_entangled_state(rng, 5));
    EXPECT_GE(std::abs(d.d1) + 1e-15, std::abs(d.d2));
  }
}
