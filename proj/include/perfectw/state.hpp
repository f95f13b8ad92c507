#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "perfectw/common.hpp"

namespace perfectw {

/// Single-photon state over N spatial modes: a unit-norm complex amplitude
/// vector (C_1, ..., C_N). Immutable after construction.
class PhotonAmplitudes {
 public:
  /// Validating constructor: requires |sum |C_j|^2 - 1| <= 1e-12 and N >= 2.
  explicit PhotonAmplitudes(Eigen::VectorXcd amplitudes)
      : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2) {
      throw DomainError("PhotonAmplitudes: need at least 2 modes");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
      throw DomainError("PhotonAmplitudes: amplitudes are not unit-norm");
    }
  }

  /// Constructor for noisy inputs (e.g. numerically evolved states): rescales
  /// to unit norm before validating.
  static PhotonAmplitudes renormalized(Eigen::VectorXcd amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) {
      throw DomainError("PhotonAmplitudes: zero vector cannot be normalized");
    }
    return PhotonAmplitudes(Eigen::VectorXcd(amplitudes / n));
  }

  /// Photon localized in one mode (0-based index).
  static PhotonAmplitudes basis_state(int mode_count, int mode) {
    if (mode_count < 2 || mode < 0 || mode >= mode_count) {
      throw DomainError("PhotonAmplitudes: basis mode out of range");
    }
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(mode_count);
    a[mode] = 1.0;
    return PhotonAmplitudes(std::move(a));
  }

  int mode_count() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex amplitude(int j) const { return amps_[j]; }

  /// Per-mode detection probabilities |C_j|^2.
  Eigen::VectorXd probabilities() const { return amps_.cwiseAbs2(); }

 private:
  Eigen::VectorXcd amps_;
};

/// Coefficients alpha_1..alpha_{N-1} of a generalized perfect W-state family.
/// All entries nonzero, sum of |alpha_j|^2 = 1. (For N-1 >= 2 this forces
/// every |alpha_j| < 1; the single-entry case is a unit phase.)
class AlphaVector {
 public:
  explicit AlphaVector(Eigen::VectorXcd alphas) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 1) {
      throw DomainError("AlphaVector: needs at least one coefficient");
    }
    for (Eigen::Index j = 0; j < alphas_.size(); ++j) {
      if (alphas_[j] == Complex{0.0, 0.0}) {
        throw DomainError("AlphaVector: coefficients must be nonzero");
      }
    }
    if (std::abs(alphas_.squaredNorm() - 1.0) > kNormTolerance) {
      throw DomainError("AlphaVector: coefficients are not unit-norm");
    }
  }

  /// alpha_j = 1/sqrt(n-1) for all j; the canonical perfect W family.
  static AlphaVector uniform(int n_minus_1) {
    if (n_minus_1 < 1) throw DomainError("AlphaVector: invalid size");
    Eigen::VectorXcd a = Eigen::VectorXcd::Constant(
        n_minus_1, Complex{1.0 / std::sqrt(static_cast<double>(n_minus_1)), 0.0});
    return AlphaVector(std::move(a));
  }

  int size() const { return static_cast<int>(alphas_.size()); }
  int mode_count() const { return size() + 1; }
  const Eigen::VectorXcd& values() const { return alphas_; }
  Complex operator[](int j) const { return alphas_[j]; }

 private:
  Eigen::VectorXcd alphas_;
};

/// Decomposition of a genuinely entangled state as
/// e^{i phase} (D1 |W~+> + D2 |W~->) over the pair defined by `alphas`.
/// lambda = 1 - 2|C_N|^2 is the squeezing parameter; `branch` records which
/// sign was used for the alpha / D1 / D2 family.
struct WDecomposition {
  AlphaVector alphas;
  double lambda = 0.0;
  int branch = +1;
  Complex d1;
  Complex d2;
  double global_phase = 0.0;  // arg(C_N), excluded from the pair expansion
};

/// Canonical N-mode perfect W-state: C_j = 1/sqrt(2(n-1)) for j < n,
/// C_n = 1/sqrt(2). Requires n >= 3.
inline PhotonAmplitudes perfect_w(int n) {
  if (n < 3) throw DomainError("perfect_w: requires n >= 3");
  Eigen::VectorXcd a(n);
  const double head = 1.0 / std::sqrt(2.0 * (n - 1));
  for (int j = 0; j + 1 < n; ++j) a[j] = head;
  a[n - 1] = 1.0 / std::sqrt(2.0);
  return PhotonAmplitudes(std::move(a));
}

/// The orthonormal eigen-pair of generalized perfect W-states for `alphas`.
/// operator_index 1 gives |W~±> (first N-1 amplitudes ±alpha_j*/sqrt2), the
/// ±1-eigenstates of L1; operator_index 2 gives |W'±> (amplitudes
/// ∓ i alpha_j*/sqrt2), the ±1-eigenstates of L2. Last amplitude is 1/sqrt2.
inline std::pair<PhotonAmplitudes, PhotonAmplitudes> generalized_w_pair(
    const AlphaVector& alphas, int operator_index) {
  if (operator_index != 1 && operator_index != 2) {
    throw DomainError("generalized_w_pair: operator_index must be 1 or 2");
  }
  const int n = alphas.mode_count();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd plus(n), minus(n);
  for (int j = 0; j + 1 < n; ++j) {
    const Complex head = std::conj(alphas[j]) * inv_sqrt2;
    if (operator_index == 1) {
      plus[j] = head;
      minus[j] = -head;
    } else {
      plus[j] = -kImaginary * head;
      minus[j] = kImaginary * head;
    }
  }
  plus[n - 1] = inv_sqrt2;
  minus[n - 1] = inv_sqrt2;
  return {PhotonAmplitudes(std::move(plus)), PhotonAmplitudes(std::move(minus))};
}

/// |<a|b>|^2. Symmetric, in [0,1], invariant under global phases.
inline double fidelity(const PhotonAmplitudes& a, const PhotonAmplitudes& b) {
  if (a.mode_count() != b.mode_count()) {
    throw DomainError("fidelity: mode count mismatch");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Decompose a genuinely entangled single-photon state into the W~± pair.
/// Preconditions: C_N != 0, |C_N| != 1, and every C_j != 0 for j < N (the
/// alpha coefficients must be nonzero). branch ∈ {+1, -1}; the default +1
/// makes D1 the larger-magnitude coefficient.
inline WDecomposition decompose(const PhotonAmplitudes& state, int branch = +1) {
  if (branch != 1 && branch != -1) {
    throw DomainError("decompose: branch must be +1 or -1");
  }
  const int n = state.mode_count();
  const Complex cn = state.amplitude(n - 1);
  const double cn2 = std::norm(cn);
  if (cn2 == 0.0) {
    throw DomainError("decompose: last-mode amplitude is zero (state not in this family)");
  }
  const double head2 = state.amplitudes().head(n - 1).squaredNorm();
  if (head2 == 0.0) {
    throw DomainError("decompose: |C_N| = 1 (state not genuinely entangled in this decomposition)");
  }
  for (int j = 0; j + 1 < n; ++j) {
    if (state.amplitude(j) == Complex{0.0, 0.0}) {
      throw DomainError("decompose: zero amplitude in mode " + std::to_string(j + 1) +
                        " would give a zero alpha coefficient");
    }
  }

  const double phase_n = std::arg(cn);
  const Complex dephase = std::exp(-kImaginary * phase_n);
  const double scale = static_cast<double>(branch) / std::sqrt(head2);

  // alpha_j* = ±C_j e^{-i phi_N} / sqrt(sum_{j<N}|C_j|^2)
  Eigen::VectorXcd alphas(n - 1);
  for (int j = 0; j + 1 < n; ++j) {
    alphas[j] = std::conj(state.amplitude(j) * dephase * scale);
  }

  const double lambda = 1.0 - 2.0 * cn2;
  const double sqrt_minus = std::sqrt(1.0 - lambda);
  const double sqrt_plus = std::sqrt(1.0 + lambda);
  const double d1 = (sqrt_minus + branch * sqrt_plus) / 2.0;
  const double d2 = (sqrt_minus - branch * sqrt_plus) / 2.0;

  return WDecomposition{AlphaVector(std::move(alphas)), lambda, branch,
                        Complex{d1, 0.0}, Complex{d2, 0.0}, phase_n};
}

/// Rebuild the state from its decomposition:
/// e^{i phase} (D1 |W~+> + D2 |W~->).
inline PhotonAmplitudes recompose(const WDecomposition& d) {
  auto [plus, minus] = generalized_w_pair(d.alphas, 1);
  Eigen::VectorXcd a = std::exp(kImaginary * d.global_phase) *
                       (d.d1 * plus.amplitudes() + d.d2 * minus.amplitudes());
  return PhotonAmplitudes::renormalized(std::move(a));
}

}  // namespace perfectw
