#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "perfectw/common.hpp"
#include "perfectw/state.hpp"

namespace perfectw {

/// Strict-inequality tolerance for entanglement detection; reports carry the
/// raw values so callers can apply looser experimental thresholds.
inline constexpr double kDetectionTolerance = 1e-12;

/// Generalized su(2) triple on the single-photon subspace (basis |1>_j):
///   L1[j][N] = alpha_j*,   L1[N][j] = alpha_j
///   L2[j][N] = -i alpha_j*, L2[N][j] = i alpha_j
///   L3[j][k] = alpha_j* alpha_k (j,k < N),  L3[N][N] = -1
/// satisfying [L_x, L_y] = 2i eps_{xyz} L_z.
struct Su2Triple {
  AlphaVector alphas;
  Eigen::MatrixXcd l1;
  Eigen::MatrixXcd l2;
  Eigen::MatrixXcd l3;
};

inline Su2Triple su2_matrices(const AlphaVector& alphas) {
  const int n = alphas.mode_count();
  Eigen::MatrixXcd l1 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd l2 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd l3 = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    l1(j, n - 1) = std::conj(alphas[j]);
    l1(n - 1, j) = alphas[j];
    l2(j, n - 1) = -kImaginary * std::conj(alphas[j]);
    l2(n - 1, j) = kImaginary * alphas[j];
    for (int k = 0; k + 1 < n; ++k) {
      l3(j, k) = std::conj(alphas[j]) * alphas[k];
    }
  }
  l3(n - 1, n - 1) = -1.0;
  return Su2Triple{alphas, std::move(l1), std::move(l2), std::move(l3)};
}

namespace detail {

inline double expectation(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& psi) {
  return (psi.dot(op * psi)).real();
}

inline double variance(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd applied = op * psi;
  const double mean = psi.dot(applied).real();
  return applied.squaredNorm() - mean * mean;
}

}  // namespace detail

struct VarianceSum {
  double sum_var = 0.0;  // (dL1)^2 + (dL2)^2
  double bound = 0.0;    // 2 [ sum_jk <alpha_j* alpha_k a_j† a_k> + <N_a_N> ]
};

/// Sum of L1/L2 variances against the separability bound. The bound operator
/// is L3 with its (N,N) entry flipped to +1, times 2.
inline VarianceSum variance_sum(const PhotonAmplitudes& state, const Su2Triple& triple) {
  const int n = state.mode_count();
  if (triple.alphas.mode_count() != n) {
    throw DomainError("variance_sum: dimension mismatch");
  }
  const Eigen::VectorXcd& psi = state.amplitudes();
  VarianceSum out;
  out.sum_var = detail::variance(triple.l1, psi) + detail::variance(triple.l2, psi);
  Eigen::MatrixXcd bound_op = triple.l3;
  bound_op(n - 1, n - 1) = +1.0;
  out.bound = 2.0 * detail::expectation(bound_op, psi);
  return out;
}

enum class Verdict { kEntangled, kNotDetected };

/// Raw values of the generalized entanglement condition and the single-photon
/// separability condition for one state and one alpha family.
struct EntanglementReport {
  double lhs_eq21 = 0.0;         // |sum_j alpha_j <a_j a_N†>|^2
  double rhs_eq21 = 0.0;         // identically 0 on the single-photon subspace
  bool violated_eq20 = false;
  double fidelity_gap_l1 = 0.0;  // |<Phi|W~+>|^2 - |<Phi|W~->|^2
  double fidelity_gap_l2 = 0.0;  // same with the W' pair
  double lhs_eq35 = 0.0;         // gap1^2 + gap2^2
  double lambda = 0.0;           // 1 - 2|C_N|^2
  Verdict verdict = Verdict::kNotDetected;
};

namespace detail {

inline EntanglementReport make_report(const PhotonAmplitudes& state,
                                      const AlphaVector& alphas) {
  const int n = state.mode_count();
  if (alphas.mode_count() != n) {
    throw DomainError("entanglement report: dimension mismatch");
  }
  EntanglementReport r;

  // <a_j a_N†> = C_j C_N* on a single-photon state.
  const Complex cn = state.amplitude(n - 1);
  Complex overlap = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    overlap += alphas[j] * state.amplitude(j) * std::conj(cn);
  }
  r.lhs_eq21 = std::norm(overlap);
  r.rhs_eq21 = 0.0;
  r.violated_eq20 = r.lhs_eq21 > r.rhs_eq21 + kDetectionTolerance;

  auto [w_plus, w_minus] = generalized_w_pair(alphas, 1);
  auto [wp_plus, wp_minus] = generalized_w_pair(alphas, 2);
  r.fidelity_gap_l1 = fidelity(state, w_plus) - fidelity(state, w_minus);
  r.fidelity_gap_l2 = fidelity(state, wp_plus) - fidelity(state, wp_minus);
  r.lhs_eq35 = r.fidelity_gap_l1 * r.fidelity_gap_l1 +
               r.fidelity_gap_l2 * r.fidelity_gap_l2;
  r.lambda = 1.0 - 2.0 * std::norm(cn);
  r.verdict = r.lhs_eq35 > kDetectionTolerance ? Verdict::kEntangled
                                               : Verdict::kNotDetected;
  return r;
}

}  // namespace detail

/// Generalized entanglement condition for a chosen alpha family. On the
/// single-photon subspace the right-hand side vanishes, so any nonzero
/// overlap sum signals a violation of the separability bound.
inline EntanglementReport entanglement_condition(const PhotonAmplitudes& state,
                                                 const AlphaVector& alphas) {
  return detail::make_report(state, alphas);
}

/// Single-photon separability condition: squared fidelity gaps with the W~±
/// and W'± pairs. Nonzero sum certifies entanglement.
inline EntanglementReport single_photon_condition(const PhotonAmplitudes& state,
                                                  const AlphaVector& alphas) {
  return detail::make_report(state, alphas);
}

/// Residuals of the squeezed-state identities evaluated with the alpha family
/// from the state's own decomposition:
///   (dL1)(dL2) = |<L3>|,  (dL1)^2 = |lambda <L3>|,  (dL2)^2 |lambda| = |<L3>|
/// (third identity kept in product form to stay finite at lambda = 0).
struct SqueezingCheck {
  double prod_residual = 0.0;
  double var1_residual = 0.0;
  double var2_residual = 0.0;
  double lambda = 0.0;
};

inline SqueezingCheck squeezing_check(const PhotonAmplitudes& state) {
  const WDecomposition d = decompose(state);
  const Su2Triple triple = su2_matrices(d.alphas);
  const Eigen::VectorXcd& psi = state.amplitudes();

  const double var1 = detail::variance(triple.l1, psi);
  const double var2 = detail::variance(triple.l2, psi);
  const double l3_abs = std::abs(detail::expectation(triple.l3, psi));

  SqueezingCheck out;
  out.lambda = d.lambda;
  out.prod_residual = std::abs(std::sqrt(std::max(var1, 0.0)) *
                                   std::sqrt(std::max(var2, 0.0)) - l3_abs);
  out.var1_residual = std::abs(var1 - std::abs(d.lambda) * l3_abs);
  out.var2_residual = std::abs(var2 * std::abs(d.lambda) - l3_abs);
  return out;
}

/// Decompose the state to obtain its matched alpha family, then evaluate the
/// single-photon condition with it. Detects every genuinely entangled
/// single-photon state (lhs = 1 - lambda^2 > 0).
inline EntanglementReport auto_detect(const PhotonAmplitudes& state) {
  const WDecomposition d = decompose(state);
  return detail::make_report(state, d.alphas);
}

}  // namespace perfectw
