#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "perfectw/common.hpp"
#include "perfectw/state.hpp"

namespace perfectw {

/// Two-mode directional coupler with transmission t and reflection r,
/// |t|^2 + |r|^2 = 1 and r* t + t* r = 0. The convention here fixes t real
/// nonnegative and r purely imaginary (any phase-covariant coupler maps onto
/// it by absorbing phases into adjacent phase shifters), which makes the
/// second condition automatic.
class DirectionalCoupler {
 public:
  DirectionalCoupler(Complex t, Complex r) : t_(t), r_(r) {
    if (std::abs(t_.imag()) > kNormTolerance || t_.real() < 0.0) {
      throw DomainError("DirectionalCoupler: t must be real nonnegative");
    }
    if (std::abs(r_.real()) > kNormTolerance) {
      throw DomainError("DirectionalCoupler: r must be purely imaginary");
    }
    if (std::abs(std::norm(t_) + std::norm(r_) - 1.0) > kNormTolerance) {
      throw DomainError("DirectionalCoupler: |t|^2 + |r|^2 must be 1");
    }
  }

  /// Balanced 50:50 coupler, t = 1/sqrt2, r = i/sqrt2.
  static DirectionalCoupler balanced() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return DirectionalCoupler(Complex{inv_sqrt2, 0.0}, Complex{0.0, inv_sqrt2});
  }

  /// Coupler from a transmission magnitude t in [0, 1]; r = i sqrt(1 - t^2).
  static DirectionalCoupler from_transmission(double t) {
    if (t < 0.0 || t > 1.0) {
      throw DomainError("DirectionalCoupler: transmission must be within [0, 1]");
    }
    return DirectionalCoupler(Complex{t, 0.0},
                              Complex{0.0, std::sqrt(std::max(0.0, 1.0 - t * t))});
  }

  Complex t() const { return t_; }
  Complex r() const { return r_; }

 private:
  Complex t_;
  Complex r_;
};

/// [[T, R], [R, T]] acting on (b_{j-1}, a_{j+1}).
inline Eigen::Matrix2cd dc_unitary(const DirectionalCoupler& dc) {
  Eigen::Matrix2cd u;
  u << dc.t(), dc.r(), dc.r(), dc.t();
  return u;
}

/// Coupler/phase-shifter mesh: N inputs a_1..a_N, each preceded by phase
/// shifter PS_j (a_j -> a_j e^{-i phi_j}); DC_j mixes the running chain mode
/// b_{j-1} with a_{j+1} into (b_j, c_j); the final coupler DC_{N-1} is fixed
/// balanced. Outputs are ordered (c_1, ..., c_{N-2}, b_{N-1}, c_{N-1}).
class CircuitSpec {
 public:
  CircuitSpec(std::vector<DirectionalCoupler> couplers, std::vector<double> phases)
      : couplers_(std::move(couplers)), phases_(std::move(phases)) {
    const int n = static_cast<int>(phases_.size());
    if (n < 2) throw DomainError("CircuitSpec: need at least 2 modes");
    if (static_cast<int>(couplers_.size()) != n - 1) {
      throw DomainError("CircuitSpec: expected n-1 couplers");
    }
    const DirectionalCoupler& lastc = couplers_.back();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (std::abs(lastc.t() - Complex{inv_sqrt2, 0.0}) > kNormTolerance ||
        std::abs(lastc.r() - Complex{0.0, inv_sqrt2}) > kNormTolerance) {
      throw DomainError("CircuitSpec: last coupler must be balanced (t=1/sqrt2, r=i/sqrt2)");
    }
  }

  int n() const { return static_cast<int>(phases_.size()); }
  const std::vector<DirectionalCoupler>& couplers() const { return couplers_; }
  const std::vector<double>& phases() const { return phases_; }
  double phi_n() const { return phases_.back(); }

  /// Same circuit with the last phase shifter retuned (measurement setting).
  CircuitSpec with_phi_n(double phi) const {
    std::vector<double> p = phases_;
    p.back() = phi;
    return CircuitSpec(couplers_, std::move(p));
  }

 private:
  std::vector<DirectionalCoupler> couplers_;
  std::vector<double> phases_;
};

/// Full N x N mode transformation of the mesh. Row i < N-2 is output c_{i+1};
/// row N-2 is b_{N-1}; row N-1 is c_{N-1} (0-based rows).
inline Eigen::MatrixXcd circuit_unitary(const CircuitSpec& spec) {
  const int n = spec.n();
  // Wire 0 carries the running chain mode; wire j carries a_{j+1} until its
  // coupler fires, then holds c_j as a final output.
  Eigen::MatrixXcd wires = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    wires(j, j) = std::exp(-kImaginary * spec.phases()[j]);
  }
  for (int j = 0; j + 1 < n; ++j) {
    const DirectionalCoupler& dc = spec.couplers()[j];
    const Eigen::RowVectorXcd chain = wires.row(0);
    const Eigen::RowVectorXcd incoming = wires.row(j + 1);
    wires.row(0) = dc.t() * chain + dc.r() * incoming;      // b_{j+1}
    wires.row(j + 1) = dc.r() * chain + dc.t() * incoming;  // c_{j+1}
  }

  Eigen::MatrixXcd u(n, n);
  for (int j = 1; j + 1 < n; ++j) u.row(j - 1) = wires.row(j);  // c_1..c_{N-2}
  u.row(n - 2) = wires.row(0);                                  // b_{N-1}
  u.row(n - 1) = wires.row(n - 1);                              // c_{N-1}
  return u;
}

/// The alpha family measured (and generated) by the mesh:
///   b_{N-2} = sum_j alpha_j a_j with
///   alpha_1     = [prod_{m=1}^{N-2} T_m] e^{-i phi_1}
///   alpha_j     = [prod_{m=j}^{N-2} T_m] R_{j-1} e^{-i phi_j},  2 <= j <= N-2
///   alpha_{N-1} = R_{N-2} e^{-i phi_{N-1}}
/// For N = 2 the chain is empty and alpha_1 = e^{-i phi_1}.
inline AlphaVector circuit_alphas(const CircuitSpec& spec) {
  const int n = spec.n();
  Eigen::VectorXcd alphas(n - 1);
  if (n == 2) {
    alphas[0] = std::exp(-kImaginary * spec.phases()[0]);
    return AlphaVector(std::move(alphas));
  }
  for (int j = 0; j + 1 < n - 1; ++j) {  // chain couplers DC_1..DC_{N-2}
    const DirectionalCoupler& dc = spec.couplers()[j];
    if (dc.t() == Complex{0.0, 0.0} || dc.r() == Complex{0.0, 0.0}) {
      throw DomainError("circuit_alphas: chain coupler with t=0 or r=0 gives a zero alpha");
    }
  }
  Complex t_product = 1.0;  // prod_{m=j}^{N-2} T_m, accumulated downward
  for (int j = n - 2; j >= 1; --j) {
    alphas[j] = t_product * spec.couplers()[j - 1].r() *
                std::exp(-kImaginary * spec.phases()[j]);
    t_product *= spec.couplers()[j - 1].t();
  }
  alphas[0] = t_product * std::exp(-kImaginary * spec.phases()[0]);
  return AlphaVector(std::move(alphas));
}

/// Invert the alpha map: peel alpha_{N-1} to fix R_{N-2} and phi_{N-1}, then
/// recurse down the chain. Always feasible for a valid AlphaVector; the
/// returned spec reproduces `alphas` exactly and carries phi_N = pi/2.
inline CircuitSpec design_circuit(const AlphaVector& alphas) {
  const int n = alphas.mode_count();
  std::vector<double> phases(n, 0.0);
  phases[n - 1] = std::numbers::pi / 2.0;
  std::vector<DirectionalCoupler> couplers;
  if (n == 2) {
    phases[0] = -std::arg(alphas[0]);
    couplers.push_back(DirectionalCoupler::balanced());
    return CircuitSpec(std::move(couplers), std::move(phases));
  }

  couplers.resize(n - 1, DirectionalCoupler::balanced());
  double t_product = 1.0;  // prod_{m=j}^{N-2} |T_m|
  for (int j = n - 2; j >= 1; --j) {
    const double r_mag = std::abs(alphas[j]) / t_product;
    const DirectionalCoupler dc(
        Complex{std::sqrt(std::max(0.0, 1.0 - r_mag * r_mag)), 0.0},
        Complex{0.0, r_mag});
    couplers[j - 1] = dc;
    // e^{-i phi_j} = alpha_j / (t_product * R_{j-1})
    phases[j] = -std::arg(alphas[j] / (t_product * dc.r()));
    t_product *= dc.t().real();
  }
  phases[0] = -std::arg(alphas[0]);
  return CircuitSpec(std::move(couplers), std::move(phases));
}

/// Photon-number difference and sum at the two monitored outputs b_{N-1},
/// c_{N-1}, with the last phase shifter set to phi_n. At phi_n = pi/2 the
/// difference measures <L1>, at phi_n = pi it measures <L2>, and the sum is
/// the separability-bound expectation over 2 for any phi_n.
struct MeasuredExpectations {
  double diff = 0.0;
  double sum = 0.0;
};

inline MeasuredExpectations measure_expectations(const CircuitSpec& spec,
                                                 const PhotonAmplitudes& state,
                                                 double phi_n) {
  if (state.mode_count() != spec.n()) {
    throw DomainError("measure_expectations: state/circuit dimension mismatch");
  }
  const Eigen::MatrixXcd u = circuit_unitary(spec.with_phi_n(phi_n));
  const Eigen::VectorXcd out = u * state.amplitudes();
  const double p_b = std::norm(out[spec.n() - 2]);
  const double p_c = std::norm(out[spec.n() - 1]);
  return MeasuredExpectations{p_b - p_c, p_b + p_c};
}

enum class OutputPort { kB, kC };

/// Run the mesh backwards: inject a photon at output b_{N-1} or c_{N-1} and
/// return the input-space state (the adjoint transformation). With phi_N =
/// pi/2 this produces the W~+ (port b) or W~- (port c) state of
/// circuit_alphas(spec).
inline PhotonAmplitudes generate_from_circuit(const CircuitSpec& spec,
                                              OutputPort port) {
  if (std::abs(spec.phi_n() - std::numbers::pi / 2.0) > kNormTolerance) {
    throw DomainError("generate_from_circuit: requires phi_N = pi/2");
  }
  const Eigen::MatrixXcd u = circuit_unitary(spec);
  const int row = port == OutputPort::kB ? spec.n() - 2 : spec.n() - 1;
  Eigen::VectorXcd injected = Eigen::VectorXcd::Zero(spec.n());
  injected[row] = 1.0;
  return PhotonAmplitudes::renormalized(u.adjoint() * injected);
}

}  // namespace perfectw
