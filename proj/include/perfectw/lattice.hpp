#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "perfectw/common.hpp"
#include "perfectw/evolution.hpp"

namespace perfectw {

/// 1D chain of N waveguides with nearest-neighbor couplings k_{j,j+1} (cm^-1)
/// and a common diagonal propagation constant (global phase; default 0).
class ChainSpec {
 public:
  ChainSpec(int n, std::vector<double> couplings, double propagation_constant = 0.0)
      : n_(n), couplings_(std::move(couplings)),
        propagation_constant_(propagation_constant) {
    if (n_ < 2) throw DomainError("ChainSpec: need at least 2 waveguides");
    if (static_cast<int>(couplings_.size()) != n_ - 1) {
      throw DomainError("ChainSpec: expected n-1 couplings");
    }
    for (double k : couplings_) {
      if (!(k > 0.0)) throw DomainError("ChainSpec: couplings must be positive");
    }
  }

  int n() const { return n_; }
  const std::vector<double>& couplings() const { return couplings_; }
  double propagation_constant() const { return propagation_constant_; }

 private:
  int n_;
  std::vector<double> couplings_;
  double propagation_constant_;
};

/// 2D ring of n_ring waveguides around a central hub: hub-to-ring coupling
/// kappa, nearest-neighbor ring coupling c (both cm^-1).
class RingSpec {
 public:
  RingSpec(int n_ring, double kappa, double c)
      : n_ring_(n_ring), kappa_(kappa), c_(c) {
    if (n_ring_ < 3) throw DomainError("RingSpec: need at least 3 ring waveguides");
    if (!(kappa_ > 0.0)) throw DomainError("RingSpec: kappa must be positive");
    if (c_ < 0.0) throw DomainError("RingSpec: c must be nonnegative");
  }

  /// Ring satisfying the n*kappa^2 = c^2 resonance for a given ring coupling.
  static RingSpec resonant(int n_ring, double c) {
    if (!(c > 0.0)) throw DomainError("RingSpec: c must be positive");
    return RingSpec(n_ring, c / std::sqrt(static_cast<double>(n_ring)), c);
  }

  int n_ring() const { return n_ring_; }
  double kappa() const { return kappa_; }
  double c() const { return c_; }

 private:
  int n_ring_;
  double kappa_;
  double c_;
};

/// Dimensionless ring geometry solving the resonance constraint: ring radius
/// r and chord a in units of the coupling decay length d0, and the couplings
/// relative to the characteristic strength k.
struct RingGeometry {
  double r_over_d0 = 0.0;
  double a_over_d0 = 0.0;
  double kappa_over_k = 0.0;
  double c_over_k = 0.0;
};

/// Tridiagonal chain coupling matrix.
///
/// Off-diagonals carry -k_{j,j+1}: the propagation-phase convention in which
/// exp(-izM) reproduces the published generalized perfect W-state phases for
/// the chain parameters (the opposite sign yields the complex-conjugate
/// states; probabilities are identical either way).
inline CouplingMatrix chain_matrix(const ChainSpec& spec) {
  const int n = spec.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = spec.propagation_constant();
  for (int j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = -spec.couplings()[j];
    m(j + 1, j) = -spec.couplings()[j];
  }
  return CouplingMatrix(std::move(m));
}

/// (N+1)x(N+1) ring-with-hub coupling matrix; modes 1..N are the ring (index
/// 0..N-1), mode N+1 (index N) is the hub. Zero diagonal.
inline CouplingMatrix ring_matrix(const RingSpec& spec) {
  const int n = spec.n_ring();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int j = 0; j < n; ++j) {
    m(j, n) = spec.kappa();
    m(n, j) = spec.kappa();
    const int next = (j + 1) % n;
    m(j, next) = spec.c();
    m(next, j) = spec.c();
  }
  return CouplingMatrix(std::move(m));
}

/// Solve the ring geometry under the resonance constraint N kappa^2 = c^2
/// with kappa = k e^{-r/d0}, c = k e^{-a/d0}, a = 2 r sin(pi/N):
///   r/d0 = ln(sqrt(N)) / (1 - 2 sin(pi/N)),  feasible only for N > 6.
/// Beyond N = 12 the second ring neighbors come closer than the hub and the
/// nearest-neighbor model breaks down; pass allow_second_neighbor to override.
inline RingGeometry ring_geometry(int n_ring, bool allow_second_neighbor = false) {
  if (n_ring <= 6) {
    throw DomainError("ring_geometry: constraint infeasible for n_ring <= 6 "
                      "(1 - 2 sin(pi/N) is nonpositive)");
  }
  if (n_ring > 12 && !allow_second_neighbor) {
    throw DomainError("ring_geometry: n_ring > 12 makes second-neighbor coupling "
                      "non-negligible; pass the override to compute anyway");
  }
  const double sin_term = std::sin(std::numbers::pi / n_ring);
  RingGeometry g;
  g.r_over_d0 = std::log(std::sqrt(static_cast<double>(n_ring))) /
                (1.0 - 2.0 * sin_term);
  g.a_over_d0 = 2.0 * g.r_over_d0 * sin_term;
  g.kappa_over_k = std::exp(-g.r_over_d0);
  g.c_over_k = std::exp(-g.a_over_d0);
  return g;
}

/// Closed-form hub evolution for a photon injected at the hub: returns the
/// coefficient of the initial hub mode and the common coefficient of each
/// surrounding mode after distance z,
///   central     = e^{-iCz} [cos(Wz) + i C/W sin(Wz)]
///   surrounding = e^{-iCz} [-i kappa/W sin(Wz)],     W = sqrt(C^2 + N kappa^2).
inline std::pair<Complex, Complex> ring_central_amplitude(const RingSpec& spec,
                                                          double z) {
  if (z < 0.0) throw DomainError("ring_central_amplitude: z must be nonnegative");
  const double c = spec.c();
  const double omega =
      std::sqrt(c * c + spec.n_ring() * spec.kappa() * spec.kappa());
  const Complex envelope = std::exp(-kImaginary * c * z);
  const double cs = std::cos(omega * z);
  const double sn = std::sin(omega * z);
  const Complex central = envelope * (cs + kImaginary * (c / omega) * sn);
  const Complex surrounding = envelope * (-kImaginary * (spec.kappa() / omega) * sn);
  return {central, surrounding};
}

/// Propagation distance z = n pi / (2 sqrt(2) c) at which, on resonance, the
/// hub probability first (n = 1) or repeatedly (odd n) equals 1/2.
inline double w_prime_distance(double c, int n) {
  if (!(c > 0.0)) throw DomainError("w_prime_distance: c must be positive");
  if (n <= 0 || n % 2 == 0) {
    throw DomainError("w_prime_distance: n must be a positive odd integer");
  }
  return static_cast<double>(n) * std::numbers::pi / (2.0 * std::sqrt(2.0) * c);
}

}  // namespace perfectw
