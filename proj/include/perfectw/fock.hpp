#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "perfectw/common.hpp"
#include "perfectw/rng.hpp"
#include "perfectw/state.hpp"

namespace perfectw {

namespace fock_detail {

/// Occupation-number indexing for a truncated multimode space: mode j varies
/// with stride (cutoff+1)^j.
struct Space {
  int modes;
  int cutoff;
  long dim;
  std::vector<long> strides;

  Space(int m, int c) : modes(m), cutoff(c) {
    dim = 1;
    strides.resize(m);
    for (int j = 0; j < m; ++j) {
      strides[j] = dim;
      dim *= (c + 1);
    }
  }

  int occupation(long index, int mode) const {
    return static_cast<int>((index / strides[mode]) % (cutoff + 1));
  }
};

inline Eigen::VectorXcd apply_annihilate(const Space& s, const Eigen::VectorXcd& v,
                                         int mode) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.dim);
  for (long idx = 0; idx < s.dim; ++idx) {
    const int n = s.occupation(idx, mode);
    if (n >= 1 && v[idx] != Complex{0.0, 0.0}) {
      out[idx - s.strides[mode]] += std::sqrt(static_cast<double>(n)) * v[idx];
    }
  }
  return out;
}

inline Eigen::VectorXcd apply_create(const Space& s, const Eigen::VectorXcd& v,
                                     int mode) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.dim);
  for (long idx = 0; idx < s.dim; ++idx) {
    const int n = s.occupation(idx, mode);
    if (n < s.cutoff && v[idx] != Complex{0.0, 0.0}) {
      out[idx + s.strides[mode]] += std::sqrt(static_cast<double>(n + 1)) * v[idx];
    }
  }
  return out;
}

inline Eigen::VectorXcd apply_number(const Space& s, const Eigen::VectorXcd& v,
                                     int mode) {
  Eigen::VectorXcd out(s.dim);
  for (long idx = 0; idx < s.dim; ++idx) {
    out[idx] = static_cast<double>(s.occupation(idx, mode)) * v[idx];
  }
  return out;
}

/// S = sum_j alpha_j a_j over the first modes-1 modes.
inline Eigen::VectorXcd apply_lowering_sum(const Space& s, const Eigen::VectorXcd& v,
                                           const AlphaVector& alphas) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.dim);
  for (int j = 0; j + 1 < s.modes; ++j) {
    out += alphas[j] * apply_annihilate(s, v, j);
  }
  return out;
}

inline Eigen::VectorXcd apply_raising_sum(const Space& s, const Eigen::VectorXcd& v,
                                          const AlphaVector& alphas) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.dim);
  for (int j = 0; j + 1 < s.modes; ++j) {
    out += std::conj(alphas[j]) * apply_create(s, v, j);
  }
  return out;
}

/// Re-index a vector from `from` into the larger space `to` (same mode count,
/// to.cutoff >= from.cutoff).
inline Eigen::VectorXcd embed(const Space& from, const Eigen::VectorXcd& v,
                              const Space& to) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(to.dim);
  for (long idx = 0; idx < from.dim; ++idx) {
    if (v[idx] == Complex{0.0, 0.0}) continue;
    long target = 0;
    for (int j = 0; j < from.modes; ++j) {
      target += static_cast<long>(from.occupation(idx, j)) * to.strides[j];
    }
    out[target] = v[idx];
  }
  return out;
}

}  // namespace fock_detail

/// Truncated multimode bosonic pure state for brute-force bound verification.
/// Desk-scale oracle: modes <= 5, per-mode photon cap cutoff <= 3.
class FockState {
 public:
  FockState(int modes, int cutoff, Eigen::VectorXcd amplitudes)
      : modes_(modes), cutoff_(cutoff), amps_(std::move(amplitudes)) {
    if (modes_ < 2 || modes_ > 5) throw DomainError("FockState: modes must be 2..5");
    if (cutoff_ < 1 || cutoff_ > 3) throw DomainError("FockState: cutoff must be 1..3");
    const fock_detail::Space s(modes_, cutoff_);
    if (amps_.size() != s.dim) {
      throw DomainError("FockState: amplitude tensor has wrong size");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
      throw DomainError("FockState: amplitudes are not unit-norm");
    }
  }

  static FockState vacuum(int modes, int cutoff) {
    const fock_detail::Space s(modes, cutoff);
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(s.dim);
    a[0] = 1.0;
    return FockState(modes, cutoff, std::move(a));
  }

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  fock_detail::Space space() const { return fock_detail::Space(modes_, cutoff_); }

 private:
  int modes_;
  int cutoff_;
  Eigen::VectorXcd amps_;
};

/// Lift a single-photon state into the truncated Fock space.
inline FockState embed_single_photon(const PhotonAmplitudes& state, int cutoff) {
  const fock_detail::Space s(state.mode_count(), cutoff);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(s.dim);
  for (int j = 0; j < state.mode_count(); ++j) {
    a[s.strides[j]] = state.amplitude(j);
  }
  return FockState(state.mode_count(), cutoff, std::move(a));
}

enum class FockOperatorKind { kL1, kL2, kL3, kBound };

/// Dense truncated-basis matrix of one of the su(2) operators or the
/// separability-bound operator 2[sum alpha_j* alpha_k a_j† a_k + N_a_N].
struct FockOperator {
  FockOperatorKind kind;
  AlphaVector alphas;
  Eigen::MatrixXcd matrix;
};

inline FockOperator build_fock_operator(FockOperatorKind kind,
                                        const AlphaVector& alphas, int modes,
                                        int cutoff) {
  if (modes != alphas.mode_count()) {
    throw DomainError("build_fock_operator: modes must equal alphas+1");
  }
  if (cutoff < 1) throw DomainError("build_fock_operator: cutoff must be >= 1");
  const fock_detail::Space s(modes, cutoff);
  if (s.dim > 4096) {
    throw DomainError("build_fock_operator: basis size exceeds 4096");
  }

  // Assemble column by column by applying the operator to each basis vector.
  Eigen::MatrixXcd m(s.dim, s.dim);
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(s.dim);
  const int last = modes - 1;
  for (long col = 0; col < s.dim; ++col) {
    basis[col] = 1.0;
    Eigen::VectorXcd out;
    switch (kind) {
      case FockOperatorKind::kL1:
        out = fock_detail::apply_lowering_sum(s, fock_detail::apply_create(s, basis, last), alphas) +
              fock_detail::apply_raising_sum(s, fock_detail::apply_annihilate(s, basis, last), alphas);
        break;
      case FockOperatorKind::kL2:
        out = kImaginary *
              (fock_detail::apply_lowering_sum(s, fock_detail::apply_create(s, basis, last), alphas) -
               fock_detail::apply_raising_sum(s, fock_detail::apply_annihilate(s, basis, last), alphas));
        break;
      case FockOperatorKind::kL3:
        out = fock_detail::apply_raising_sum(s, fock_detail::apply_lowering_sum(s, basis, alphas), alphas) -
              fock_detail::apply_number(s, basis, last);
        break;
      case FockOperatorKind::kBound:
        out = 2.0 * (fock_detail::apply_raising_sum(s, fock_detail::apply_lowering_sum(s, basis, alphas), alphas) +
                     fock_detail::apply_number(s, basis, last));
        break;
    }
    m.col(col) = out;
    basis[col] = 0.0;
  }
  return FockOperator{kind, alphas, std::move(m)};
}

/// Tensor product of independently sampled single-mode pure states, each
/// drawn from the uniform measure on the complex unit sphere of dimension
/// cutoff+1. Per-mode streams are derived from `seed`, so samples are
/// bitwise reproducible.
inline FockState sample_product_state(int modes, int cutoff, std::uint64_t seed) {
  const fock_detail::Space s(modes, cutoff);
  Eigen::VectorXcd product = Eigen::VectorXcd::Ones(1);
  for (int mode = 0; mode < modes; ++mode) {
    SplitMix64 stream(SplitMix64::derive(seed, static_cast<std::uint64_t>(mode)));
    Eigen::VectorXcd single(cutoff + 1);
    double norm2 = 0.0;
    do {
      for (int k = 0; k <= cutoff; ++k) single[k] = stream.complex_gaussian();
      norm2 = single.squaredNorm();
    } while (norm2 < 1e-12);
    single /= std::sqrt(norm2);

    Eigen::VectorXcd next(product.size() * (cutoff + 1));
    for (Eigen::Index k = 0; k < single.size(); ++k) {
      next.segment(k * product.size(), product.size()) = single[k] * product;
    }
    product = std::move(next);
  }
  return FockState(modes, cutoff, std::move(product));
}

struct BoundCheck {
  double sum_var = 0.0;
  double bound = 0.0;
  double lhs_eq21 = 0.0;
  double rhs_eq21 = 0.0;
  bool violates_eq20 = false;
};

/// Exact variances and expectations of the separability bound on a truncated
/// state. The state is embedded one shell higher before operators are
/// applied, so single ladder applications never leak past the evaluation
/// cutoff and the results carry no truncation bias; the evaluation space's
/// top shell stays unpopulated by construction.
inline BoundCheck check_bound(const FockState& state, const AlphaVector& alphas) {
  if (alphas.mode_count() != state.modes()) {
    throw DomainError("check_bound: dimension mismatch");
  }
  using namespace fock_detail;
  const Space base = state.space();
  const Space eval(state.modes(), state.cutoff() + 1);
  const Eigen::VectorXcd psi = embed(base, state.amplitudes(), eval);
  const int last = state.modes() - 1;

  const Eigen::VectorXcd s_psi = apply_lowering_sum(eval, psi, alphas);
  const Eigen::VectorXcd raised = apply_create(eval, psi, last);
  const Eigen::VectorXcd lowered = apply_annihilate(eval, psi, last);
  const Eigen::VectorXcd l1_psi =
      apply_lowering_sum(eval, raised, alphas) + apply_raising_sum(eval, lowered, alphas);
  const Eigen::VectorXcd l2_psi =
      kImaginary * (apply_lowering_sum(eval, raised, alphas) -
                    apply_raising_sum(eval, lowered, alphas));
  const Eigen::VectorXcd n_psi = apply_number(eval, psi, last);

  const double mean_l1 = psi.dot(l1_psi).real();
  const double mean_l2 = psi.dot(l2_psi).real();
  const double var_l1 = l1_psi.squaredNorm() - mean_l1 * mean_l1;
  const double var_l2 = l2_psi.squaredNorm() - mean_l2 * mean_l2;

  BoundCheck out;
  out.sum_var = var_l1 + var_l2;
  out.bound = 2.0 * (s_psi.squaredNorm() + psi.dot(n_psi).real());
  out.lhs_eq21 = std::norm(psi.dot(apply_lowering_sum(eval, raised, alphas)));
  out.rhs_eq21 = s_psi.dot(apply_lowering_sum(eval, n_psi, alphas)).real();
  out.violates_eq20 = out.sum_var < out.bound - 1e-10;
  return out;
}

}  // namespace perfectw
