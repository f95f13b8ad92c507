#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "perfectw/common.hpp"
#include "perfectw/evolution.hpp"
#include "perfectw/lattice.hpp"
#include "perfectw/state.hpp"

namespace perfectw {

/// Target probability profile to hit with a 1D chain: which mode the photon
/// enters (1-based), the per-mode probabilities at the output, and the search
/// box for couplings (cm^-1) and propagation distance (cm).
class SynthesisProblem {
 public:
  SynthesisProblem(int n, int input_mode, std::vector<double> target_probs,
                   std::pair<double, double> coupling_bounds = {0.1, 3.0},
                   std::pair<double, double> z_bounds = {0.1, 5.0},
                   std::uint64_t seed = 0)
      : n_(n), input_mode_(input_mode), target_probs_(std::move(target_probs)),
        coupling_bounds_(coupling_bounds), z_bounds_(z_bounds), seed_(seed) {
    if (n_ < 2) throw DomainError("SynthesisProblem: need at least 2 modes");
    if (input_mode_ < 1 || input_mode_ > n_) {
      throw DomainError("SynthesisProblem: input_mode out of range");
    }
    if (static_cast<int>(target_probs_.size()) != n_) {
      throw DomainError("SynthesisProblem: expected n target probabilities");
    }
    double sum = 0.0;
    for (double p : target_probs_) {
      if (p < 0.0) throw DomainError("SynthesisProblem: negative target probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
      throw DomainError("SynthesisProblem: target probabilities must sum to 1");
    }
    if (!(coupling_bounds_.first > 0.0) ||
        coupling_bounds_.second < coupling_bounds_.first) {
      throw DomainError("SynthesisProblem: infeasible coupling bounds");
    }
    if (z_bounds_.first < 0.0 || z_bounds_.second < z_bounds_.first) {
      throw DomainError("SynthesisProblem: infeasible z bounds");
    }
  }

  int n() const { return n_; }
  int input_mode() const { return input_mode_; }
  const std::vector<double>& target_probs() const { return target_probs_; }
  std::pair<double, double> coupling_bounds() const { return coupling_bounds_; }
  std::pair<double, double> z_bounds() const { return z_bounds_; }
  std::uint64_t seed() const { return seed_; }

 private:
  int n_;
  int input_mode_;
  std::vector<double> target_probs_;
  std::pair<double, double> coupling_bounds_;
  std::pair<double, double> z_bounds_;
  std::uint64_t seed_;
};

struct SynthesisResult {
  std::vector<double> couplings;
  double z = 0.0;
  double residual = 0.0;  // max_j | |achieved_j|^2 - target_j |
  bool converged = false;
  PhotonAmplitudes achieved_state;
};

namespace synth_detail {

/// Derivative-free Nelder-Mead simplex descent inside a box, with candidate
/// points clamped to the bounds. Runs until the simplex collapses or the
/// iteration budget is exhausted.
inline std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start, const std::vector<double>& lo,
    const std::vector<double>& hi, int max_iterations) {
  const std::size_t dim = start.size();
  const auto clamp = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  };

  std::vector<std::vector<double>> simplex;
  simplex.reserve(dim + 1);
  clamp(start);
  simplex.push_back(start);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> vertex = start;
    const double step = 0.1 * (hi[i] - lo[i]);
    vertex[i] += (vertex[i] + step <= hi[i]) ? step : -step;
    clamp(vertex);
    simplex.push_back(vertex);
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order[0], worst = order[dim], second = order[dim - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      spread = std::max(spread, std::abs(simplex[worst][i] - simplex[best][i]));
    }
    if (values[worst] - values[best] < 1e-15 && spread < 1e-12) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto blend = [&](double coeff) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        x[i] = centroid[i] + coeff * (centroid[i] - simplex[worst][i]);
      }
      clamp(x);
      return x;
    };

    std::vector<double> reflected = blend(1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < values[best]) {
      std::vector<double> expanded = blend(2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = f_reflected;
    } else {
      std::vector<double> contracted = blend(-0.5);
      const double f_contracted = objective(contracted);
      if (f_contracted < values[worst]) {
        simplex[worst] = std::move(contracted);
        values[worst] = f_contracted;
      } else {
        for (std::size_t v = 0; v <= dim; ++v) {
          if (v == best) continue;
          for (std::size_t i = 0; i < dim; ++i) {
            simplex[v][i] = simplex[best][i] + 0.5 * (simplex[v][i] - simplex[best][i]);
          }
          values[v] = objective(simplex[v]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t v = 1; v <= dim; ++v) {
    if (values[v] < values[best]) best = v;
  }
  return {simplex[best], values[best]};
}

}  // namespace synth_detail

/// Multi-start simplex search for chain couplings and distance realizing the
/// target probability profile. Starts are sampled uniformly in the bounds
/// from the problem seed, refined by Nelder-Mead on the objective
/// max_j | |U(z) e_in|_j^2 - target_j |, and reduced deterministically:
/// best residual, ties broken by smaller z then lexicographic couplings.
inline SynthesisResult search_chain_parameters(const SynthesisProblem& problem,
                                               int starts = 128) {
  if (starts < 1) throw DomainError("search_chain_parameters: starts must be >= 1");
  const int n = problem.n();
  const int vars = n;  // n-1 couplings + z
  const auto [k_lo, k_hi] = problem.coupling_bounds();
  const auto [z_lo, z_hi] = problem.z_bounds();
  std::vector<double> lo(vars, k_lo), hi(vars, k_hi);
  lo[vars - 1] = z_lo;
  hi[vars - 1] = z_hi;

  const Eigen::VectorXd target =
      Eigen::Map<const Eigen::VectorXd>(problem.target_probs().data(), n);
  const int input = problem.input_mode() - 1;

  const auto objective = [&](const std::vector<double>& x) -> double {
    const ChainSpec spec(n, std::vector<double>(x.begin(), x.end() - 1));
    const PhotonAmplitudes out = evolve(chain_matrix(spec), x.back(),
                                        PhotonAmplitudes::basis_state(n, input));
    return (out.probabilities() - target).cwiseAbs().maxCoeff();
  };

  std::mt19937_64 rng(problem.seed());
  const auto uniform = [&rng](double a, double b) {
    // Fixed 53-bit mapping; std::uniform_real_distribution is not portable.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  };

  std::optional<std::pair<std::vector<double>, double>> best;
  const auto better = [](const std::pair<std::vector<double>, double>& a,
                         const std::pair<std::vector<double>, double>& b) {
    if (std::abs(a.second - b.second) > 1e-12) return a.second < b.second;
    if (a.first.back() != b.first.back()) return a.first.back() < b.first.back();
    return a.first < b.first;  // lexicographic couplings
  };

  for (int s = 0; s < starts; ++s) {
    std::vector<double> start(vars);
    for (int i = 0; i < vars; ++i) start[i] = uniform(lo[i], hi[i]);
    auto candidate = synth_detail::nelder_mead(objective, std::move(start), lo, hi,
                                               400 * vars);
    if (!best || better(candidate, *best)) best = std::move(candidate);
  }

  std::vector<double> couplings(best->first.begin(), best->first.end() - 1);
  const double z = best->first.back();
  const ChainSpec spec(n, couplings);
  PhotonAmplitudes achieved =
      evolve(chain_matrix(spec), z, PhotonAmplitudes::basis_state(n, input));
  const double residual = (achieved.probabilities() - target).cwiseAbs().maxCoeff();
  return SynthesisResult{std::move(couplings), z, residual, residual < 1e-6,
                         std::move(achieved)};
}

/// Per-mode phase-shifter angles theta_j with e^{i theta_j} state_j equal to
/// target_j up to one global phase, normalized so theta_N = 0. Requires the
/// per-mode magnitudes to already agree (within 1e-9): phase shifters cannot
/// change them.
inline std::vector<double> phase_corrections(const PhotonAmplitudes& state,
                                             const PhotonAmplitudes& target) {
  const int n = state.mode_count();
  if (target.mode_count() != n) {
    throw DomainError("phase_corrections: dimension mismatch");
  }
  for (int j = 0; j < n; ++j) {
    if (std::abs(std::abs(state.amplitude(j)) - std::abs(target.amplitude(j))) > 1e-9) {
      throw DomainError("phase_corrections: mode " + std::to_string(j + 1) +
                        " magnitudes differ; state is not phase-equivalent to target");
    }
  }
  const auto relative_angle = [&](int j) -> double {
    if (std::abs(state.amplitude(j)) == 0.0) return 0.0;
    return std::arg(target.amplitude(j) / state.amplitude(j));
  };
  const double gamma = relative_angle(n - 1);
  std::vector<double> theta(n);
  for (int j = 0; j < n; ++j) {
    double t = relative_angle(j) - gamma;
    if (std::abs(state.amplitude(j)) == 0.0) t = 0.0;
    t = std::remainder(t, 2.0 * std::numbers::pi);
    theta[j] = t;
  }
  theta[n - 1] = 0.0;
  return theta;
}

}  // namespace perfectw
