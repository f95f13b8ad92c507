#pragma once

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <variant>

#include "perfectw/circuit.hpp"
#include "perfectw/common.hpp"
#include "perfectw/entanglement.hpp"
#include "perfectw/evolution.hpp"
#include "perfectw/fock.hpp"
#include "perfectw/lattice.hpp"
#include "perfectw/state.hpp"
#include "perfectw/synthesis.hpp"

namespace perfectw {

using Json = nlohmann::json;

/// Failure to read, write, or parse an artifact file. Distinct from
/// DomainError so the CLI can map exit codes (2 vs 1).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw IoError("expected [re, im] pair");
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

inline double require_number(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw IoError("missing or non-numeric field \"" + key + "\"");
  }
  return j[key].get<double>();
}

}  // namespace io_detail

// ---- states: {"n": int, "amplitudes": [[re, im], ...]} ----

inline Json to_json(const PhotonAmplitudes& state) {
  Json amps = Json::array();
  for (int j = 0; j < state.mode_count(); ++j) {
    amps.push_back(io_detail::complex_to_json(state.amplitude(j)));
  }
  return Json{{"n", state.mode_count()}, {"amplitudes", amps}};
}

inline PhotonAmplitudes state_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("amplitudes") || !j["amplitudes"].is_array()) {
    throw IoError("state JSON needs \"n\" and \"amplitudes\"");
  }
  const int n = j["n"].get<int>();
  if (static_cast<int>(j["amplitudes"].size()) != n) {
    throw IoError("state JSON: \"n\" disagrees with amplitude count");
  }
  Eigen::VectorXcd a(n);
  for (int k = 0; k < n; ++k) a[k] = io_detail::complex_from_json(j["amplitudes"][k]);
  return PhotonAmplitudes(std::move(a));
}

// ---- alpha vectors: {"alphas": [[re, im], ...]} ----

inline Json to_json(const AlphaVector& alphas) {
  Json arr = Json::array();
  for (int j = 0; j < alphas.size(); ++j) {
    arr.push_back(io_detail::complex_to_json(alphas[j]));
  }
  return Json{{"alphas", arr}};
}

inline AlphaVector alphas_from_json(const Json& j) {
  if (!j.contains("alphas") || !j["alphas"].is_array()) {
    throw IoError("alpha JSON needs an \"alphas\" array");
  }
  Eigen::VectorXcd a(j["alphas"].size());
  for (std::size_t k = 0; k < j["alphas"].size(); ++k) {
    a[static_cast<Eigen::Index>(k)] = io_detail::complex_from_json(j["alphas"][k]);
  }
  return AlphaVector(std::move(a));
}

// ---- lattices ----
// chain: {"type":"chain","n":4,"couplings":[...](,"propagation_constant":w)}
// ring:  {"type":"ring","n_ring":7,"kappa":...,"c":...}

inline Json to_json(const ChainSpec& spec) {
  Json j{{"type", "chain"}, {"n", spec.n()}, {"couplings", spec.couplings()}};
  if (spec.propagation_constant() != 0.0) {
    j["propagation_constant"] = spec.propagation_constant();
  }
  return j;
}

inline Json to_json(const RingSpec& spec) {
  return Json{{"type", "ring"},
              {"n_ring", spec.n_ring()},
              {"kappa", spec.kappa()},
              {"c", spec.c()}};
}

using LatticeSpec = std::variant<ChainSpec, RingSpec>;

inline LatticeSpec lattice_from_json(const Json& j) {
  if (!j.contains("type") || !j["type"].is_string()) {
    throw IoError("lattice JSON needs a \"type\" field (\"chain\" or \"ring\")");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "chain") {
    if (!j.contains("n") || !j.contains("couplings")) {
      throw IoError("chain JSON needs \"n\" and \"couplings\"");
    }
    return ChainSpec(j["n"].get<int>(), j["couplings"].get<std::vector<double>>(),
                     j.value("propagation_constant", 0.0));
  }
  if (type == "ring") {
    return RingSpec(static_cast<int>(io_detail::require_number(j, "n_ring")),
                    io_detail::require_number(j, "kappa"),
                    io_detail::require_number(j, "c"));
  }
  throw IoError("unknown lattice type \"" + type + "\"");
}

inline CouplingMatrix lattice_matrix(const LatticeSpec& spec) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ChainSpec>) return chain_matrix(s);
        else return ring_matrix(s);
      },
      spec);
}

inline Json to_json(const RingGeometry& g, int n_ring) {
  return Json{{"n_ring", n_ring},
              {"r_over_d0", g.r_over_d0},
              {"a_over_d0", g.a_over_d0},
              {"kappa_over_k", g.kappa_over_k},
              {"c_over_k", g.c_over_k}};
}

// ---- synthesis ----

inline Json to_json(const SynthesisProblem& p) {
  return Json{{"n", p.n()},
              {"input_mode", p.input_mode()},
              {"target_probs", p.target_probs()},
              {"coupling_bounds", {p.coupling_bounds().first, p.coupling_bounds().second}},
              {"z_bounds", {p.z_bounds().first, p.z_bounds().second}},
              {"seed", p.seed()}};
}

inline SynthesisProblem problem_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("input_mode") || !j.contains("target_probs")) {
    throw IoError("problem JSON needs \"n\", \"input_mode\", \"target_probs\"");
  }
  std::pair<double, double> kb{0.1, 3.0}, zb{0.1, 5.0};
  if (j.contains("coupling_bounds")) {
    kb = {j["coupling_bounds"][0].get<double>(), j["coupling_bounds"][1].get<double>()};
  }
  if (j.contains("z_bounds")) {
    zb = {j["z_bounds"][0].get<double>(), j["z_bounds"][1].get<double>()};
  }
  return SynthesisProblem(j["n"].get<int>(), j["input_mode"].get<int>(),
                          j["target_probs"].get<std::vector<double>>(), kb, zb,
                          j.value("seed", std::uint64_t{0}));
}

inline Json to_json(const SynthesisResult& r) {
  return Json{{"couplings", r.couplings},
              {"z", r.z},
              {"residual", r.residual},
              {"converged", r.converged},
              {"achieved_state", to_json(r.achieved_state)}};
}

// ---- entanglement report ----

inline Json to_json(const EntanglementReport& r) {
  return Json{{"lhs_eq21", r.lhs_eq21},
              {"rhs_eq21", r.rhs_eq21},
              {"violated_eq20", r.violated_eq20},
              {"fidelity_gap_l1", r.fidelity_gap_l1},
              {"fidelity_gap_l2", r.fidelity_gap_l2},
              {"lhs_eq35", r.lhs_eq35},
              {"lambda", r.lambda},
              {"verdict", r.verdict == Verdict::kEntangled ? "entangled" : "not-detected"}};
}

// ---- circuits: {"n":int,"couplers":[{"t":[re,im],"r":[re,im]},...],"phases":[...]} ----

inline Json to_json(const CircuitSpec& spec) {
  Json couplers = Json::array();
  for (const auto& dc : spec.couplers()) {
    couplers.push_back(Json{{"t", io_detail::complex_to_json(dc.t())},
                            {"r", io_detail::complex_to_json(dc.r())}});
  }
  return Json{{"n", spec.n()}, {"couplers", couplers}, {"phases", spec.phases()}};
}

inline CircuitSpec circuit_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("couplers") || !j.contains("phases")) {
    throw IoError("circuit JSON needs \"n\", \"couplers\", \"phases\"");
  }
  std::vector<DirectionalCoupler> couplers;
  for (const Json& c : j["couplers"]) {
    couplers.emplace_back(io_detail::complex_from_json(c.at("t")),
                          io_detail::complex_from_json(c.at("r")));
  }
  std::vector<double> phases = j["phases"].get<std::vector<double>>();
  if (static_cast<int>(phases.size()) != j["n"].get<int>()) {
    throw IoError("circuit JSON: \"n\" disagrees with phase count");
  }
  return CircuitSpec(std::move(couplers), std::move(phases));
}

inline Json to_json(const MeasuredExpectations& m) {
  return Json{{"diff", m.diff}, {"sum", m.sum}};
}

/// Ordered stage list of the mesh for documentation: the N input phase
/// shifters followed by the N-1 couplers with their wiring.
inline Json to_netlist_json(const CircuitSpec& spec) {
  Json stages = Json::array();
  for (int j = 1; j <= spec.n(); ++j) {
    stages.push_back(Json{{"stage", "PS" + std::to_string(j)},
                          {"type", "phase-shifter"},
                          {"input", "a" + std::to_string(j)},
                          {"phi", spec.phases()[j - 1]}});
  }
  for (int j = 1; j < spec.n(); ++j) {
    const DirectionalCoupler& dc = spec.couplers()[j - 1];
    stages.push_back(Json{
        {"stage", "DC" + std::to_string(j)},
        {"type", "directional-coupler"},
        {"inputs", {j == 1 ? "a1" : "b" + std::to_string(j - 1), "a" + std::to_string(j + 1)}},
        {"outputs", {"b" + std::to_string(j), "c" + std::to_string(j)}},
        {"t", io_detail::complex_to_json(dc.t())},
        {"r", io_detail::complex_to_json(dc.r())}});
  }
  return stages;
}

// ---- CSV artifacts ----

namespace io_detail {

inline std::string full_precision(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace io_detail

/// Trace CSV: header z,p_1,...,p_dim; one row per grid point, full precision.
inline void write_trace_csv(std::ostream& os, const ProbabilityTrace& trace) {
  os << "z";
  for (int j = 1; j <= trace.dim(); ++j) os << ",p_" << j;
  os << "\n";
  for (std::size_t i = 0; i < trace.z_values().size(); ++i) {
    os << io_detail::full_precision(trace.z_values()[i]);
    for (int j = 0; j < trace.dim(); ++j) {
      os << "," << io_detail::full_precision(trace.probabilities()(static_cast<Eigen::Index>(i), j));
    }
    os << "\n";
  }
}

/// Bound-check CSV: seed,sum_var,bound,lhs21,rhs21,violates.
inline void write_bound_csv_header(std::ostream& os) {
  os << "seed,sum_var,bound,lhs21,rhs21,violates\n";
}

inline void write_bound_csv_row(std::ostream& os, std::uint64_t seed,
                                const BoundCheck& check) {
  os << seed << "," << io_detail::full_precision(check.sum_var) << ","
     << io_detail::full_precision(check.bound) << ","
     << io_detail::full_precision(check.lhs_eq21) << ","
     << io_detail::full_precision(check.rhs_eq21) << ","
     << (check.violates_eq20 ? 1 : 0) << "\n";
}

// ---- file helpers ----

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw IoError("malformed JSON in \"" + path + "\": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  out << content;
  if (!out) throw IoError("failed writing \"" + path + "\"");
}

}  // namespace perfectw
