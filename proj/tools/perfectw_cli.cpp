// perfectw command-line tool: evolves lattices, searches chain parameters,
// checks entanglement conditions, and simulates the coupler/phase-shifter
// measurement circuit. All artifacts are JSON or CSV as documented in the
// README. Exit codes: 0 success, 1 domain error, 2 I/O or parse error.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "perfectw/io.hpp"

namespace pw = perfectw;

namespace {

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
  } else {
    pw::write_text_file(out_path, content);
  }
}

void emit_json(const pw::Json& j, const std::string& out_path) {
  emit(j.dump(2), out_path);
}

pw::PhotonAmplitudes resolve_input_state(const pw::CouplingMatrix& matrix,
                                         std::optional<int> input_mode,
                                         const std::string& state_path) {
  if (input_mode && !state_path.empty()) {
    throw pw::DomainError("give either --input-mode or --state, not both");
  }
  if (input_mode) {
    if (*input_mode < 1 || *input_mode > matrix.dim()) {
      throw pw::DomainError("--input-mode out of range for this lattice");
    }
    return pw::PhotonAmplitudes::basis_state(matrix.dim(), *input_mode - 1);
  }
  if (!state_path.empty()) {
    return pw::state_from_json(pw::read_json_file(state_path));
  }
  throw pw::DomainError("need --input-mode or --state to define the photon input");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon perfect W-state synthesis and verification toolkit"};
  app.require_subcommand(1);

  std::string lattice_path, state_path, alphas_path, circuit_path, problem_path;
  std::string out_path;
  std::optional<int> input_mode;
  double z = 0.0, z_min = 0.0, z_max = 0.0, phi_n = std::numbers::pi / 2.0;
  int points = 200, n_ring = 7, starts = 128, modes = 3, cutoff = 2, samples = 1000;
  std::uint64_t seed = 1;
  bool allow_second_neighbor = false;
  std::string port = "b";
  std::string netlist_path;
  std::optional<double> tolerance;

  auto* evolve_cmd = app.add_subcommand("evolve", "Propagate a photon through a lattice");
  evolve_cmd->add_option("lattice", lattice_path, "lattice JSON (chain or ring)")->required();
  evolve_cmd->add_option("--z", z, "propagation distance (cm)")->required();
  evolve_cmd->add_option("--input-mode", input_mode, "1-based injection waveguide");
  evolve_cmd->add_option("--state", state_path, "input state JSON (alternative to --input-mode)");
  evolve_cmd->add_option("--out", out_path, "output state JSON path (default stdout)");

  auto* trace_cmd = app.add_subcommand("trace", "Probability trace over a z grid (CSV)");
  trace_cmd->add_option("lattice", lattice_path, "lattice JSON")->required();
  trace_cmd->add_option("--z-max", z_max, "grid end (cm)")->required();
  trace_cmd->add_option("--z-min", z_min, "grid start (cm)")->capture_default_str();
  trace_cmd->add_option("--points", points, "grid size")->capture_default_str();
  trace_cmd->add_option("--input-mode", input_mode, "1-based injection waveguide");
  trace_cmd->add_option("--state", state_path, "input state JSON");
  trace_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* synth_cmd = app.add_subcommand("synthesize", "Search chain parameters for a target profile");
  synth_cmd->add_option("problem", problem_path, "synthesis problem JSON")->required();
  synth_cmd->add_option("--starts", starts, "number of multi-start samples")->capture_default_str();
  synth_cmd->add_option("--out", out_path, "result JSON path (default stdout)");

  auto* ring_cmd = app.add_subcommand("ring-geometry", "Solve the resonant ring geometry");
  ring_cmd->add_option("n", n_ring, "number of surrounding waveguides")->required();
  ring_cmd->add_flag("--allow-second-neighbor", allow_second_neighbor,
                     "compute beyond 12 guides even though the nearest-neighbor model breaks down");
  ring_cmd->add_option("--out", out_path, "geometry JSON path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Entanglement report for a state");
  verify_cmd->add_option("state", state_path, "state JSON")->required();
  verify_cmd->add_option("--alphas", alphas_path,
                         "alpha JSON (default: matched family from the state's decomposition)");
  verify_cmd->add_option("--tolerance", tolerance,
                         "verdict threshold on the detection margin (default 1e-12)");
  verify_cmd->add_option("--out", out_path, "report JSON path (default stdout)");

  auto* design_cmd = app.add_subcommand("circuit-design", "Circuit realizing an alpha family");
  design_cmd->add_option("alphas", alphas_path, "alpha JSON")->required();
  design_cmd->add_option("--netlist", netlist_path, "also write the ordered stage list here");
  design_cmd->add_option("--out", out_path, "circuit JSON path (default stdout)");

  auto* measure_cmd = app.add_subcommand("circuit-measure", "Monitored-output expectations");
  measure_cmd->add_option("circuit", circuit_path, "circuit JSON")->required();
  measure_cmd->add_option("state", state_path, "input state JSON")->required();
  measure_cmd->add_option("--phi-n", phi_n, "last phase-shifter setting (rad)")->capture_default_str();
  measure_cmd->add_option("--out", out_path, "expectations JSON path (default stdout)");

  auto* generate_cmd = app.add_subcommand("circuit-generate", "Back-inject a photon at a monitored port");
  generate_cmd->add_option("circuit", circuit_path, "circuit JSON (phi_N must be pi/2)")->required();
  generate_cmd->add_option("--port", port, "output port, b or c")->capture_default_str();
  generate_cmd->add_option("--out", out_path, "state JSON path (default stdout)");

  auto* oracle_cmd = app.add_subcommand("oracle-suite", "Separability-bound checks on sampled product states (CSV)");
  oracle_cmd->add_option("--modes", modes, "mode count (2..5)")->capture_default_str();
  oracle_cmd->add_option("--cutoff", cutoff, "per-mode photon cap (1..3)")->capture_default_str();
  oracle_cmd->add_option("--samples", samples, "number of product states")->capture_default_str();
  oracle_cmd->add_option("--seed", seed, "root seed")->capture_default_str();
  oracle_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);

    if (evolve_cmd->parsed()) {
      const pw::CouplingMatrix m = pw::lattice_matrix(pw::lattice_from_json(pw::read_json_file(lattice_path)));
      const pw::PhotonAmplitudes input = resolve_input_state(m, input_mode, state_path);
      emit_json(pw::to_json(pw::evolve(m, z, input)), out_path);
    } else if (trace_cmd->parsed()) {
      const pw::CouplingMatrix m = pw::lattice_matrix(pw::lattice_from_json(pw::read_json_file(lattice_path)));
      const pw::PhotonAmplitudes input = resolve_input_state(m, input_mode, state_path);
      if (points < 2) throw pw::DomainError("--points must be at least 2");
      std::vector<double> grid(points);
      for (int i = 0; i < points; ++i) {
        grid[i] = z_min + (z_max - z_min) * static_cast<double>(i) / (points - 1);
      }
      std::ostringstream csv;
      pw::write_trace_csv(csv, pw::probability_trace(m, input, grid));
      emit(csv.str(), out_path);
    } else if (synth_cmd->parsed()) {
      const pw::SynthesisProblem problem = pw::problem_from_json(pw::read_json_file(problem_path));
      emit_json(pw::to_json(pw::search_chain_parameters(problem, starts)), out_path);
    } else if (ring_cmd->parsed()) {
      emit_json(pw::to_json(pw::ring_geometry(n_ring, allow_second_neighbor), n_ring), out_path);
    } else if (verify_cmd->parsed()) {
      const pw::PhotonAmplitudes state = pw::state_from_json(pw::read_json_file(state_path));
      pw::EntanglementReport report =
          alphas_path.empty()
              ? pw::auto_detect(state)
              : pw::single_photon_condition(state, pw::alphas_from_json(pw::read_json_file(alphas_path)));
      if (tolerance) {
        if (*tolerance < 0.0) throw pw::DomainError("--tolerance must be nonnegative");
        report.verdict = report.lhs_eq35 > *tolerance ? pw::Verdict::kEntangled
                                                      : pw::Verdict::kNotDetected;
      }
      emit_json(pw::to_json(report), out_path);
    } else if (design_cmd->parsed()) {
      const pw::CircuitSpec spec =
          pw::design_circuit(pw::alphas_from_json(pw::read_json_file(alphas_path)));
      if (!netlist_path.empty()) {
        pw::write_text_file(netlist_path, pw::to_netlist_json(spec).dump(2));
      }
      emit_json(pw::to_json(spec), out_path);
    } else if (measure_cmd->parsed()) {
      const pw::CircuitSpec spec = pw::circuit_from_json(pw::read_json_file(circuit_path));
      const pw::PhotonAmplitudes state = pw::state_from_json(pw::read_json_file(state_path));
      emit_json(pw::to_json(pw::measure_expectations(spec, state, phi_n)), out_path);
    } else if (generate_cmd->parsed()) {
      const pw::CircuitSpec spec = pw::circuit_from_json(pw::read_json_file(circuit_path));
      if (port != "b" && port != "c") throw pw::DomainError("--port must be b or c");
      const pw::OutputPort p = port == "b" ? pw::OutputPort::kB : pw::OutputPort::kC;
      emit_json(pw::to_json(pw::generate_from_circuit(spec, p)), out_path);
    } else if (oracle_cmd->parsed()) {
      if (samples < 1) throw pw::DomainError("--samples must be positive");
      const pw::AlphaVector alphas = pw::AlphaVector::uniform(modes - 1);
      std::ostringstream csv;
      pw::write_bound_csv_header(csv);
      for (int i = 0; i < samples; ++i) {
        const std::uint64_t sample_seed = pw::SplitMix64::derive(seed, static_cast<std::uint64_t>(i));
        const pw::FockState s = pw::sample_product_state(modes, cutoff, sample_seed);
        pw::write_bound_csv_row(csv, sample_seed, pw::check_bound(s, alphas));
      }
      emit(csv.str(), out_path);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const pw::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const pw::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
