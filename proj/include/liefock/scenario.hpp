#ifndef LIEFOCK_SCENARIO_HPP
#define LIEFOCK_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liefock/coherent.hpp"
#include "liefock/dynamics.hpp"
#include "liefock/hamiltonians.hpp"

namespace liefock {

inline constexpr int kConfigVersion = 1;

struct TermSpec {
  std::string label;
  double coef = 0.0;
  double phase = 0.0;  // coefficient becomes coef * e^{i phase}

  friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

// Either a named model (`model` + params) or an algebra with explicit terms.
struct HamiltonianSpec {
  std::string model;
  std::string algebra;
  Params params;
  std::vector<TermSpec> terms;

  friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;
};

enum class InitialKind { basis_state, coherent, vector, reference };

struct InitialSpec {
  InitialKind kind = InitialKind::basis_state;
  BasisState occupations;
  CoherentParams coherent;
  std::vector<cplx> amplitudes;
  std::size_t reference = 0;

  friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

// Either explicit values or `steps` equal intervals on [start, stop].
struct TimeGrid {
  std::vector<double> values;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  bool is_range() const { return values.empty(); }
  std::vector<double> expand() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct SnapshotSpec {
  std::size_t index = 0;  // position in the time grid
  std::string heatmap;    // weight-lattice image, summed over multiplicities
  std::string csv;        // per-site population table
  bool fourth_root = false;

  friend bool operator==(const SnapshotSpec&, const SnapshotSpec&) = default;
};

struct HusimiSpec {
  std::size_t index = 0;
  PhaseSpace space = PhaseSpace::plane;
  int n1 = 201;
  int n2 = 201;
  double extent = 5.0;
  double k = 0.25;
  std::string csv;
  std::string heatmap;

  friend bool operator==(const HusimiSpec&, const HusimiSpec&) = default;
};

struct OutputSpec {
  std::string populations;
  std::string observables;
  std::string fidelity;
  std::string graph;
  std::string adjacency;
  std::string fluxes;
  std::string spectrum;
  std::string closure;
  std::vector<SnapshotSpec> snapshots;
  std::vector<HusimiSpec> husimi;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

enum class RunKind { evolve, closure };

struct RunSpec {
  std::string id;
  RunKind kind = RunKind::evolve;
  // evolve
  HamiltonianSpec hamiltonian;
  InitialSpec initial;
  TimeGrid times;
  Method method = Method::automatic;
  std::vector<std::string> observables;
  double revival_threshold = 0.99;
  // closure
  std::string seed;
  std::size_t cap = 64;

  OutputSpec outputs;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

struct ScenarioConfig {
  int version = kConfigVersion;
  std::string name;
  std::vector<RunSpec> runs;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Strict parse: unknown fields and type errors raise ConfigError with the
// JSON path of the offending field.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig parse_config_text(const std::string& text);
nlohmann::json to_json(const ScenarioConfig& config);

std::vector<std::string> scenario_names();
// fig4_so5 accepts N (default 20).
ScenarioConfig builtin_scenario(const std::string& name, const Params& overrides = {});

struct RunOptions {
  int threads = 1;
  double krylov_tol = 1e-10;
};

struct OutputFile {
  std::string path;  // relative to the output directory
  std::size_t bytes = 0;
  std::string hash;
};

struct RunArchive {
  std::string config_hash;
  int version = kConfigVersion;
  std::vector<OutputFile> outputs;
  nlohmann::json results;  // per-run summaries keyed by run id
  double wall_seconds = 0.0;

  // Deterministic part only (no timing), as written to manifest.json.
  nlohmann::json manifest() const;
};

// Builds every run, then writes all outputs (and manifest.json) under
// `out_dir` in one pass at the end.
RunArchive run_scenario(const ScenarioConfig& config, const std::string& out_dir, const RunOptions& opts = {});

// Builds the Hamiltonian of a run (exposed for tests and the CLI).
ModelHamiltonian build_hamiltonian(const HamiltonianSpec& spec);
Vector build_initial_state(const InitialSpec& spec, const AlgebraModel& model);

// Weight-lattice image of a population vector: rows follow the second Cartan
// coordinate (descending), columns the first; multiplicities are summed.
Eigen::MatrixXd lattice_image(const AlgebraModel& model, const Eigen::VectorXd& populations);

}  // namespace liefock

#endif  // LIEFOCK_SCENARIO_HPP
