// Command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "liefock/algebra.hpp"
#include "liefock/coherent.hpp"
#include "liefock/errors.hpp"
#include "liefock/io.hpp"
#include "liefock/lattice.hpp"
#include "liefock/oracles.hpp"
#include "liefock/scenario.hpp"

using namespace liefock;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumeric = 3, kResource = 4 };

Params parse_params(const std::vector<std::string>& items, const std::string& flag) {
  Params out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(flag, "expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || !std::isfinite(x)) throw ConfigError(flag + " " + key, "not a finite number: '" + val + "'");
    if (!out.emplace(key, x).second) throw ConfigError(flag + " " + key, "given twice");
  }
  return out;
}

BasisState parse_state(const std::string& s) {
  BasisState out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("--state", "expected comma-separated integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw ConfigError("--state", "empty state");
  return out;
}

// Coherent parameters from key=value pairs; `kind` is given separately.
CoherentParams parse_coherent(const std::string& kind, const Params& p) {
  json j{{"kind", kind}};
  auto take = [&](const char* key) { return p.count(key) ? p.at(key) : 0.0; };
  for (const auto& [k, v] : p) {
    (void)v;
    static const std::set<std::string> known{"beta_re", "beta_im", "theta", "phi", "r", "theta_s", "k",
                                             "theta1", "theta2", "phi1", "phi2"};
    if (!known.count(k)) throw ConfigError("--coherent " + k, "unknown coherent parameter");
  }
  if (kind == "displaced" || kind == "euclidean") {
    j["beta"] = {take("beta_re"), take("beta_im")};
  } else if (kind == "spin") {
    j["theta"] = take("theta");
    j["phi"] = take("phi");
  } else if (kind == "squeezed") {
    j["r"] = take("r");
    j["theta_s"] = take("theta_s");
    j["k"] = p.count("k") ? p.at("k") : 0.25;
  } else if (kind == "su3") {
    j["angles"] = {take("theta1"), take("theta2"), take("phi1"), take("phi2")};
  }
  // Reuse the strict scenario reader for validation.
  json cfg{{"version", kConfigVersion},
           {"name", "cli"},
           {"runs", {{{"id", "x"}, {"hamiltonian", {{"model", "spin_hop"}}}, {"initial", {{"coherent", j}}}, {"times", {0.0}}}}}};
  return parse_config(cfg).runs[0].initial.coherent;
}

ScenarioConfig single_run(RunSpec run) {
  ScenarioConfig c;
  c.name = run.id;
  c.runs.push_back(std::move(run));
  return c;
}

void print_archive(const RunArchive& a, const std::string& out_dir) {
  std::cout << a.manifest().dump(2) << "\n";
  std::cerr << "wrote " << a.outputs.size() + 1 << " files to " << out_dir << " in " << a.wall_seconds << " s\n";
}

json algebra_json(const AlgebraModel& m, bool verify) {
  json gens = json::array();
  for (const auto& g : m.generators) {
    gens.push_back({{"label", g.label}, {"hermitian", g.op.hermitian()}, {"grade", to_string(g.op.grade())}, {"nnz", g.op.matrix().nonZeros()}});
  }
  json roots = json::array();
  for (const auto& r : m.roots) {
    json v = json::array();
    for (const auto& x : r.root) v.push_back(x.den() == 1 ? std::to_string(x.num()) : std::to_string(x.num()) + "/" + std::to_string(x.den()));
    roots.push_back({{"raise", m.generators[r.raise].label}, {"lower", m.generators[r.lower].label}, {"root", v}});
  }
  std::vector<std::string> cartan;
  for (auto i : m.cartan) cartan.push_back(m.generators[i].label);
  json out{{"name", m.name}, {"basis", m.basis->to_json()}, {"generators", gens}, {"cartan", cartan}, {"roots", roots},
           {"graded", m.graded}};
  if (verify) {
    const VerifyReport v = verify_algebra(m);
    json cas = json::array();
    for (const auto& [label, defect] : v.casimirs) cas.push_back({{"label", label}, {"defect", defect}});
    out["verify"] = {{"cartan_ok", v.cartan_ok}, {"root_eigen_ok", v.root_eigen_ok}, {"cartan_defect", v.cartan_defect},
                     {"root_defect", v.root_defect}, {"closure_dim", v.closure.dim}, {"closure_closed", v.closure.closed},
                     {"closure_residual", v.closure_residual}, {"casimirs", cas}};
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-state lattices from Lie-algebra generators and sparse Hamiltonians"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir = "out";
  int threads = 1;
  double tol = 1e-10;
  app.add_option("--out-dir", out_dir, "Directory for written outputs")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for Husimi grids")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol", tol, "Krylov propagation tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> params;
  auto add_params = [&](CLI::App* sub) { sub->add_option("-p,--param", params, "key=value parameter (repeatable)"); };

  // algebra
  auto* alg = app.add_subcommand("algebra", "Describe a catalog algebra");
  std::string alg_name;
  bool alg_verify = false;
  alg->add_option("name", alg_name, "Algebra name (or 'list')")->required();
  alg->add_flag("--verify", alg_verify, "Check Cartan, root and closure invariants");
  add_params(alg);

  // closure
  auto* clo = app.add_subcommand("closure", "Commutator closure of a named seed");
  std::string seed_name;
  std::size_t cap = 64;
  clo->add_option("seed", seed_name, "Seed name (or 'list')")->required();
  clo->add_option("--cap", cap, "Dimension cap")->capture_default_str();

  // lattice
  auto* lat = app.add_subcommand("lattice", "Build the lattice of a named Hamiltonian");
  std::string ham_name;
  bool lat_spectrum = false;
  lat->add_option("--hamiltonian", ham_name, "Hamiltonian name")->required();
  lat->add_flag("--spectrum", lat_spectrum, "Also write the spectrum");
  add_params(lat);

  // evolve
  auto* evo = app.add_subcommand("evolve", "Evolve a basis state under a named Hamiltonian");
  std::string state_text, method_name = "auto";
  double t_max = 1.0;
  int steps = 100;
  std::vector<std::string> observables;
  evo->add_option("--hamiltonian", ham_name, "Hamiltonian name")->required();
  evo->add_option("--state", state_text, "Initial occupations, comma separated")->required();
  evo->add_option("--t-max", t_max, "Final time")->capture_default_str();
  evo->add_option("--steps", steps, "Number of time steps")->capture_default_str();
  evo->add_option("--method", method_name, "dense_eig, krylov or auto")->capture_default_str();
  evo->add_option("--observable", observables, "Generator label to track (repeatable)");
  add_params(evo);

  // husimi
  auto* hus = app.add_subcommand("husimi", "Husimi function of a coherent state");
  std::string hus_algebra, coherent_kind, space_name;
  std::vector<std::string> coherent_items;
  int n1 = 101, n2 = 101;
  double extent = 5.0;
  hus->add_option("--algebra", hus_algebra, "Algebra name")->required();
  hus->add_option("--coherent", coherent_kind, "Coherent kind: displaced, spin, squeezed, su3, euclidean")->required();
  hus->add_option("--set", coherent_items, "Coherent parameter key=value (repeatable)");
  hus->add_option("--space", space_name, "plane, sphere, cylinder or disk")->required();
  hus->add_option("--n1", n1)->check(CLI::PositiveNumber)->capture_default_str();
  hus->add_option("--n2", n2)->check(CLI::PositiveNumber)->capture_default_str();
  hus->add_option("--extent", extent)->capture_default_str();
  add_params(hus);

  // oracle
  auto* ora = app.add_subcommand("oracle", "Closed-form reference values");
  std::string oracle_kind;
  ora->add_option("kind", oracle_kind, "Oracle kind (or 'list')")->required();
  add_params(ora);

  // scenario
  auto* sce = app.add_subcommand("scenario", "Named or file-based scenarios");
  sce->require_subcommand(1);
  sce->fallthrough();
  sce->add_subcommand("list", "List built-in scenarios");
  auto* sce_run = sce->add_subcommand("run", "Run a built-in scenario or a JSON config file");
  std::string scenario_target;
  sce_run->add_option("target", scenario_target, "Scenario name or path to a config file")->required();
  add_params(sce_run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  RunOptions ro;
  ro.threads = threads;
  ro.krylov_tol = tol;

  try {
    const Params p = parse_params(params, "--param");
    if (alg->parsed()) {
      if (alg_name == "list") {
        std::cout << json(algebra_names()).dump() << "\n";
      } else {
        std::cout << algebra_json(build_algebra(alg_name, p), alg_verify).dump(2) << "\n";
      }
    } else if (clo->parsed()) {
      if (seed_name == "list") {
        std::cout << json(closure_seed_names()).dump() << "\n";
      } else {
        RunSpec r;
        r.id = seed_name;
        r.kind = RunKind::closure;
        r.seed = seed_name;
        r.cap = cap;
        r.outputs.closure = "closure.json";
        print_archive(run_scenario(single_run(r), out_dir, ro), out_dir);
      }
    } else if (lat->parsed()) {
      RunSpec r;
      r.id = ham_name;
      r.hamiltonian.model = ham_name;
      r.hamiltonian.params = p;
      const auto mh = named_hamiltonian(ham_name, p);
      r.initial.kind = InitialKind::basis_state;
      r.initial.occupations = mh.model.basis->state_at(0);
      r.times.values = {0.0};
      r.outputs.graph = "graph.json";
      r.outputs.adjacency = "adjacency.csv";
      r.outputs.fluxes = "fluxes.json";
      if (lat_spectrum) r.outputs.spectrum = "spectrum.csv";
      print_archive(run_scenario(single_run(r), out_dir, ro), out_dir);
    } else if (evo->parsed()) {
      RunSpec r;
      r.id = ham_name;
      r.hamiltonian.model = ham_name;
      r.hamiltonian.params = p;
      r.initial.kind = InitialKind::basis_state;
      r.initial.occupations = parse_state(state_text);
      if (steps < 1) throw ConfigError("times", "empty time grid: --steps must be >= 1");
      if (!(t_max > 0.0)) throw ConfigError("times", "--t-max must be positive");
      r.times.stop = t_max;
      r.times.steps = steps;
      try {
        r.method = method_from_string(method_name);
      } catch (const InvalidArgument& e) {
        throw ConfigError("--method", e.what());
      }
      r.observables = observables;
      r.outputs.populations = "populations.csv";
      r.outputs.fidelity = "fidelity.csv";
      if (!observables.empty()) r.outputs.observables = "observables.csv";
      print_archive(run_scenario(single_run(r), out_dir, ro), out_dir);
    } else if (hus->parsed()) {
      const AlgebraModel m = build_algebra(hus_algebra, p);
      CoherentParams cp = parse_coherent(coherent_kind, parse_params(coherent_items, "--set"));
      const Vector psi = closed_form_state(cp, *m.basis);
      const double leak = boundary_leakage(m, psi);
      if (leak > kLeakageWarning) std::cerr << "warning: boundary leakage " << leak << " exceeds " << kLeakageWarning << "\n";
      HusimiOptions ho;
      try {
        ho.space = phase_space_from_string(space_name);
      } catch (const InvalidArgument& e) {
        throw ConfigError("--space", e.what());
      }
      ho.n1 = n1;
      ho.n2 = n2;
      ho.extent = extent;
      ho.k = cp.k;
      ho.threads = threads;
      const HusimiGrid g = husimi(m, psi, ho);
      CsvTable t({"axis1", "axis2", "weight", "value"});
      for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
          t.add_row({g.axis1[static_cast<std::size_t>(i)], g.axis2[static_cast<std::size_t>(j)], g.weights(i, j), g.values(i, j)});
        }
      }
      namespace fs = std::filesystem;
      write_file((fs::path(out_dir) / "husimi.csv").string(), t.str());
      export_heatmap(g.values, (fs::path(out_dir) / "husimi.pgm").string());
      json out{{"space", to_string(g.space)}, {"w", g.w}, {"normalizable", g.normalizable}, {"leakage", leak}};
      if (g.normalizable) out["integral"] = g.integral();
      std::cout << out.dump(2) << "\n";
    } else if (ora->parsed()) {
      if (oracle_kind == "list") {
        std::cout << json(oracle_kinds()).dump() << "\n";
      } else {
        std::cout << oracle_values(oracle_kind, p).dump(2) << "\n";
      }
    } else if (sce->parsed()) {
      if (sce_run->parsed()) {
        ScenarioConfig cfg;
        if (std::filesystem::is_regular_file(scenario_target)) {
          if (!p.empty()) throw ConfigError("--param", "parameters apply only to built-in scenarios");
          cfg = parse_config_text(read_file(scenario_target));
        } else {
          try {
            cfg = builtin_scenario(scenario_target, p);
          } catch (const ConfigError&) {
            throw;
          } catch (const InvalidArgument& e) {
            throw ConfigError(scenario_target, e.what());
          }
        }
        print_archive(run_scenario(cfg, out_dir, ro), out_dir);
      } else {
        for (const auto& n : scenario_names()) std::cout << n << "\n";
      }
    }
  } catch (const NumericContractError& e) {
    std::cerr << "numeric contract violation: " << e.what() << "\n";
    return kNumeric;
  } catch (const ResourceGuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kResource;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
