#include "liefock/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <set>

#include "liefock/errors.hpp"
#include "liefock/io.hpp"
#include "liefock/lattice.hpp"
#include "liefock/params.hpp"

namespace liefock {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Strict JSON reading with field paths.

std::string at_key(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!allowed.count(k)) throw ConfigError(at_key(path, k), "unknown field");
  }
}

const json& required(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(at_key(path, key), "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

std::size_t count(const json& j, const std::string& path) {
  const long long v = integer(j, path);
  if (v < 0) throw ConfigError(path, "must be >= 0");
  return static_cast<std::size_t>(v);
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

cplx complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [re, im]");
  return {number(j[0], at_index(path, 0)), number(j[1], at_index(path, 1))};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

Params params_from(const json& j, const std::string& path) {
  require_object(j, path);
  Params out;
  for (const auto& [k, v] : j.items()) out[k] = number(v, at_key(path, k));
  return out;
}

json params_json(const Params& p) {
  json out = json::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

template <class F>
auto optional_field(const json& j, const std::string& key, const std::string& path, F read) {
  using R = decltype(read(j, path));
  auto it = j.find(key);
  if (it == j.end()) return std::optional<R>{};
  return std::optional<R>{read(*it, at_key(path, key))};
}

// ---------------------------------------------------------------------------

CoherentParams coherent_from(const json& j, const std::string& path) {
  require_object(j, path);
  CoherentParams c;
  const std::string kind = text(required(j, "kind", path), at_key(path, "kind"));
  try {
    c.kind = coherent_kind_from_string(kind);
  } catch (const InvalidArgument& e) {
    throw ConfigError(at_key(path, "kind"), e.what());
  }
  switch (c.kind) {
    case CoherentKind::displaced:
    case CoherentKind::euclidean:
      check_keys(j, path, {"kind", "beta"});
      c.beta = complex_value(required(j, "beta", path), at_key(path, "beta"));
      break;
    case CoherentKind::spin:
      check_keys(j, path, {"kind", "theta", "phi"});
      c.theta = number(required(j, "theta", path), at_key(path, "theta"));
      c.phi = number(required(j, "phi", path), at_key(path, "phi"));
      break;
    case CoherentKind::squeezed:
      check_keys(j, path, {"kind", "r", "theta_s", "k"});
      c.r = number(required(j, "r", path), at_key(path, "r"));
      c.theta_s = optional_field(j, "theta_s", path, number).value_or(0.0);
      c.k = optional_field(j, "k", path, number).value_or(0.25);
      break;
    case CoherentKind::su3: {
      check_keys(j, path, {"kind", "zeta", "angles"});
      const bool has_zeta = j.contains("zeta"), has_angles = j.contains("angles");
      if (has_zeta == has_angles) throw ConfigError(path, "give exactly one of zeta or angles");
      if (has_zeta) {
        const auto& z = j["zeta"];
        const std::string zp = at_key(path, "zeta");
        if (!z.is_array() || z.size() != 3) throw ConfigError(zp, "expected three complex values");
        for (std::size_t i = 0; i < 3; ++i) c.zeta[i] = complex_value(z[i], at_index(zp, i));
      } else {
        const auto& a = j["angles"];
        const std::string ap = at_key(path, "angles");
        if (!a.is_array() || a.size() != 4) throw ConfigError(ap, "expected [theta1, theta2, phi1, phi2]");
        try {
          c = CoherentParams::su3_angles(number(a[0], ap), number(a[1], ap), number(a[2], ap), number(a[3], ap));
        } catch (const ConfigError&) {
          throw;
        } catch (const InvalidArgument& e) {
          throw ConfigError(ap, e.what());
        }
      }
      break;
    }
  }
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
  return c;
}

json coherent_json(const CoherentParams& c) {
  json out{{"kind", to_string(c.kind)}};
  switch (c.kind) {
    case CoherentKind::displaced:
    case CoherentKind::euclidean: out["beta"] = complex_json(c.beta); break;
    case CoherentKind::spin:
      out["theta"] = c.theta;
      out["phi"] = c.phi;
      break;
    case CoherentKind::squeezed:
      out["r"] = c.r;
      out["theta_s"] = c.theta_s;
      out["k"] = c.k;
      break;
    case CoherentKind::su3:
      out["zeta"] = json::array({complex_json(c.zeta[0]), complex_json(c.zeta[1]), complex_json(c.zeta[2])});
      break;
  }
  return out;
}

HamiltonianSpec hamiltonian_from(const json& j, const std::string& path) {
  check_keys(j, path, {"model", "algebra", "params", "terms"});
  HamiltonianSpec h;
  const bool named = j.contains("model"), algebra = j.contains("algebra");
  if (named == algebra) throw ConfigError(path, "give exactly one of model or algebra");
  if (named) {
    h.model = text(j["model"], at_key(path, "model"));
    if (j.contains("terms")) throw ConfigError(at_key(path, "terms"), "terms apply only with algebra");
  } else {
    h.algebra = text(j["algebra"], at_key(path, "algebra"));
    const auto& terms = required(j, "terms", path);
    const std::string tp = at_key(path, "terms");
    if (!terms.is_array() || terms.empty()) throw ConfigError(tp, "expected a non-empty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string p = at_index(tp, i);
      check_keys(terms[i], p, {"label", "coef", "phase"});
      TermSpec t;
      t.label = text(required(terms[i], "label", p), at_key(p, "label"));
      t.coef = number(required(terms[i], "coef", p), at_key(p, "coef"));
      t.phase = optional_field(terms[i], "phase", p, number).value_or(0.0);
      h.terms.push_back(std::move(t));
    }
  }
  if (j.contains("params")) h.params = params_from(j["params"], at_key(path, "params"));
  return h;
}

json hamiltonian_json(const HamiltonianSpec& h) {
  json out = json::object();
  if (!h.model.empty()) {
    out["model"] = h.model;
  } else {
    out["algebra"] = h.algebra;
    json terms = json::array();
    for (const auto& t : h.terms) terms.push_back({{"label", t.label}, {"coef", t.coef}, {"phase", t.phase}});
    out["terms"] = std::move(terms);
  }
  out["params"] = params_json(h.params);
  return out;
}

InitialSpec initial_from(const json& j, const std::string& path) {
  check_keys(j, path, {"basis_state", "coherent", "vector", "reference"});
  if (j.size() != 1) throw ConfigError(path, "give exactly one of basis_state, coherent, vector, reference");
  InitialSpec s;
  if (j.contains("basis_state")) {
    s.kind = InitialKind::basis_state;
    const auto& a = j["basis_state"];
    const std::string p = at_key(path, "basis_state");
    if (!a.is_array() || a.empty()) throw ConfigError(p, "expected a non-empty array of occupations");
    for (std::size_t i = 0; i < a.size(); ++i) s.occupations.push_back(static_cast<int>(integer(a[i], at_index(p, i))));
  } else if (j.contains("coherent")) {
    s.kind = InitialKind::coherent;
    s.coherent = coherent_from(j["coherent"], at_key(path, "coherent"));
  } else if (j.contains("vector")) {
    s.kind = InitialKind::vector;
    const auto& a = j["vector"];
    const std::string p = at_key(path, "vector");
    if (!a.is_array() || a.empty()) throw ConfigError(p, "expected a non-empty array of amplitudes");
    for (std::size_t i = 0; i < a.size(); ++i) s.amplitudes.push_back(complex_value(a[i], at_index(p, i)));
  } else {
    s.kind = InitialKind::reference;
    s.reference = count(j["reference"], at_key(path, "reference"));
  }
  return s;
}

json initial_json(const InitialSpec& s) {
  switch (s.kind) {
    case InitialKind::basis_state: return {{"basis_state", s.occupations}};
    case InitialKind::coherent: return {{"coherent", coherent_json(s.coherent)}};
    case InitialKind::vector: {
      json a = json::array();
      for (const auto& z : s.amplitudes) a.push_back(complex_json(z));
      return {{"vector", a}};
    }
    case InitialKind::reference: return {{"reference", s.reference}};
  }
  return json::object();
}

TimeGrid times_from(const json& j, const std::string& path) {
  TimeGrid g;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError(path, "empty time grid");
    for (std::size_t i = 0; i < j.size(); ++i) g.values.push_back(number(j[i], at_index(path, i)));
    for (std::size_t i = 1; i < g.values.size(); ++i) {
      if (!(g.values[i] > g.values[i - 1])) throw ConfigError(at_index(path, i), "time grid must be strictly increasing");
    }
    return g;
  }
  check_keys(j, path, {"start", "stop", "steps"});
  g.start = optional_field(j, "start", path, number).value_or(0.0);
  g.stop = number(required(j, "stop", path), at_key(path, "stop"));
  const long long steps = integer(required(j, "steps", path), at_key(path, "steps"));
  if (steps < 1) throw ConfigError(at_key(path, "steps"), "empty time grid: steps must be >= 1");
  if (!(g.stop > g.start)) throw ConfigError(at_key(path, "stop"), "must exceed start");
  g.steps = static_cast<int>(steps);
  return g;
}

json times_json(const TimeGrid& g) {
  if (!g.is_range()) return g.values;
  return {{"start", g.start}, {"stop", g.stop}, {"steps", g.steps}};
}

OutputSpec outputs_from(const json& j, const std::string& path) {
  check_keys(j, path, {"populations", "observables", "fidelity", "graph", "adjacency", "fluxes", "spectrum", "closure",
                       "snapshots", "husimi"});
  OutputSpec o;
  auto s = [&](const char* key, std::string& dst) {
    if (j.contains(key)) dst = text(j[key], at_key(path, key));
  };
  s("populations", o.populations);
  s("observables", o.observables);
  s("fidelity", o.fidelity);
  s("graph", o.graph);
  s("adjacency", o.adjacency);
  s("fluxes", o.fluxes);
  s("spectrum", o.spectrum);
  s("closure", o.closure);
  if (j.contains("snapshots")) {
    const std::string sp = at_key(path, "snapshots");
    if (!j["snapshots"].is_array()) throw ConfigError(sp, "expected an array");
    for (std::size_t i = 0; i < j["snapshots"].size(); ++i) {
      const auto& e = j["snapshots"][i];
      const std::string p = at_index(sp, i);
      check_keys(e, p, {"index", "heatmap", "csv", "fourth_root"});
      SnapshotSpec snap;
      snap.index = count(required(e, "index", p), at_key(p, "index"));
      snap.heatmap = optional_field(e, "heatmap", p, text).value_or("");
      snap.csv = optional_field(e, "csv", p, text).value_or("");
      snap.fourth_root = optional_field(e, "fourth_root", p, boolean).value_or(false);
      o.snapshots.push_back(std::move(snap));
    }
  }
  if (j.contains("husimi")) {
    const std::string hp = at_key(path, "husimi");
    if (!j["husimi"].is_array()) throw ConfigError(hp, "expected an array");
    for (std::size_t i = 0; i < j["husimi"].size(); ++i) {
      const auto& e = j["husimi"][i];
      const std::string p = at_index(hp, i);
      check_keys(e, p, {"index", "space", "n1", "n2", "extent", "k", "csv", "heatmap"});
      HusimiSpec h;
      h.index = count(required(e, "index", p), at_key(p, "index"));
      try {
        h.space = phase_space_from_string(text(required(e, "space", p), at_key(p, "space")));
      } catch (const ConfigError&) {
        throw;
      } catch (const InvalidArgument& ex) {
        throw ConfigError(at_key(p, "space"), ex.what());
      }
      h.n1 = static_cast<int>(optional_field(e, "n1", p, integer).value_or(201));
      h.n2 = static_cast<int>(optional_field(e, "n2", p, integer).value_or(201));
      if (h.n1 < 1 || h.n2 < 1) throw ConfigError(p, "grid sizes must be positive");
      h.extent = optional_field(e, "extent", p, number).value_or(5.0);
      h.k = optional_field(e, "k", p, number).value_or(0.25);
      h.csv = optional_field(e, "csv", p, text).value_or("");
      h.heatmap = optional_field(e, "heatmap", p, text).value_or("");
      o.husimi.push_back(std::move(h));
    }
  }
  return o;
}

json outputs_json(const OutputSpec& o) {
  json out = json::object();
  auto s = [&](const char* key, const std::string& v) {
    if (!v.empty()) out[key] = v;
  };
  s("populations", o.populations);
  s("observables", o.observables);
  s("fidelity", o.fidelity);
  s("graph", o.graph);
  s("adjacency", o.adjacency);
  s("fluxes", o.fluxes);
  s("spectrum", o.spectrum);
  s("closure", o.closure);
  if (!o.snapshots.empty()) {
    json a = json::array();
    for (const auto& snap : o.snapshots) {
      json e{{"index", snap.index}, {"fourth_root", snap.fourth_root}};
      if (!snap.heatmap.empty()) e["heatmap"] = snap.heatmap;
      if (!snap.csv.empty()) e["csv"] = snap.csv;
      a.push_back(std::move(e));
    }
    out["snapshots"] = std::move(a);
  }
  if (!o.husimi.empty()) {
    json a = json::array();
    for (const auto& h : o.husimi) {
      json e{{"index", h.index}, {"space", to_string(h.space)}, {"n1", h.n1}, {"n2", h.n2}, {"extent", h.extent}, {"k", h.k}};
      if (!h.csv.empty()) e["csv"] = h.csv;
      if (!h.heatmap.empty()) e["heatmap"] = h.heatmap;
      a.push_back(std::move(e));
    }
    out["husimi"] = std::move(a);
  }
  return out;
}

RunSpec run_from(const json& j, const std::string& path) {
  check_keys(j, path, {"id", "kind", "hamiltonian", "initial", "times", "method", "observables", "revival_threshold",
                       "seed", "cap", "outputs"});
  RunSpec r;
  r.id = text(required(j, "id", path), at_key(path, "id"));
  if (r.id.empty() || r.id.find('/') != std::string::npos || r.id.find("..") != std::string::npos) {
    throw ConfigError(at_key(path, "id"), "must be a plain non-empty name");
  }
  const std::string kind = optional_field(j, "kind", path, text).value_or("evolve");
  if (kind == "evolve") {
    r.kind = RunKind::evolve;
    for (const char* k : {"seed", "cap"}) {
      if (j.contains(k)) throw ConfigError(at_key(path, k), "only valid for closure runs");
    }
    r.hamiltonian = hamiltonian_from(required(j, "hamiltonian", path), at_key(path, "hamiltonian"));
    r.initial = initial_from(required(j, "initial", path), at_key(path, "initial"));
    r.times = times_from(required(j, "times", path), at_key(path, "times"));
    if (j.contains("method")) {
      try {
        r.method = method_from_string(text(j["method"], at_key(path, "method")));
      } catch (const ConfigError&) {
        throw;
      } catch (const InvalidArgument& e) {
        throw ConfigError(at_key(path, "method"), e.what());
      }
    }
    if (j.contains("observables")) {
      const std::string op = at_key(path, "observables");
      if (!j["observables"].is_array()) throw ConfigError(op, "expected an array of generator labels");
      for (std::size_t i = 0; i < j["observables"].size(); ++i) r.observables.push_back(text(j["observables"][i], at_index(op, i)));
    }
    r.revival_threshold = optional_field(j, "revival_threshold", path, number).value_or(0.99);
    if (!(r.revival_threshold > 0.0 && r.revival_threshold <= 1.0)) {
      throw ConfigError(at_key(path, "revival_threshold"), "must lie in (0, 1]");
    }
  } else if (kind == "closure") {
    r.kind = RunKind::closure;
    for (const char* k : {"hamiltonian", "initial", "times", "method", "observables", "revival_threshold"}) {
      if (j.contains(k)) throw ConfigError(at_key(path, k), "not valid for closure runs");
    }
    r.seed = text(required(j, "seed", path), at_key(path, "seed"));
    r.cap = optional_field(j, "cap", path, count).value_or(64);
  } else {
    throw ConfigError(at_key(path, "kind"), "expected evolve or closure");
  }
  if (j.contains("outputs")) r.outputs = outputs_from(j["outputs"], at_key(path, "outputs"));
  return r;
}

json run_json(const RunSpec& r) {
  json out{{"id", r.id}};
  if (r.kind == RunKind::closure) {
    out["kind"] = "closure";
    out["seed"] = r.seed;
    out["cap"] = r.cap;
  } else {
    out["kind"] = "evolve";
    out["hamiltonian"] = hamiltonian_json(r.hamiltonian);
    out["initial"] = initial_json(r.initial);
    out["times"] = times_json(r.times);
    out["method"] = to_string(r.method);
    out["observables"] = r.observables;
    out["revival_threshold"] = r.revival_threshold;
  }
  out["outputs"] = outputs_json(r.outputs);
  return out;
}

}  // namespace

std::vector<double> TimeGrid::expand() const {
  if (!is_range()) return values;
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) out[static_cast<std::size_t>(k)] = start + (stop - start) * k / steps;
  return out;
}

ScenarioConfig parse_config(const json& j) {
  check_keys(j, "", {"version", "name", "runs"});
  ScenarioConfig c;
  const long long v = integer(required(j, "version", ""), "version");
  if (v != kConfigVersion) throw ConfigError("version", "unsupported version " + std::to_string(v));
  c.version = static_cast<int>(v);
  c.name = text(required(j, "name", ""), "name");
  const auto& runs = required(j, "runs", "");
  if (!runs.is_array() || runs.empty()) throw ConfigError("runs", "expected a non-empty array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    c.runs.push_back(run_from(runs[i], at_index("runs", i)));
    if (!ids.insert(c.runs.back().id).second) throw ConfigError(at_index("runs", i) + ".id", "duplicate run id");
  }
  return c;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const ScenarioConfig& config) {
  json runs = json::array();
  for (const auto& r : config.runs) runs.push_back(run_json(r));
  return {{"version", config.version}, {"name", config.name}, {"runs", runs}};
}

// ---------------------------------------------------------------------------
// Built-in scenarios.

std::vector<std::string> scenario_names() {
  return {"fig2_su2", "fig3_su3", "fig4_so5", "ws_breathing", "ws_bloch", "squeeze_vac", "jc_sectors", "closure_gallery"};
}

namespace {

RunSpec evolve_run(std::string id, std::string model, Params params, InitialSpec initial, TimeGrid times) {
  RunSpec r;
  r.id = std::move(id);
  r.hamiltonian.model = std::move(model);
  r.hamiltonian.params = std::move(params);
  r.initial = std::move(initial);
  r.times = std::move(times);
  return r;
}

InitialSpec basis_state(BasisState s) {
  InitialSpec i;
  i.kind = InitialKind::basis_state;
  i.occupations = std::move(s);
  return i;
}

TimeGrid range(double stop, int steps) {
  TimeGrid g;
  g.stop = stop;
  g.steps = steps;
  return g;
}

TimeGrid explicit_times(std::vector<double> v) {
  TimeGrid g;
  g.values = std::move(v);
  return g;
}

}  // namespace

ScenarioConfig builtin_scenario(const std::string& name, const Params& overrides) {
  ScenarioConfig c;
  c.name = name;
  if (name == "fig2_su2") {
    ParamReader p(name, overrides, {"S"});
    const int two_s = static_cast<int>(std::lround(2.0 * p.real("S", 50.0)));
    auto r = evolve_run("su2", "spin_hop", {{"S", 0.5 * two_s}, {"J0", 1.0}}, basis_state({two_s}), range(kPi, 120));
    r.observables = {"Sz"};
    r.outputs.populations = "populations.csv";
    r.outputs.observables = "observables.csv";
    r.outputs.fidelity = "fidelity.csv";
    r.outputs.graph = "graph.json";
    // t = 0, pi/6, pi/3
    for (std::size_t k : {0u, 20u, 40u}) {
      HusimiSpec h;
      h.index = k;
      h.space = PhaseSpace::sphere;
      h.n1 = 100;
      h.n2 = 200;
      h.csv = "husimi_" + std::to_string(k) + ".csv";
      h.heatmap = "husimi_" + std::to_string(k) + ".pgm";
      r.outputs.husimi.push_back(h);
    }
    c.runs.push_back(std::move(r));
  } else if (name == "fig3_su3") {
    ParamReader p(name, overrides, {"N"});
    const int n = p.integer("N", 90, 3);
    const int third = n / 3;
    for (const auto& [id, phi] : {std::pair{"phi_0", 0.0}, std::pair{"phi_pi3", kPi / 3.0}}) {
      auto r = evolve_run(id, "three_mode", {{"N", n}, {"J", 1.0}, {"phi", phi}},
                          basis_state({third, third, n - 2 * third}), explicit_times({0.0, 0.3}));
      r.outputs.populations = "populations.csv";
      r.outputs.fluxes = "fluxes.json";
      r.outputs.snapshots.push_back({1, "snapshot.pgm", "snapshot.csv", false});
      c.runs.push_back(std::move(r));
    }
  } else if (name == "fig4_so5") {
    ParamReader p(name, overrides, {"N", "t"});
    const int n = p.integer("N", 20, 4);
    const double t = p.real("t", 1.0);
    const int q = n / 4;
    const std::pair<const char*, BasisState> starts[] = {{"corner", {n, 0, 0, 0}}, {"center", {q, q, q, n - 3 * q}}};
    const std::pair<const char*, double> phases[] = {{"phi_0", 0.0}, {"phi_pi", kPi}, {"phi_pi2", kPi / 2.0}};
    for (const auto& [sname, s] : starts) {
      for (const auto& [pname, phi] : phases) {
        auto r = evolve_run(std::string(sname) + "_" + pname, "so5", {{"N", n}, {"J1", 1.0}, {"J2", 1.0}, {"phi", phi}},
                            basis_state(s), explicit_times({0.0, 0.5 * t, t}));
        r.outputs.fluxes = "fluxes.json";
        r.outputs.snapshots.push_back({1, "snapshot_mid.pgm", "snapshot_mid.csv", true});
        r.outputs.snapshots.push_back({2, "snapshot.pgm", "snapshot.csv", true});
        c.runs.push_back(std::move(r));
      }
    }
  } else if (name == "ws_breathing" || name == "ws_bloch") {
    ParamReader p(name, overrides, {"L", "omega", "J"});
    const int l = p.integer("L", 41, 5);
    const double omega = p.real("omega", 1.0), j = p.real("J", 1.0);
    InitialSpec init;
    if (name == "ws_breathing") {
      init = basis_state({l / 2});
    } else {
      // Gaussian packet at quasi-momentum pi/2.
      init.kind = InitialKind::vector;
      const double sigma = 0.1 * l;
      double norm = 0.0;
      for (int s = 0; s < l; ++s) {
        const double x = s - l / 2;
        const cplx a = std::polar(std::exp(-x * x / (4.0 * sigma * sigma)), 0.5 * kPi * x);
        init.amplitudes.push_back(a);
        norm += std::norm(a);
      }
      for (auto& a : init.amplitudes) a /= std::sqrt(norm);
    }
    auto r = evolve_run("ws", "wannier_stark", {{"L", l}, {"omega", omega}, {"J", j}}, init, range(2.0 * kPi / omega, 100));
    r.observables = {"E0"};
    r.outputs.populations = "populations.csv";
    r.outputs.observables = "observables.csv";
    r.outputs.fidelity = "fidelity.csv";
    r.outputs.spectrum = "spectrum.csv";
    c.runs.push_back(std::move(r));
  } else if (name == "squeeze_vac") {
    ParamReader p(name, overrides, {"cutoff", "omega", "xi"});
    const double omega = p.real("omega", 2.0), xi = p.real("xi", 1.0);
    const double rate = std::sqrt(std::abs(omega * omega - xi * xi));
    const double stop = rate > 0.0 ? 3.0 * kPi / rate : 3.0;
    auto r = evolve_run("squeeze", "squeeze", {{"cutoff", p.integer("cutoff", 200, 10)}, {"omega", omega}, {"xi_re", xi}, {"xi_im", 0.0}},
                        basis_state({0}), range(stop, 90));
    r.observables = {"K0", "K-"};
    r.outputs.populations = "populations.csv";
    r.outputs.observables = "observables.csv";
    HusimiSpec h;
    h.index = 15;
    h.space = PhaseSpace::disk;
    h.n1 = 120;
    h.n2 = 80;
    h.extent = 0.95;
    h.csv = "husimi.csv";
    h.heatmap = "husimi.pgm";
    r.outputs.husimi.push_back(h);
    c.runs.push_back(std::move(r));
  } else if (name == "jc_sectors") {
    ParamReader p(name, overrides, {"cutoff", "g"});
    auto r = evolve_run("jc", "jc", {{"cutoff", p.integer("cutoff", 6, 2)}, {"omega", 1.0}, {"Omega", 1.0}, {"g", p.real("g", 0.1)}},
                        basis_state({1, 1}), range(20.0 * kPi, 200));
    r.observables = {"adag_a", "cdag_c"};
    r.outputs.populations = "populations.csv";
    r.outputs.observables = "observables.csv";
    r.outputs.graph = "graph.json";
    r.outputs.adjacency = "adjacency.csv";
    r.outputs.spectrum = "spectrum.csv";
    c.runs.push_back(std::move(r));
  } else if (name == "closure_gallery") {
    if (!overrides.empty()) throw InvalidArgument("closure_gallery takes no parameters");
    for (const auto& seed : closure_seed_names()) {
      RunSpec r;
      r.id = seed;
      r.kind = RunKind::closure;
      r.seed = seed;
      r.cap = 64;
      r.outputs.closure = "closure.json";
      c.runs.push_back(std::move(r));
    }
  } else {
    throw InvalidArgument("unknown scenario '" + name + "'");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Execution.

ModelHamiltonian build_hamiltonian(const HamiltonianSpec& spec) {
  if (!spec.model.empty()) return named_hamiltonian(spec.model, spec.params);
  AlgebraModel m = build_algebra(spec.algebra, spec.params);
  std::vector<Term> terms;
  for (const auto& t : spec.terms) terms.push_back({t.label, std::polar(t.coef, t.phase)});
  Operator h = lie_hamiltonian(m, terms);
  return {std::move(m), std::move(h)};
}

Vector build_initial_state(const InitialSpec& spec, const AlgebraModel& model) {
  const FockBasis& b = *model.basis;
  const auto n = static_cast<Eigen::Index>(b.size());
  switch (spec.kind) {
    case InitialKind::basis_state: {
      Vector v = Vector::Zero(n);
      v(static_cast<Eigen::Index>(b.index_of(spec.occupations))) = 1.0;
      return v;
    }
    case InitialKind::coherent: return closed_form_state(spec.coherent, b);
    case InitialKind::vector: {
      if (static_cast<Eigen::Index>(spec.amplitudes.size()) != n) {
        throw DimensionMismatch("initial vector has " + std::to_string(spec.amplitudes.size()) + " entries for " +
                                std::to_string(n) + " basis states");
      }
      Vector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = spec.amplitudes[static_cast<std::size_t>(i)];
      return v;
    }
    case InitialKind::reference: {
      const auto refs = find_reference_states(model);
      if (spec.reference >= refs.size()) {
        throw InvalidArgument("reference index " + std::to_string(spec.reference) + " but only " +
                              std::to_string(refs.size()) + " reference states");
      }
      return refs[spec.reference];
    }
  }
  return {};
}

Eigen::MatrixXd lattice_image(const AlgebraModel& model, const Eigen::VectorXd& populations) {
  const auto cartan = model.cartan_operators();
  if (cartan.empty()) throw InvalidArgument("lattice_image: model has no Cartan generators");
  const std::size_t nv = model.basis->size();
  if (static_cast<std::size_t>(populations.size()) != nv) throw DimensionMismatch("lattice_image: population length");
  auto coord = [&](std::size_t axis, std::size_t v) {
    if (axis >= cartan.size()) return 0.0;
    const auto idx = static_cast<Eigen::Index>(v);
    return cartan[axis].coeff(idx, idx).real() / model.axis_unit[axis];
  };
  auto ranks = [&](std::size_t axis) {
    std::vector<double> vals;
    for (std::size_t v = 0; v < nv; ++v) vals.push_back(coord(axis, v));
    std::sort(vals.begin(), vals.end());
    std::vector<double> distinct;
    for (double x : vals) {
      if (distinct.empty() || x - distinct.back() > 1e-9) distinct.push_back(x);
    }
    return distinct;
  };
  auto locate = [](const std::vector<double>& d, double x) {
    auto it = std::lower_bound(d.begin(), d.end(), x - 1e-9);
    return static_cast<Eigen::Index>(it - d.begin());
  };
  const auto xs = ranks(0), ys = ranks(1);
  Eigen::MatrixXd img = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ys.size()), static_cast<Eigen::Index>(xs.size()));
  for (std::size_t v = 0; v < nv; ++v) {
    const Eigen::Index col = locate(xs, coord(0, v));
    const Eigen::Index row = static_cast<Eigen::Index>(ys.size()) - 1 - locate(ys, coord(1, v));
    img(row, col) += populations(static_cast<Eigen::Index>(v));
  }
  return img;
}

namespace {

std::string state_column(const BasisState& s) {
  std::string out = "p";
  for (int x : s) out += "_" + std::to_string(x);
  return out;
}

class Stage {
 public:
  void add(const std::string& rel, std::string content) {
    if (!files_.emplace(rel, std::move(content)).second) throw ConfigError(rel, "output path used twice");
  }
  const std::map<std::string, std::string>& files() const { return files_; }

 private:
  std::map<std::string, std::string> files_;
};

std::size_t checked_index(std::size_t index, std::size_t count, const std::string& path) {
  if (index >= count) throw ConfigError(path, "index " + std::to_string(index) + " outside the time grid");
  return index;
}

json run_closure(const RunSpec& r, Stage& stage) {
  ClosureSeed seed;
  try {
    seed = closure_seed(r.seed);
  } catch (const InvalidArgument& e) {
    throw ConfigError(r.id + ".seed", e.what());
  }
  const ClosureReport rep = lie_closure(seed.seed, std::max(r.cap, seed.seed.size()), seed.graded, seed.mask);
  json out{{"seed", r.seed}, {"cap", rep.cap}, {"closed", rep.closed}, {"dim", rep.dim}, {"iterations", rep.iterations}};
  if (rep.closed) {
    const auto sc = extract_structure_constants(rep.basis, seed.graded, seed.mask);
    out["max_residual"] = sc.max_residual;
    out["structure_closed"] = sc.closed;
  }
  std::vector<std::string> labels;
  for (const auto& g : rep.basis) labels.push_back(g.label);
  out["labels"] = labels;
  if (!r.outputs.closure.empty()) stage.add(r.id + "/" + r.outputs.closure, out.dump(2) + "\n");
  return out;
}

json run_evolve(const RunSpec& r, std::size_t run_index, const RunOptions& opts, Stage& stage) {
  const std::string path = at_index("runs", run_index);
  ModelHamiltonian mh;
  try {
    mh = build_hamiltonian(r.hamiltonian);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(path + ".hamiltonian", e.what());
  }
  const AlgebraModel& model = mh.model;
  const std::size_t dim = model.basis->size();
  Vector psi0;
  try {
    psi0 = build_initial_state(r.initial, model);
  } catch (const InvalidArgument& e) {
    throw ConfigError(path + ".initial", e.what());
  }
  std::vector<const Operator*> observables;
  for (std::size_t i = 0; i < r.observables.size(); ++i) {
    try {
      observables.push_back(&model.op(r.observables[i]));
    } catch (const InvalidArgument& e) {
      throw ConfigError(at_index(path + ".observables", i), e.what());
    }
  }
  if (r.method == Method::dense_eig && dim > kDenseLimit) {
    throw ResourceGuardError(path + ": dense evolution of dimension " + std::to_string(dim) + " exceeds " +
                             std::to_string(kDenseLimit) + "; choose krylov or auto");
  }
  if (!r.outputs.spectrum.empty() && dim > kDenseLimit) {
    throw ResourceGuardError(path + ": spectrum of dimension " + std::to_string(dim) + " exceeds the dense limit");
  }
  const auto times = r.times.expand();
  for (std::size_t i = 0; i < r.outputs.snapshots.size(); ++i) {
    checked_index(r.outputs.snapshots[i].index, times.size(), at_index(path + ".outputs.snapshots", i) + ".index");
  }
  for (std::size_t i = 0; i < r.outputs.husimi.size(); ++i) {
    checked_index(r.outputs.husimi[i].index, times.size(), at_index(path + ".outputs.husimi", i) + ".index");
  }

  EvolutionOptions eo;
  eo.krylov_tol = opts.krylov_tol;
  eo.store_snapshots = true;
  EvolutionResult res;
  try {
    res = evolve(mh.h, psi0, times, r.method, eo);
  } catch (const NumericContractError&) {
    throw;
  } catch (const ResourceGuardError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }

  const std::string dir = r.id + "/";
  json summary{{"dim", dim}, {"method", to_string(res.method)}};
  double drift = 0.0;
  for (double n : res.norms) drift = std::max(drift, std::abs(n - 1.0));
  summary["max_norm_drift"] = drift;

  if (!r.outputs.populations.empty()) {
    std::vector<std::string> cols{"t"};
    for (const auto& s : model.basis->states()) cols.push_back(state_column(s));
    CsvTable t(cols);
    for (std::size_t k = 0; k < times.size(); ++k) {
      std::vector<double> row{times[k]};
      for (Eigen::Index i = 0; i < res.populations.cols(); ++i) row.push_back(res.populations(static_cast<Eigen::Index>(k), i));
      t.add_row(row);
    }
    stage.add(dir + r.outputs.populations, t.str());
  }
  if (!r.outputs.observables.empty()) {
    std::vector<std::string> cols{"t"};
    for (const auto& lbl : r.observables) {
      cols.push_back(lbl + "_re");
      cols.push_back(lbl + "_im");
    }
    CsvTable t(cols);
    std::vector<std::vector<cplx>> series;
    for (const Operator* op : observables) series.push_back(expectation_series(res, *op));
    for (std::size_t k = 0; k < times.size(); ++k) {
      std::vector<double> row{times[k]};
      for (const auto& s : series) {
        row.push_back(s[k].real());
        row.push_back(s[k].imag());
      }
      t.add_row(row);
    }
    stage.add(dir + r.outputs.observables, t.str());
  }
  {
    const auto f = fidelity_series(res, psi0);
    if (times.size() > 2) {
      const auto rev = detect_revivals(res, psi0, r.revival_threshold);
      summary["revival_times"] = rev.revival_times;
      summary["revival_fidelities"] = rev.fidelities;
    }
    summary["final_fidelity"] = f.back();
    if (!r.outputs.fidelity.empty()) {
      CsvTable t({"t", "fidelity"});
      for (std::size_t k = 0; k < times.size(); ++k) t.add_row({times[k], f[k]});
      stage.add(dir + r.outputs.fidelity, t.str());
    }
  }
  if (!r.outputs.graph.empty() || !r.outputs.adjacency.empty() || !r.outputs.fluxes.empty()) {
    FSLGraph g = build_fsl(mh.h, model.basis);
    label_edges(g, model);
    const WeightLattice w = weight_coordinates(g, model.cartan_operators(), model.axis_unit);
    summary["vertices"] = g.vertex_count();
    summary["edges"] = g.edges.size();
    if (!r.outputs.graph.empty()) stage.add(dir + r.outputs.graph, graph_to_json(g, &w).dump(1) + "\n");
    if (!r.outputs.adjacency.empty()) stage.add(dir + r.outputs.adjacency, adjacency_csv(g));
    if (!r.outputs.fluxes.empty()) {
      const auto emb = embedding_from_weights(w);
      const FluxReport fr = plaquette_fluxes(g, model.cartan.size() >= 2 ? &emb : nullptr);
      summary["independent_classes"] = fr.independent_classes;
      summary["signed_classes"] = fr.signed_classes;
      json fj{{"cycle_count", fr.cycle_count},
              {"independent_classes", fr.independent_classes},
              {"class_magnitudes", fr.class_magnitudes},
              {"signed_classes", fr.signed_classes},
              {"fluxes", fr.fluxes}};
      stage.add(dir + r.outputs.fluxes, fj.dump(1) + "\n");
    }
  }
  if (!r.outputs.spectrum.empty()) {
    const Eigen::VectorXd ev = spectrum(mh.h);
    CsvTable t({"index", "energy"});
    for (Eigen::Index i = 0; i < ev.size(); ++i) t.add_row({static_cast<double>(i), ev(i)});
    stage.add(dir + r.outputs.spectrum, t.str());
  }
  for (const auto& snap : r.outputs.snapshots) {
    const Eigen::VectorXd pop = res.populations.row(static_cast<Eigen::Index>(snap.index)).transpose();
    if (!snap.heatmap.empty()) {
      stage.add(dir + snap.heatmap, encode_heatmap(lattice_image(model, pop), {snap.fourth_root}));
    }
    if (!snap.csv.empty()) {
      const auto cartan = model.cartan_operators();
      std::vector<std::string> cols{"index"};
      for (std::size_t a = 0; a < cartan.size(); ++a) cols.push_back("w" + std::to_string(a + 1));
      cols.push_back("p");
      CsvTable t(cols);
      for (std::size_t v = 0; v < dim; ++v) {
        const auto iv = static_cast<Eigen::Index>(v);
        std::vector<double> row{static_cast<double>(v)};
        for (std::size_t a = 0; a < cartan.size(); ++a) row.push_back(cartan[a].coeff(iv, iv).real() / model.axis_unit[a]);
        row.push_back(pop(iv));
        t.add_row(row);
      }
      stage.add(dir + snap.csv, t.str());
    }
  }
  for (const auto& hs : r.outputs.husimi) {
    HusimiOptions ho;
    ho.space = hs.space;
    ho.n1 = hs.n1;
    ho.n2 = hs.n2;
    ho.extent = hs.extent;
    ho.k = hs.k;
    ho.threads = opts.threads;
    HusimiGrid grid;
    try {
      grid = husimi(model, res.snapshots[hs.index], ho);
    } catch (const InvalidArgument& e) {
      throw ConfigError(path + ".outputs.husimi", e.what());
    }
    if (!hs.csv.empty()) {
      CsvTable t({"axis1", "axis2", "weight", "value"});
      for (int i = 0; i < hs.n1; ++i) {
        for (int j = 0; j < hs.n2; ++j) {
          t.add_row({grid.axis1[static_cast<std::size_t>(i)], grid.axis2[static_cast<std::size_t>(j)], grid.weights(i, j), grid.values(i, j)});
        }
      }
      stage.add(dir + hs.csv, t.str());
    }
    if (!hs.heatmap.empty()) stage.add(dir + hs.heatmap, encode_heatmap(grid.values));
    if (grid.normalizable) summary["husimi_integral_" + std::to_string(hs.index)] = grid.integral();
  }
  return summary;
}

}  // namespace

json RunArchive::manifest() const {
  json files = json::array();
  for (const auto& f : outputs) files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a", f.hash}});
  return {{"config_hash", config_hash}, {"version", version}, {"outputs", files}, {"results", results}};
}

RunArchive run_scenario(const ScenarioConfig& config, const std::string& out_dir, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  RunArchive archive;
  const std::string canonical = to_json(config).dump();
  archive.config_hash = fnv1a_hex(canonical);
  archive.version = config.version;
  archive.results = json::object();
  Stage stage;
  for (std::size_t i = 0; i < config.runs.size(); ++i) {
    const RunSpec& r = config.runs[i];
    archive.results[r.id] = r.kind == RunKind::closure ? run_closure(r, stage) : run_evolve(r, i, opts, stage);
  }
  stage.add("config.json", to_json(config).dump(2) + "\n");
  namespace fs = std::filesystem;
  for (const auto& [rel, content] : stage.files()) {
    write_file((fs::path(out_dir) / rel).string(), content);
    archive.outputs.push_back({rel, content.size(), fnv1a_hex(content)});
  }
  write_file((fs::path(out_dir) / "manifest.json").string(), archive.manifest().dump(2) + "\n");
  archive.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return archive;
}

}  // namespace liefock
