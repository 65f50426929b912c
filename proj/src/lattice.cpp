#include "liefock/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>

#include "liefock/errors.hpp"
#include "liefock/io.hpp"

namespace liefock {

std::vector<std::size_t> FSLGraph::degrees() const {
  std::vector<std::size_t> deg(vertices.size(), 0);
  for (const auto& e : edges) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

FSLGraph build_fsl(const Operator& h, std::shared_ptr<const FockBasis> basis, std::optional<double> tol) {
  if (!basis) throw InvalidArgument("build_fsl: missing basis");
  if (static_cast<std::size_t>(h.dim()) != basis->size()) {
    throw DimensionMismatch("build_fsl: operator dim " + std::to_string(h.dim()) + " vs basis size " +
                            std::to_string(basis->size()));
  }
  if (!h.hermitian()) {
    throw NotHermitian("build_fsl: Hamiltonian is not Hermitian (defect " + format_double(hermiticity_defect(h)) + ")");
  }
  const double cut = tol ? *tol : 1e-12 * h.max_abs();
  if (cut < 0.0) throw InvalidArgument("build_fsl: tol must be >= 0");
  FSLGraph g;
  g.basis = std::move(basis);
  g.vertices.reserve(g.basis->size());
  for (std::size_t v = 0; v < g.basis->size(); ++v) {
    g.vertices.push_back({v, h.coeff(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)).real()});
  }
  const auto& m = h.matrix();
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (Operator::Matrix::InnerIterator it(m, r); it; ++it) {
      if (it.col() <= r) continue;
      if (std::abs(it.value()) > cut) {
        g.edges.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(it.col()), it.value(), {}});
      }
    }
  }
  return g;
}

void label_edges(FSLGraph& graph, const AlgebraModel& model) {
  for (auto& e : graph.edges) {
    const auto r = static_cast<Eigen::Index>(e.i), c = static_cast<Eigen::Index>(e.j);
    for (const auto& gen : model.generators) {
      if (std::abs(gen.op.coeff(r, c)) > 0.0) {
        e.label = gen.label;
        break;
      }
      if (std::abs(gen.op.coeff(c, r)) > 0.0) {
        e.label = gen.label + "^T";
        break;
      }
    }
  }
}

WeightLattice weight_coordinates(const FSLGraph& graph, const std::vector<Operator>& cartan,
                                 const std::vector<double>& units) {
  if (!units.empty() && units.size() != cartan.size()) throw InvalidArgument("weight_coordinates: units size");
  const std::size_t nv = graph.vertex_count();
  WeightLattice w;
  w.coordinates.assign(nv, std::vector<Rational>(cartan.size()));
  for (std::size_t a = 0; a < cartan.size(); ++a) {
    const Operator& c = cartan[a];
    if (static_cast<std::size_t>(c.dim()) != nv) throw DimensionMismatch("weight_coordinates: Cartan dimension");
    Operator::Matrix off = c.matrix();
    off.prune([](Eigen::Index r, Eigen::Index col, const cplx&) { return r != col; });
    if (off.norm() > 1e-12) throw InvalidArgument("weight_coordinates: Cartan operator " + std::to_string(a) + " is not diagonal");
    const double unit = units.empty() ? 1.0 : units[a];
    for (std::size_t v = 0; v < nv; ++v) {
      const double x = c.coeff(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)).real() / unit;
      auto q = rationalize(x, 1 << 20, 1e-9);
      if (!q) throw InvalidArgument("weight_coordinates: eigenvalue " + format_double(x) + " is not rational");
      w.coordinates[v][a] = *q;
    }
  }
  std::map<std::vector<Rational>, std::size_t> site_of;
  w.site_index.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    auto [it, inserted] = site_of.emplace(w.coordinates[v], w.sites.size());
    if (inserted) w.sites.push_back({w.coordinates[v], 0, {}});
    auto& site = w.sites[it->second];
    ++site.multiplicity;
    site.members.push_back(v);
    w.site_index[v] = it->second;
  }
  return w;
}

namespace {

struct Adjacency {
  // neighbours[v] = (other vertex, edge index)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> neighbours;

  explicit Adjacency(const FSLGraph& g) : neighbours(g.vertex_count()) {
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      neighbours[g.edges[k].i].emplace_back(g.edges[k].j, k);
      neighbours[g.edges[k].j].emplace_back(g.edges[k].i, k);
    }
    for (auto& n : neighbours) std::sort(n.begin(), n.end());
  }
};

// Directed hop amplitude from x to y along edge k.
cplx hop_amplitude(const FSLEdge& e, std::size_t x) { return x == e.j ? e.amplitude : std::conj(e.amplitude); }

double wrap_phase(double x) {
  double y = std::remainder(x, 2.0 * std::numbers::pi);
  if (y <= -std::numbers::pi) y += 2.0 * std::numbers::pi;
  return y;
}

}  // namespace

std::vector<std::vector<std::size_t>> connected_components(const FSLGraph& graph) {
  const Adjacency adj(graph);
  std::vector<int> seen(graph.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < graph.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto [u, k] : adj.neighbours[comp[head]]) {
        (void)k;
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

FluxReport plaquette_fluxes(const FSLGraph& graph, const std::vector<std::array<double, 2>>* embedding,
                            double class_tol) {
  const std::size_t nv = graph.vertex_count();
  if (embedding && embedding->size() != nv) throw DimensionMismatch("plaquette_fluxes: embedding size");
  const Adjacency adj(graph);
  std::vector<char> tree_edge(graph.edges.size(), 0);
  std::vector<char> seen(nv, 0);
  std::size_t components = 0;
  for (std::size_t s = 0; s < nv; ++s) {
    if (seen[s]) continue;
    ++components;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      for (auto [y, k] : adj.neighbours[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        tree_edge[k] = 1;
        q.push(y);
      }
    }
  }

  FluxReport rep;
  rep.cycle_count = graph.edges.size() + components - nv;
  std::vector<std::ptrdiff_t> parent_edge(nv);
  std::vector<std::size_t> parent(nv);
  for (std::size_t k = 0; k < graph.edges.size(); ++k) {
    if (tree_edge[k]) continue;
    const auto& e = graph.edges[k];
    // Shortest path from e.j back to e.i avoiding edge k.
    std::fill(parent_edge.begin(), parent_edge.end(), -2);
    std::queue<std::size_t> q;
    q.push(e.j);
    parent_edge[e.j] = -1;
    while (!q.empty() && parent_edge[e.i] == -2) {
      const std::size_t x = q.front();
      q.pop();
      for (auto [y, kk] : adj.neighbours[x]) {
        if (kk == k || parent_edge[y] != -2) continue;
        parent_edge[y] = static_cast<std::ptrdiff_t>(kk);
        parent[y] = x;
        q.push(y);
      }
    }
    // Walk: i -> j along edge k, then back along the BFS path to i.
    std::vector<std::size_t> back{e.i};
    while (back.back() != e.j) back.push_back(parent[back.back()]);
    std::vector<std::size_t> cycle{e.i};
    for (auto it = back.rbegin(); it != back.rend(); ++it) cycle.push_back(*it);
    // cycle = i, j, ..., i
    if (embedding) {
      double area = 0.0;
      for (std::size_t t = 0; t + 1 < cycle.size(); ++t) {
        const auto& p = (*embedding)[cycle[t]];
        const auto& r = (*embedding)[cycle[t + 1]];
        area += p[0] * r[1] - r[0] * p[1];
      }
      if (area < -1e-12) std::reverse(cycle.begin(), cycle.end());
    }
    cplx prod(1.0);
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t) {
      const std::size_t x = cycle[t], y = cycle[t + 1];
      const FSLEdge* edge = nullptr;
      for (auto [z, kk] : adj.neighbours[x]) {
        if (z == y) {
          edge = &graph.edges[kk];
          break;
        }
      }
      const cplx amp = hop_amplitude(*edge, x);
      if (std::abs(amp) == 0.0) throw InvalidArgument("plaquette_fluxes: zero-amplitude edge in a cycle");
      prod *= amp / std::abs(amp);
    }
    double flux = wrap_phase(std::arg(prod));
    if (std::abs(flux) < class_tol) flux = 0.0;
    rep.fluxes.push_back(flux);
    rep.cycles.push_back(std::move(cycle));
  }

  auto add_distinct = [class_tol](std::vector<double>& set, double v) {
    for (double s : set) {
      if (std::abs(s - v) < class_tol) return;
    }
    set.push_back(v);
  };
  for (double f : rep.fluxes) {
    if (f == 0.0) continue;
    add_distinct(rep.class_magnitudes, std::abs(f));
    add_distinct(rep.signed_classes, f);
  }
  std::sort(rep.class_magnitudes.begin(), rep.class_magnitudes.end());
  std::sort(rep.signed_classes.begin(), rep.signed_classes.end());
  rep.independent_classes = rep.class_magnitudes.size();
  return rep;
}

std::vector<std::array<double, 2>> embedding_from_weights(const WeightLattice& w) {
  std::vector<std::array<double, 2>> out;
  out.reserve(w.coordinates.size());
  for (const auto& c : w.coordinates) {
    out.push_back({c.size() > 0 ? c[0].to_double() : 0.0, c.size() > 1 ? c[1].to_double() : 0.0});
  }
  return out;
}

nlohmann::json graph_to_json(const FSLGraph& graph, const WeightLattice* weights) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : graph.vertices) {
    nlohmann::json jv{{"id", v.id}, {"onsite", v.onsite}, {"state", graph.basis->state_at(v.id)}};
    nlohmann::json wt = nlohmann::json::array();
    std::size_t mult = 1;
    if (weights) {
      for (const auto& q : weights->coordinates[v.id]) wt.push_back(q.to_double());
      mult = weights->sites[weights->site_index[v.id]].multiplicity;
    }
    jv["weight"] = std::move(wt);
    jv["multiplicity"] = mult;
    verts.push_back(std::move(jv));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"i", e.i}, {"j", e.j}, {"re", e.amplitude.real()}, {"im", e.amplitude.imag()}, {"label", e.label}});
  }
  return {{"version", 1}, {"basis", graph.basis->to_json()}, {"vertices", verts}, {"edges", edges}};
}

std::string adjacency_csv(const FSLGraph& graph) {
  std::string out = "i,j,re,im,label\n";
  for (const auto& e : graph.edges) {
    out += std::to_string(e.i) + "," + std::to_string(e.j) + "," + format_double(e.amplitude.real()) + "," +
           format_double(e.amplitude.imag()) + "," + e.label + "\n";
  }
  return out;
}

}  // namespace liefock
