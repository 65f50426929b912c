#ifndef LIEFOCK_LATTICE_HPP
#define LIEFOCK_LATTICE_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liefock/algebra.hpp"
#include "liefock/fock.hpp"
#include "liefock/operators.hpp"
#include "liefock/rational.hpp"

namespace liefock {

struct FSLVertex {
  std::size_t id;
  double onsite;
};

// amplitude = H(i, j) with i < j, i.e. the hop from j to i.
struct FSLEdge {
  std::size_t i;
  std::size_t j;
  cplx amplitude;
  std::string label;
};

struct FSLGraph {
  std::shared_ptr<const FockBasis> basis;
  std::vector<FSLVertex> vertices;
  std::vector<FSLEdge> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::vector<std::size_t> degrees() const;
};

// Vertex per basis state, edge wherever |H_nm| > tol (n != m). The default
// tolerance is 1e-12 times the largest entry. Throws NotHermitian.
FSLGraph build_fsl(const Operator& h, std::shared_ptr<const FockBasis> basis, std::optional<double> tol = {});

// Names each edge after the first generator with a nonzero entry there.
void label_edges(FSLGraph& graph, const AlgebraModel& model);

struct WeightSite {
  std::vector<Rational> coords;
  std::size_t multiplicity = 0;
  std::vector<std::size_t> members;
};

struct WeightLattice {
  std::vector<std::vector<Rational>> coordinates;
  std::vector<WeightSite> sites;
  // site_index[v] points into sites.
  std::vector<std::size_t> site_index;
};

// Coordinates are Cartan diagonal entries divided by `units` (default 1) and
// merged exactly as rationals. Throws InvalidArgument for non-diagonal input.
WeightLattice weight_coordinates(const FSLGraph& graph, const std::vector<Operator>& cartan,
                                 const std::vector<double>& units = {});

// Sorted by smallest member; members ascending.
std::vector<std::vector<std::size_t>> connected_components(const FSLGraph& graph);

struct FluxReport {
  std::size_t cycle_count = 0;
  // One fundamental cycle per non-tree edge, as a closed vertex walk.
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<double> fluxes;
  // Distinct nonzero |flux| values among the elementary cycles.
  std::size_t independent_classes = 0;
  std::vector<double> class_magnitudes;
  // Distinct signed nonzero values, ascending.
  std::vector<double> signed_classes;
};

// Elementary cycles are shortest cycles through each non-tree edge of a BFS
// spanning forest. With an embedding, cycles are oriented counter-clockwise.
FluxReport plaquette_fluxes(const FSLGraph& graph, const std::vector<std::array<double, 2>>* embedding = nullptr,
                            double class_tol = 1e-9);

// Planar positions from the first two weight axes.
std::vector<std::array<double, 2>> embedding_from_weights(const WeightLattice& w);

nlohmann::json graph_to_json(const FSLGraph& graph, const WeightLattice* weights = nullptr);
std::string adjacency_csv(const FSLGraph& graph);

}  // namespace liefock

#endif  // LIEFOCK_LATTICE_HPP
