#ifndef LIEFOCK_ALGEBRA_HPP
#define LIEFOCK_ALGEBRA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "liefock/fock.hpp"
#include "liefock/operators.hpp"
#include "liefock/rational.hpp"

namespace liefock {

using Params = std::map<std::string, double>;

struct Generator {
  std::string label;
  Operator op;
};

struct RootPair {
  std::size_t raise;
  std::size_t lower;
  // Components along each Cartan axis, in units of AlgebraModel::axis_unit.
  std::vector<Rational> root;
  std::vector<double> root_numeric;
};

// Side of each root pair whose joint kernel defines the reference states.
enum class ReferenceSide { raising, lowering };

struct AlgebraModel {
  std::string name;
  Params params;
  std::shared_ptr<const FockBasis> basis;
  std::vector<Generator> generators;
  std::vector<std::size_t> cartan;
  std::vector<RootPair> roots;
  // Eigenvalue scale per Cartan axis: coordinate = eigenvalue / axis_unit.
  std::vector<double> axis_unit;
  std::vector<Generator> casimirs;
  bool graded = false;
  ReferenceSide reference_side = ReferenceSide::raising;
  // States where truncation leaves the algebra intact. Empty means all.
  std::vector<bool> interior;

  std::size_t index_of(const std::string& label) const;
  const Operator& op(const std::string& label) const { return generators[index_of(label)].op; }
  std::vector<Operator> operators() const;
  std::vector<std::string> labels() const;
  std::vector<Operator> cartan_operators() const;
};

std::vector<std::string> algebra_names();

// Throws InvalidArgument for unknown names, unknown parameter keys or
// out-of-range values.
AlgebraModel build_algebra(const std::string& name, const Params& params = {});

// Interior mask: boson occupations at most cutoff - window, spin levels
// (used as lattice sites) at least `window` away from both ends.
std::vector<bool> interior_mask(const FockBasis& basis, int window, bool spin_edges);

// Fills roots and axis units from generator data. Exposed for custom models.
void classify_roots(AlgebraModel& model, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// ---------------------------------------------------------------------------
// Structure, closure and Casimir checks. All norms and inner products are
// evaluated on the interior block of `mask` (empty mask = whole space).

struct StructureConstants {
  std::size_t n = 0;
  // f[(a*n + b)*n + c]: [X_a, X_b} = i f_ab^c X_c.
  std::vector<cplx> f;
  // residual[a*n + b]: relative norm of the part outside the span.
  std::vector<double> residual;
  double max_residual = 0.0;
  bool closed = false;

  cplx at(std::size_t a, std::size_t b, std::size_t c) const { return f[(a * n + b) * n + c]; }
  double residual_at(std::size_t a, std::size_t b) const { return residual[a * n + b]; }
};

inline constexpr double kClosureResidual = 1e-10;
inline constexpr double kGramConditionLimit = 1e12;
inline constexpr double kPinvCutoff = 1e-12;

StructureConstants extract_structure_constants(const std::vector<Generator>& gens, bool graded,
                                               const std::vector<bool>& mask = {});

struct ClosureReport {
  std::vector<std::size_t> iterations;
  bool closed = false;
  std::size_t dim = 0;
  std::size_t cap = 0;
  std::vector<std::string> added_labels;
  // Seed plus every independent bracket found, in discovery order.
  std::vector<Generator> basis;
};

inline constexpr double kIndependenceThreshold = 1e-10;

ClosureReport lie_closure(const std::vector<Generator>& seed, std::size_t cap, bool graded,
                          const std::vector<bool>& mask = {});

double verify_casimir(const Operator& op, const AlgebraModel& model);

// Orthonormal basis of the joint kernel of the reference-side root
// generators, restricted to interior-supported vectors.
std::vector<Vector> find_reference_states(const AlgebraModel& model);

// Named closure seeds: hw_heis, su2, su3, sp4, jc_super, rabi, lmg.
struct ClosureSeed {
  std::string name;
  std::vector<Generator> seed;
  bool graded = false;
  std::vector<bool> mask;
};
std::vector<std::string> closure_seed_names();
ClosureSeed closure_seed(const std::string& name);

struct VerifyReport {
  bool cartan_ok = false;
  bool root_eigen_ok = false;
  double cartan_defect = 0.0;
  double root_defect = 0.0;
  ClosureReport closure;
  double closure_residual = 0.0;
  std::vector<std::pair<std::string, double>> casimirs;
};

VerifyReport verify_algebra(const AlgebraModel& model);

}  // namespace liefock

#endif  // LIEFOCK_ALGEBRA_HPP
