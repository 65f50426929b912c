#ifndef LIEFOCK_DYNAMICS_HPP
#define LIEFOCK_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "liefock/operators.hpp"

namespace liefock {

enum class Method { dense_eig, krylov, automatic };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

inline constexpr std::size_t kDenseLimit = 4096;
// `automatic` picks dense_eig up to this size and krylov above it.
inline constexpr std::size_t kAutoDenseLimit = 1500;
inline constexpr double kUnitarityTolerance = 1e-10;

struct EvolutionOptions {
  bool store_snapshots = true;
  int krylov_dim = 30;
  double krylov_tol = 1e-10;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Vector> snapshots;  // empty when snapshots are disabled
  Eigen::MatrixXd populations;    // times x basis states
  std::vector<double> norms;
  Method method = Method::dense_eig;

  bool has_snapshots() const { return !snapshots.empty(); }
};

// exp(-iHt) psi0 on each grid time. Throws NotHermitian, InvalidArgument for
// a bad grid or unnormalized start, ResourceGuardError above the dense limit
// with dense_eig, and NumericContractError if the norm drifts by 1e-10.
EvolutionResult evolve(const Operator& h, const Vector& psi0, const std::vector<double>& times,
                       Method method = Method::automatic, const EvolutionOptions& opts = {});

// Cached eigendecomposition for repeated dense propagation.
class DensePropagator {
 public:
  explicit DensePropagator(const Operator& h);
  Vector apply(const Vector& psi, double t) const;
  const Eigen::VectorXd& eigenvalues() const { return solver_.eigenvalues(); }

 private:
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
};

// One Krylov step exp(-iHt) v with adaptive substeps to `tol` local error.
Vector krylov_propagate(const Operator& h, const Vector& v, double t, int krylov_dim = 30, double tol = 1e-10);

// Ascending eigenvalues with degeneracies repeated.
Eigen::VectorXd spectrum(const Operator& h);

// Base gap g when every eigenvalue offset is an integer multiple of g.
std::optional<double> commensurate_gap(const Eigen::VectorXd& eigenvalues, double tol = 1e-9);

struct RevivalReport {
  std::vector<double> revival_times;
  std::vector<double> fidelities;
  double threshold = 0.99;
  double refractory = 0.0;
};

std::vector<double> fidelity_series(const EvolutionResult& result, const Vector& psi0);

// Local maxima of |<psi0|psi(t)>|^2 above threshold, separated by at least
// `refractory` (default 5% of the scanned span) and away from the start.
RevivalReport detect_revivals(const EvolutionResult& result, const Vector& psi0, double threshold = 0.99,
                              std::optional<double> refractory = {});

std::vector<cplx> expectation_series(const EvolutionResult& result, const Operator& op);

cplx expectation(const Vector& psi, const Operator& op);

}  // namespace liefock

#endif  // LIEFOCK_DYNAMICS_HPP
