#ifndef LIEFOCK_COHERENT_HPP
#define LIEFOCK_COHERENT_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liefock/algebra.hpp"
#include "liefock/operators.hpp"

namespace liefock {

enum class CoherentKind { displaced, spin, squeezed, su3, euclidean };

std::string to_string(CoherentKind k);
CoherentKind coherent_kind_from_string(const std::string& name);

struct CoherentParams {
  CoherentKind kind = CoherentKind::displaced;
  // displaced / euclidean
  cplx beta{0.0, 0.0};
  // spin
  double theta = 0.0;
  double phi = 0.0;
  // squeezed: xi = r e^{i theta_s}, Bergmann index k in {1/4, 3/4}
  double r = 0.0;
  double theta_s = 0.0;
  double k = 0.25;
  // su3: either zeta given directly or built from four angles
  std::array<cplx, 3> zeta{cplx(1.0), cplx(0.0), cplx(0.0)};

  static CoherentParams su3_angles(double theta1, double theta2, double phi1, double phi2);
  void validate() const;

  friend bool operator==(const CoherentParams&, const CoherentParams&) = default;
};

// Displacement along root pair `pair`: exp(beta E_raise - conj(beta) E_lower) state.
// `leakage` receives the population outside the interior block.
Vector displace(const AlgebraModel& model, std::size_t pair, cplx beta, const Vector& state,
                double* leakage = nullptr);
Vector displace(const AlgebraModel& model, const std::string& raise_label, cplx beta, const Vector& state,
                double* leakage = nullptr);

inline constexpr double kLeakageWarning = 1e-8;
double boundary_leakage(const AlgebraModel& model, const Vector& state);

// Dense exp(beta E_raise - conj(beta) E_lower).
DenseMatrix displacement_matrix(const AlgebraModel& model, std::size_t pair, cplx beta);

// Closed-form expansions:
//   displaced: Glauber coherent state on a single boson mode
//   spin:      spin coherent state on a spin mode or a two-mode Schwinger sector
//   squeezed:  S(xi)|0> for k = 1/4; k = 3/4 applies S(xi) numerically to |1>
//   su3:       (zeta . adag)^N |0> / sqrt(N!) on a three-mode sector
//   euclidean: sum_l J_l(2|beta|) e^{i l arg beta} |l> on a site chain (spin-kind mode)
Vector closed_form_state(const CoherentParams& params, const FockBasis& basis);

// S(xi) = exp((conj(xi) a^2 - xi adag^2) / 2) applied numerically.
Vector squeeze(const FockBasis& basis, cplx xi, const Vector& state);

enum class PhaseSpace { plane, sphere, cylinder, disk };
std::string to_string(PhaseSpace s);
PhaseSpace phase_space_from_string(const std::string& name);

struct HusimiOptions {
  PhaseSpace space = PhaseSpace::plane;
  int n1 = 201;
  int n2 = 201;
  // plane: half-width in x and p; cylinder: largest |beta|; disk: largest |zeta|.
  double extent = 5.0;
  // disk only: Bergmann index selecting the even (1/4) or odd (3/4) chain.
  double k = 0.25;
  int threads = 1;
};

struct HusimiGrid {
  PhaseSpace space = PhaseSpace::plane;
  // Node coordinates: plane (x, p); sphere (theta, phi); cylinder (arg beta, |beta|); disk (arg zeta, |zeta|).
  std::vector<double> axis1;
  std::vector<double> axis2;
  Eigen::MatrixXd values;   // n1 x n2
  Eigen::MatrixXd weights;  // quadrature weights for the manifold measure
  double w = 0.0;           // normalization factor
  bool normalizable = true;

  double integral() const { return (values.array() * weights.array()).sum(); }
};

// Q = w |<coherent(node)|psi>|^2. Space must match the algebra:
// plane-hw, sphere-su2_spin/su2_schwinger, cylinder-e2, disk-su11_single.
HusimiGrid husimi(const AlgebraModel& model, const Vector& psi, const HusimiOptions& opts);
HusimiGrid husimi(const AlgebraModel& model, const DenseMatrix& rho, const HusimiOptions& opts);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct Uncertainty {
  double product;  // dA * dB
  double bound;    // |<[A, B]>| / 2
};
Uncertainty uncertainty(const Vector& psi, const Operator& a, const Operator& b);

// Standard deviation of the weight distribution along the first Cartan axis.
double fsl_width(const AlgebraModel& model, const Vector& psi);

// Height of the parabolic surface n(x, p) = p^2/2 + x^2/2 + 1/2.
inline double parabolic_surface(double x, double p) { return 0.5 * (p * p + x * x) + 0.5; }

}  // namespace liefock

#endif  // LIEFOCK_COHERENT_HPP
