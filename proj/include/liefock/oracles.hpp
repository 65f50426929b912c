#ifndef LIEFOCK_ORACLES_HPP
#define LIEFOCK_ORACLES_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "liefock/algebra.hpp"
#include "liefock/operators.hpp"

namespace liefock {

// Two-mode spin precession under delta Sz + 2J Sx from |S,S>.
struct BlochSample {
  double t = 0.0;
  double omega = 0.0;  // sqrt(delta^2 + 4 J^2)
  double sx = 0.0, sy = 0.0, sz = 0.0;
  cplx a, b;  // mode amplitudes in the coherent two-mode picture
};
BlochSample bloch(double delta, double j, double s, double t);

enum class SqueezeRegime { stable, critical, unstable };
std::string to_string(SqueezeRegime r);

struct SqueezeSample {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double chi = 0.0;
  double mean_n = 0.0;
  double var_n = 0.0;
};

// Vacuum evolved under omega n + (xi adag^2 + conj(xi) a^2)/2 stays a squeezed
// vacuum e^{i chi} S(r e^{i theta})|0>. Above |xi| = omega the trigonometric
// forms continue to hyperbolic ones.
class SqueezeSolution {
 public:
  SqueezeSolution(double omega, cplx xi);

  SqueezeRegime regime() const { return regime_; }
  // sqrt(omega^2 - |xi|^2) when stable, sqrt(|xi|^2 - omega^2) when unstable.
  double rate() const { return rate_; }
  SqueezeSample at(double t) const;

 private:
  double omega_;
  cplx xi_;
  double rate_;
  SqueezeRegime regime_;
};

struct So5Singles {
  Eigen::Vector4d printed;                      // matrix as printed, ascending
  Eigen::Vector4d hamiltonian;                  // single-particle matrix of the four-mode hopping
  std::optional<Eigen::Vector4d> closed_form;  // +-J sqrt(2 +- 2 cos(phi/2)) when J1 == J2
};

// Mode order a_up, a_down, b_up, b_down.
Eigen::Matrix4cd so5_printed_matrix(double j1, double j2, double phi);
Eigen::Matrix4cd so5_hopping_matrix(double j1, double j2, double phi);
So5Singles so5_singles(double j1, double j2, double phi);

// Ascending multiset {sum_i eps_i n_i : sum_i n_i = N}.
std::vector<double> so5_manybody(const Eigen::Vector4d& singles, int n);

struct So5Revival {
  std::int64_t m = 0, n = 0;  // cot(phi/4) = m/n
  double period = 0.0;        // pi m / (J cos(phi/4))
};
inline constexpr int kRevivalMaxDenominator = 64;
inline constexpr double kRevivalTolerance = 1e-10;
// Empty when cot(phi/4) is not rational within the cap.
std::optional<So5Revival> so5_revival(double phi, double j);

std::vector<double> wannier_stark_ladder(double omega, int j_min, int j_max);
double band_energy(double j, double k);
// Delta n - eta^2/Delta for n = 0..n_max. Throws SingularParameter at Delta = 0.
std::vector<double> driven_oscillator_levels(double delta, double eta, int n_max);
// <j+1|H|j> for the two-mode chain of N bosons.
double su2_hopping(int n, int j, double j0);
double spin_pcs_width(double s, double theta);
// (K0, Re K-, Im K-) = k (cosh 2r, sinh 2r cos theta, sinh 2r sin theta).
Eigen::Vector3d su11_expectations(double k, double r, double theta);

// Multiset of eigenvalues of a quadratic hopping Hamiltonian from its
// single-particle matrix: every sum eps_i n_i with sum_i n_i = N.
std::vector<double> quadratic_spectrum(const Eigen::VectorXd& singles, int n);

// CLI dispatcher. Kinds: bloch, squeezing, so5, wannier_stark, band,
// driven_oscillator, su2_hopping, spin_width, kexp.
std::vector<std::string> oracle_kinds();
nlohmann::json oracle_values(const std::string& kind, const Params& params);

}  // namespace liefock

#endif  // LIEFOCK_ORACLES_HPP
