#ifndef LIEFOCK_HAMILTONIANS_HPP
#define LIEFOCK_HAMILTONIANS_HPP

#include <string>
#include <vector>

#include "liefock/algebra.hpp"

namespace liefock {

struct Term {
  std::string label;
  cplx coef;
};

// sum_a k_a X_a over generator labels of `model`. Throws InvalidArgument for
// unknown labels or non-finite coefficients.
Operator lie_hamiltonian(const AlgebraModel& model, const std::vector<Term>& terms);

// A Hamiltonian together with the algebra whose basis it lives on.
struct ModelHamiltonian {
  AlgebraModel model;
  Operator h;
};

// Named models and their parameters (defaults in brackets):
//   two_mode         N[4] J0[1]                 J0 (adag b + bdag a)
//   spin_hop         S[1] J0[1]                 J0 (S+ + S-)
//   bloch            S[1] delta[1] J[1]         delta Sz + 2J Sx
//   three_mode       N[3] J[1] phi[0]           J (adag b + bdag c + e^{i phi} adag c + h.c.)
//   so5              N[2] J1[1] J2[1] phi[0]    four-mode hopping with one complex bond
//   wannier_stark    L[21] omega[1] J[1]        omega E0 - J (E+ + E-)
//   driven_oscillator cutoff[40] Delta[1] eta[0.5]  Delta n + eta (a + adag)
//   squeeze          cutoff[40] omega[2] xi_re[1] xi_im[0]  omega n + (xi adag^2 + conj(xi) a^2)/2
//   jc               cutoff[6] omega[1] Omega[1] g[0.1]     omega n + Omega sigma_z/2 + g (adag c + cdag a)
//   lmg              S[4] Omega[1] g[1]          Omega Sz + (g/S) Sx^2
std::vector<std::string> hamiltonian_names();
ModelHamiltonian named_hamiltonian(const std::string& name, const Params& params = {});

}  // namespace liefock

#endif  // LIEFOCK_HAMILTONIANS_HPP
