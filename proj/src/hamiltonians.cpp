#include "liefock/hamiltonians.hpp"

#include <cmath>

#include "liefock/errors.hpp"
#include "liefock/params.hpp"

namespace liefock {

Operator lie_hamiltonian(const AlgebraModel& model, const std::vector<Term>& terms) {
  Operator h = Operator::zero(static_cast<Eigen::Index>(model.basis->size()));
  for (const auto& t : terms) {
    if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag())) {
      throw InvalidArgument("hamiltonian: coefficient of '" + t.label + "' is not finite");
    }
    // Odd superalgebra generators still enter the Hamiltonian as plain matrices.
    h = h + model.op(t.label).with_grade(Grade::even) * t.coef;
  }
  return h;
}

std::vector<std::string> hamiltonian_names() {
  return {"two_mode", "spin_hop", "bloch", "three_mode", "so5", "wannier_stark", "driven_oscillator", "squeeze", "jc", "lmg"};
}

namespace {

Operator herm(const Operator& x) { return x + x.adjoint(); }

ModelHamiltonian two_mode(const Params& p) {
  ParamReader r("two_mode", p, {"N", "J0"});
  auto m = build_algebra("su2_schwinger", {{"N", r.integer("N", 4, 1)}});
  const double j0 = r.real("J0", 1.0);
  Operator h = lie_hamiltonian(m, {{"S+", j0}, {"S-", j0}});
  return {std::move(m), std::move(h)};
}

ModelHamiltonian spin_hop(const Params& p) {
  ParamReader r("spin_hop", p, {"S", "J0"});
  auto m = build_algebra("su2_spin", {{"S", r.real("S", 1.0)}});
  const double j0 = r.real("J0", 1.0);
  Operator h = lie_hamiltonian(m, {{"S+", j0}, {"S-", j0}});
  return {std::move(m), std::move(h)};
}

ModelHamiltonian bloch(const Params& p) {
  ParamReader r("bloch", p, {"S", "delta", "J"});
  auto m = build_algebra("su2_spin", {{"S", r.real("S", 1.0)}});
  const double j = r.real("J", 1.0);
  Operator h = lie_hamiltonian(m, {{"Sz", r.real("delta", 1.0)}, {"S+", j}, {"S-", j}});
  return {std::move(m), std::move(h)};
}

ModelHamiltonian three_mode(const Params& p) {
  ParamReader r("three_mode", p, {"N", "J", "phi"});
  auto m = build_algebra("su3_schwinger", {{"N", r.integer("N", 3, 1)}});
  const double j = r.real("J", 1.0);
  const cplx ph = std::polar(j, r.real("phi", 0.0));
  Operator h = lie_hamiltonian(m, {{"I+", j}, {"I-", j}, {"U+", j}, {"U-", j}, {"V+", ph}, {"V-", std::conj(ph)}});
  return {std::move(m), std::move(h)};
}

ModelHamiltonian so5(const Params& p) {
  ParamReader r("so5", p, {"N", "J1", "J2", "phi"});
  auto m = build_algebra("so5_printed", {{"N", r.integer("N", 2, 1)}});
  const auto& b = *m.basis;
  const double j1 = r.real("J1", 1.0), j2 = r.real("J2", 1.0);
  const cplx ph = std::polar(1.0, r.real("phi", 0.0));
  // Modes: 0 a_up, 1 a_down, 2 b_up, 3 b_down.
  Operator h = herm(hop(b, 0, 1) + hop(b, 2, 3)) * cplx(j1) +
               herm(hop(b, 0, 2) * ph + hop(b, 0, 3) + hop(b, 1, 2) + hop(b, 1, 3)) * cplx(j2);
  return {std::move(m), std::move(h)};
}

ModelHamiltonian wannier_stark(const Params& p) {
  ParamReader r("wannier_stark", p, {"L", "omega", "J"});
  auto m = build_algebra("e2", {{"L", r.integer("L", 21, 3)}});
  const double j = r.real("J", 1.0);
  Operator h = lie_hamiltonian(m, {{"E0", r.real("omega", 1.0)}, {"E+", -j}, {"E-", -j}});
  return {std::move(m), std::move(h)};
}

ModelHamiltonian driven_oscillator(const Params& p) {
  ParamReader r("driven_oscillator", p, {"cutoff", "Delta", "eta"});
  auto m = build_algebra("hw", {{"cutoff", r.integer("cutoff", 40, 2)}});
  const double eta = r.real("eta", 0.5);
  Operator h = lie_hamiltonian(m, {{"n", r.real("Delta", 1.0)}, {"a", eta}, {"adag", eta}});
  return {std::move(m), std::move(h)};
}

ModelHamiltonian squeeze_ham(const Params& p) {
  ParamReader r("squeeze", p, {"cutoff", "omega", "xi_re", "xi_im"});
  auto m = build_algebra("su11_single", {{"cutoff", r.integer("cutoff", 40, 3)}});
  const double w = r.real("omega", 2.0);
  const cplx xi(r.real("xi_re", 1.0), r.real("xi_im", 0.0));
  // omega n = omega (2 K0 - 1/2); K+ = adag^2 / 2.
  Operator h = lie_hamiltonian(m, {{"K0", 2.0 * w}, {"K+", xi}, {"K-", std::conj(xi)}}) +
               identity_op(*m.basis) * cplx(-0.5 * w);
  return {std::move(m), std::move(h)};
}

ModelHamiltonian jc(const Params& p) {
  ParamReader r("jc", p, {"cutoff", "omega", "Omega", "g"});
  auto m = build_algebra("jc_super", {{"cutoff", r.integer("cutoff", 6, 2)}});
  const double big = r.real("Omega", 1.0), g = r.real("g", 0.1);
  // sigma_z = 2 cdag c - 1
  Operator h = lie_hamiltonian(m, {{"adag_a", r.real("omega", 1.0)}, {"cdag_c", big}, {"adag_c", g}, {"cdag_a", g}}) +
               identity_op(*m.basis) * cplx(-0.5 * big);
  return {std::move(m), std::move(h)};
}

ModelHamiltonian lmg(const Params& p) {
  ParamReader r("lmg", p, {"S", "Omega", "g"});
  const double s = r.real("S", 4.0);
  auto m = build_algebra("su2_spin", {{"S", s}});
  const Operator sx = (m.op("S+") + m.op("S-")) * cplx(0.5);
  Operator h = m.op("Sz") * cplx(r.real("Omega", 1.0)) + sx * sx * cplx(r.real("g", 1.0) / s);
  return {std::move(m), std::move(h)};
}

}  // namespace

ModelHamiltonian named_hamiltonian(const std::string& name, const Params& params) {
  if (name == "two_mode") return two_mode(params);
  if (name == "spin_hop") return spin_hop(params);
  if (name == "bloch") return bloch(params);
  if (name == "three_mode") return three_mode(params);
  if (name == "so5") return so5(params);
  if (name == "wannier_stark") return wannier_stark(params);
  if (name == "driven_oscillator") return driven_oscillator(params);
  if (name == "squeeze") return squeeze_ham(params);
  if (name == "jc") return jc(params);
  if (name == "lmg") return lmg(params);
  throw InvalidArgument("unknown hamiltonian '" + name + "'");
}

}  // namespace liefock
