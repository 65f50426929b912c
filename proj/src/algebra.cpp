#include "liefock/algebra.hpp"

#include <cmath>
#include <set>

#include "liefock/errors.hpp"
#include "liefock/params.hpp"

namespace liefock {

std::size_t AlgebraModel::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].label == label) return i;
  }
  throw InvalidArgument("algebra " + name + " has no generator '" + label + "'");
}

std::vector<Operator> AlgebraModel::operators() const {
  std::vector<Operator> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.op);
  return out;
}

std::vector<std::string> AlgebraModel::labels() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.label);
  return out;
}

std::vector<Operator> AlgebraModel::cartan_operators() const {
  std::vector<Operator> out;
  for (std::size_t c : cartan) out.push_back(generators[c].op);
  return out;
}

std::vector<std::string> algebra_names() {
  return {"e2",           "hw",           "su2_spin",    "su2_schwinger", "su3_schwinger", "so5_printed",
          "su11_single",  "su11_intensity", "su11_twomode", "sp2n_boson",    "so2n_fermion",  "jc_super"};
}

std::vector<bool> interior_mask(const FockBasis& basis, int window, bool spin_edges) {
  std::vector<bool> keep(basis.size(), true);
  if (window <= 0) return keep;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis.state_at(i);
    for (std::size_t m = 0; m < s.size(); ++m) {
      const auto& mode = basis.mode(m);
      if (mode.kind == ModeKind::boson && s[m] > mode.capacity - window) keep[i] = false;
      if (mode.kind == ModeKind::spin && spin_edges && (s[m] < window || s[m] > mode.capacity - window)) {
        keep[i] = false;
      }
    }
  }
  return keep;
}

namespace {

double masked_inner_re(const Operator& a, const Operator& b, const std::vector<bool>& mask) {
  return trace_inner(restrict_to(a, mask), restrict_to(b, mask)).real();
}

Operator scaled(const Operator& a, double s) { return a * cplx(s); }

Operator quadratic_casimir_su11(const Operator& k0, const Operator& kp, const Operator& km) {
  // K0^2 - K1^2 - K2^2 with K+- = K1 +- i K2.
  return k0 * k0 - scaled(kp * km + km * kp, 0.5);
}

AlgebraModel make_model(std::string name, Params params, FockBasis basis) {
  AlgebraModel m;
  m.name = std::move(name);
  m.params = std::move(params);
  m.basis = std::make_shared<const FockBasis>(std::move(basis));
  return m;
}

void add(AlgebraModel& m, std::string label, Operator op) { m.generators.push_back({std::move(label), std::move(op)}); }

Params with_defaults(const Params& given, const Params& defaults) {
  Params out = defaults;
  for (const auto& [k, v] : given) out[k] = v;
  return out;
}

AlgebraModel build_e2(const Params& p) {
  ParamReader r("e2", p, {"L", "window"});
  const int sites = r.integer("L", 21, 3);
  const int window = r.integer("window", 2, 0);
  if (2 * window >= sites) throw InvalidArgument("e2: window leaves no interior sites");
  auto m = make_model("e2", with_defaults(p, {{"L", 21}, {"window", 2}}), FockBasis({ModeSpec::spin(sites - 1)}, {}));
  const auto& b = *m.basis;
  const double center = 0.5 * (sites - 1);
  std::vector<double> pos(b.size());
  std::vector<Eigen::Triplet<cplx>> up;
  for (std::size_t i = 0; i < b.size(); ++i) {
    pos[i] = b.state_at(i)[0] - center;
    if (i + 1 < b.size()) up.emplace_back(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i), 1.0);
  }
  const Operator ep = Operator::from_triplets(static_cast<Eigen::Index>(b.size()), up);
  add(m, "E0", diagonal_op(b, pos));
  add(m, "E+", ep);
  add(m, "E-", ep.adjoint());
  m.cartan = {0};
  m.interior = interior_mask(b, window, true);
  m.reference_side = ReferenceSide::lowering;
  m.casimirs.push_back({"E+E-", ep * ep.adjoint()});
  classify_roots(m, {{1, 2}});
  return m;
}

AlgebraModel build_hw(const Params& p) {
  ParamReader r("hw", p, {"cutoff", "window"});
  const int cutoff = r.integer("cutoff", 10, 2);
  const int window = r.integer("window", 2, 0);
  auto m = make_model("hw", with_defaults(p, {{"cutoff", 10}, {"window", 2}}),
                      FockBasis({ModeSpec::boson(cutoff)}, {}));
  const auto& b = *m.basis;
  auto [lower, raise] = ladder_ops(b, 0);
  add(m, "n", number_op(b, 0));
  add(m, "a", lower);
  add(m, "adag", raise);
  add(m, "I", identity_op(b));
  m.cartan = {0};
  m.interior = interior_mask(b, window, false);
  m.reference_side = ReferenceSide::lowering;
  m.casimirs.push_back({"I", identity_op(b)});
  classify_roots(m, {{2, 1}});
  return m;
}

AlgebraModel build_su2_spin(const Params& p) {
  ParamReader r("su2_spin", p, {"S"});
  const double s = r.real("S", 1.0);
  const double two_s = std::round(2.0 * s);
  if (std::abs(2.0 * s - two_s) > 1e-9 || two_s < 1) throw InvalidArgument("su2_spin: S must be a positive half-integer");
  auto m = make_model("su2_spin", with_defaults(p, {{"S", 1.0}}),
                      FockBasis({ModeSpec::spin(static_cast<int>(two_s))}, {}));
  const auto& b = *m.basis;
  auto [lower, raise] = ladder_ops(b, 0);
  const Operator sz = spin_z(b, 0);
  add(m, "Sz", sz);
  add(m, "S+", raise);
  add(m, "S-", lower);
  m.cartan = {0};
  m.reference_side = ReferenceSide::raising;
  m.casimirs.push_back({"S^2", sz * sz + scaled(raise * lower + lower * raise, 0.5)});
  classify_roots(m, {{1, 2}});
  return m;
}

AlgebraModel build_su2_schwinger(const Params& p) {
  ParamReader r("su2_schwinger", p, {"N"});
  const int n = r.integer("N", 4, 1);
  auto m = make_model("su2_schwinger", with_defaults(p, {{"N", 4}}),
                      FockBasis({ModeSpec::boson(n), ModeSpec::boson(n)}, n));
  const auto& b = *m.basis;
  const Operator sz = scaled(number_op(b, 0) - number_op(b, 1), 0.5);
  const Operator sp = hop(b, 0, 1);
  const Operator sm = hop(b, 1, 0);
  add(m, "Sz", sz);
  add(m, "S+", sp);
  add(m, "S-", sm);
  m.cartan = {0};
  m.reference_side = ReferenceSide::raising;
  m.casimirs.push_back({"S^2", sz * sz + scaled(sp * sm + sm * sp, 0.5)});
  m.casimirs.push_back({"N", number_op(b, 0) + number_op(b, 1)});
  classify_roots(m, {{1, 2}});
  return m;
}

AlgebraModel build_su3_schwinger(const Params& p) {
  ParamReader r("su3_schwinger", p, {"N"});
  const int n = r.integer("N", 3, 1);
  auto m = make_model("su3_schwinger", with_defaults(p, {{"N", 3}}),
                      FockBasis({ModeSpec::boson(n), ModeSpec::boson(n), ModeSpec::boson(n)}, n));
  const auto& b = *m.basis;
  const Operator na = number_op(b, 0), nb = number_op(b, 1), nc = number_op(b, 2);
  add(m, "H1", scaled(na - nb, 0.5));
  add(m, "H2", scaled(na + nb - scaled(nc, 2.0), 1.0 / (2.0 * std::sqrt(3.0))));
  add(m, "I+", hop(b, 0, 1));
  add(m, "I-", hop(b, 1, 0));
  add(m, "U+", hop(b, 1, 2));
  add(m, "U-", hop(b, 2, 1));
  add(m, "V+", hop(b, 0, 2));
  add(m, "V-", hop(b, 2, 0));
  m.cartan = {0, 1};
  m.reference_side = ReferenceSide::raising;
  Operator gamma2 = m.generators[0].op * m.generators[0].op + m.generators[1].op * m.generators[1].op;
  for (std::size_t k = 2; k < 8; k += 2) {
    const auto& e = m.generators[k].op;
    const auto& f = m.generators[k + 1].op;
    gamma2 = gamma2 + scaled(e * f + f * e, 0.5);
  }
  m.casimirs.push_back({"N", na + nb + nc});
  m.casimirs.push_back({"Gamma2", gamma2});
  classify_roots(m, {{2, 3}, {4, 5}, {6, 7}});
  return m;
}

AlgebraModel build_so5_printed(const Params& p) {
  ParamReader r("so5_printed", p, {"N"});
  const int n = r.integer("N", 2, 1);
  std::vector<ModeSpec> modes(4, ModeSpec::boson(n));
  auto m = make_model("so5_printed", with_defaults(p, {{"N", 2}}), FockBasis(modes, n));
  const auto& b = *m.basis;
  // Mode order: a_up, a_down, b_up, b_down.
  add(m, "H1", scaled(number_op(b, 0) - number_op(b, 1), 0.5));
  add(m, "H2", scaled(number_op(b, 2) - number_op(b, 3), 0.5));
  const std::pair<const char*, std::pair<std::size_t, std::size_t>> roots[] = {
      {"a1", {0, 1}}, {"a2", {2, 3}}, {"a1+a2", {0, 3}}, {"a1-a2", {1, 2}}};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [label, modes_ij] : roots) {
    const Operator e = hop(b, modes_ij.first, modes_ij.second);
    add(m, std::string("Sigma_") + label, e);
    add(m, std::string("Sigma_") + label + "^dag", e.adjoint());
    pairs.emplace_back(m.generators.size() - 2, m.generators.size() - 1);
  }
  m.cartan = {0, 1};
  m.reference_side = ReferenceSide::raising;
  Operator total = number_op(b, 0);
  for (std::size_t k = 1; k < 4; ++k) total = total + number_op(b, k);
  m.casimirs.push_back({"N", total});
  classify_roots(m, pairs);
  return m;
}

AlgebraModel build_su11_single(const Params& p) {
  ParamReader r("su11_single", p, {"k", "cutoff", "window"});
  const double k = r.real("k", 0.25);
  if (std::abs(k - 0.25) > 1e-12 && std::abs(k - 0.75) > 1e-12) {
    throw InvalidArgument("su11_single: Bergmann index k must be 1/4 or 3/4");
  }
  const int cutoff = r.integer("cutoff", 40, 3);
  const int window = r.integer("window", 2, 0);
  auto m = make_model("su11_single", with_defaults(p, {{"k", 0.25}, {"cutoff", 40}, {"window", 2}}),
                      FockBasis({ModeSpec::boson(cutoff)}, {}));
  const auto& b = *m.basis;
  const Ladder up2[] = {{0, true}, {0, true}};
  const Operator kp = scaled(monomial(b, up2), 0.5);
  const Operator k0 = scaled(number_op(b, 0) + scaled(identity_op(b), 0.5), 0.5);
  add(m, "K0", k0);
  add(m, "K+", kp);
  add(m, "K-", kp.adjoint());
  m.cartan = {0};
  m.interior = interior_mask(b, window, false);
  m.reference_side = ReferenceSide::lowering;
  m.casimirs.push_back({"Gamma", quadratic_casimir_su11(k0, kp, kp.adjoint())});
  classify_roots(m, {{1, 2}});
  return m;
}

AlgebraModel build_su11_intensity(const Params& p) {
  ParamReader r("su11_intensity", p, {"cutoff", "window"});
  const int cutoff = r.integer("cutoff", 40, 3);
  const int window = r.integer("window", 2, 0);
  auto m = make_model("su11_intensity", with_defaults(p, {{"cutoff", 40}, {"window", 2}}),
                      FockBasis({ModeSpec::boson(cutoff)}, {}));
  const auto& b = *m.basis;
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 0; n < cutoff; ++n) t.emplace_back(n + 1, n, static_cast<double>(n + 1));
  const Operator kp = Operator::from_triplets(static_cast<Eigen::Index>(b.size()), t);
  const Operator k0 = number_op(b, 0) + scaled(identity_op(b), 0.5);
  add(m, "K0", k0);
  add(m, "K+", kp);
  add(m, "K-", kp.adjoint());
  m.cartan = {0};
  m.interior = interior_mask(b, window, false);
  m.reference_side = ReferenceSide::lowering;
  m.casimirs.push_back({"Gamma", quadratic_casimir_su11(k0, kp, kp.adjoint())});
  classify_roots(m, {{1, 2}});
  return m;
}

AlgebraModel build_su11_twomode(const Params& p) {
  ParamReader r("su11_twomode", p, {"cutoff", "window"});
  const int cutoff = r.integer("cutoff", 10, 3);
  const int window = r.integer("window", 2, 0);
  auto m = make_model("su11_twomode", with_defaults(p, {{"cutoff", 10}, {"window", 2}}),
                      FockBasis({ModeSpec::boson(cutoff), ModeSpec::boson(cutoff)}, {}));
  const auto& b = *m.basis;
  const Ladder pair[] = {{0, true}, {1, true}};
  const Operator kp = monomial(b, pair);
  const Operator k0 = scaled(number_op(b, 0) + number_op(b, 1) + identity_op(b), 0.5);
  add(m, "K0", k0);
  add(m, "K+", kp);
  add(m, "K-", kp.adjoint());
  m.cartan = {0};
  m.interior = interior_mask(b, window, false);
  m.reference_side = ReferenceSide::lowering;
  m.casimirs.push_back({"Gamma", quadratic_casimir_su11(k0, kp, kp.adjoint())});
  m.casimirs.push_back({"na-nb", number_op(b, 0) - number_op(b, 1)});
  classify_roots(m, {{1, 2}});
  return m;
}

std::string pair_label(const char* head, int i, int j) {
  return std::string(head) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

AlgebraModel build_sp2n_boson(const Params& p) {
  ParamReader r("sp2n_boson", p, {"modes", "cutoff", "window"});
  const int nm = r.integer("modes", 2, 1);
  const int cutoff = r.integer("cutoff", 6, 3);
  const int window = r.integer("window", 2, 0);
  auto m = make_model("sp2n_boson", with_defaults(p, {{"modes", 2}, {"cutoff", 6}, {"window", 2}}),
                      FockBasis(std::vector<ModeSpec>(static_cast<std::size_t>(nm), ModeSpec::boson(cutoff)), {}));
  const auto& b = *m.basis;
  const Operator id = identity_op(b);
  std::vector<std::vector<std::size_t>> e_index(nm, std::vector<std::size_t>(nm));
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) {
      // Symmetrized so that the Cartan part closes without the identity.
      Operator e = hop(b, i, j);
      if (i == j) e = e + scaled(id, 0.5);
      e_index[i][j] = m.generators.size();
      add(m, pair_label("E", i, j), e);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < nm; ++i) {
    m.cartan.push_back(e_index[i][i]);
    for (int j = i + 1; j < nm; ++j) pairs.emplace_back(e_index[i][j], e_index[j][i]);
  }
  for (int i = 0; i < nm; ++i) {
    for (int j = i; j < nm; ++j) {
      const Ladder f[] = {{static_cast<std::size_t>(i), true}, {static_cast<std::size_t>(j), true}};
      const Operator pij = monomial(b, f);
      add(m, pair_label("P", i, j), pij);
      add(m, pair_label("Q", i, j), pij.adjoint());
      pairs.emplace_back(m.generators.size() - 2, m.generators.size() - 1);
    }
  }
  m.interior = interior_mask(b, window, false);
  m.reference_side = ReferenceSide::lowering;
  classify_roots(m, pairs);
  return m;
}

AlgebraModel build_so2n_fermion(const Params& p) {
  ParamReader r("so2n_fermion", p, {"modes"});
  const int nm = r.integer("modes", 2, 1);
  auto m = make_model("so2n_fermion", with_defaults(p, {{"modes", 2}}),
                      FockBasis(std::vector<ModeSpec>(static_cast<std::size_t>(nm), ModeSpec::fermion()), {}));
  const auto& b = *m.basis;
  const Operator id = identity_op(b);
  std::vector<std::vector<std::size_t>> e_index(nm, std::vector<std::size_t>(nm));
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) {
      Operator e = hop(b, i, j);
      if (i == j) e = e - scaled(id, 0.5);
      e_index[i][j] = m.generators.size();
      add(m, pair_label("E", i, j), e);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < nm; ++i) {
    m.cartan.push_back(e_index[i][i]);
    for (int j = i + 1; j < nm; ++j) pairs.emplace_back(e_index[i][j], e_index[j][i]);
  }
  for (int i = 0; i < nm; ++i) {
    for (int j = i + 1; j < nm; ++j) {
      const Ladder f[] = {{static_cast<std::size_t>(i), true}, {static_cast<std::size_t>(j), true}};
      const Operator pij = monomial(b, f);
      add(m, pair_label("P", i, j), pij);
      add(m, pair_label("Q", i, j), pij.adjoint());
      pairs.emplace_back(m.generators.size() - 2, m.generators.size() - 1);
    }
  }
  m.reference_side = ReferenceSide::lowering;
  classify_roots(m, pairs);
  return m;
}

AlgebraModel build_jc_super(const Params& p) {
  ParamReader r("jc_super", p, {"cutoff", "window"});
  const int cutoff = r.integer("cutoff", 6, 2);
  const int window = r.integer("window", 2, 0);
  auto m = make_model("jc_super", with_defaults(p, {{"cutoff", 6}, {"window", 2}}),
                      FockBasis({ModeSpec::boson(cutoff), ModeSpec::fermion()}, {}));
  const auto& b = *m.basis;
  const Ladder f[] = {{0, true}, {1, false}};
  const Operator adag_c = monomial(b, f);
  add(m, "adag_a", number_op(b, 0));
  add(m, "cdag_c", number_op(b, 1));
  add(m, "adag_c", adag_c);
  add(m, "cdag_a", adag_c.adjoint());
  m.cartan = {0, 1};
  m.graded = true;
  m.interior = interior_mask(b, window, false);
  m.reference_side = ReferenceSide::lowering;
  m.casimirs.push_back({"n_a+n_c", number_op(b, 0) + number_op(b, 1)});
  classify_roots(m, {{2, 3}});
  return m;
}

}  // namespace

void classify_roots(AlgebraModel& model, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  const auto& mask = model.interior;
  const std::size_t rank = model.cartan.size();
  std::vector<std::vector<double>> numeric(pairs.size(), std::vector<double>(rank, 0.0));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Operator& e = model.generators.at(pairs[k].first).op;
    const double ee = masked_inner_re(e, e, mask);
    if (ee == 0.0) throw InvalidArgument(model.name + ": root generator vanishes on the interior block");
    for (std::size_t a = 0; a < rank; ++a) {
      const Operator shifted = commutator(model.generators[model.cartan[a]].op, e);
      numeric[k][a] = masked_inner_re(e, shifted, mask) / ee;
    }
  }

  // Per axis: try the raw eigenvalues as rationals, otherwise measure them in
  // units of the smallest nonzero eigenvalue magnitude.
  model.axis_unit.assign(rank, 1.0);
  constexpr std::int64_t kMaxDen = 64;
  constexpr double kTol = 1e-9;
  for (std::size_t a = 0; a < rank; ++a) {
    const Operator& c = model.generators[model.cartan[a]].op;
    std::vector<double> values;
    double smallest = 0.0;
    for (Eigen::Index i = 0; i < c.dim(); ++i) {
      if (!mask.empty() && !mask[static_cast<std::size_t>(i)]) continue;
      const double v = c.coeff(i, i).real();
      values.push_back(v);
      if (std::abs(v) > kTol && (smallest == 0.0 || std::abs(v) < smallest)) smallest = std::abs(v);
    }
    for (const auto& root : numeric) values.push_back(root[a]);
    auto all_rational = [&](double unit) {
      for (double v : values) {
        if (!rationalize(v / unit, kMaxDen, kTol)) return false;
      }
      return true;
    };
    if (!all_rational(1.0)) {
      if (smallest == 0.0 || !all_rational(smallest)) {
        throw Error(model.name + ": Cartan eigenvalues along axis " + std::to_string(a) +
                    " are not commensurate rationals");
      }
      model.axis_unit[a] = smallest;
    }
  }

  model.roots.clear();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    RootPair rp{pairs[k].first, pairs[k].second, {}, numeric[k]};
    for (std::size_t a = 0; a < rank; ++a) rp.root.push_back(*rationalize(numeric[k][a] / model.axis_unit[a], kMaxDen, kTol));
    model.roots.push_back(std::move(rp));
  }
}

AlgebraModel build_algebra(const std::string& name, const Params& params) {
  if (name == "e2") return build_e2(params);
  if (name == "hw") return build_hw(params);
  if (name == "su2_spin") return build_su2_spin(params);
  if (name == "su2_schwinger") return build_su2_schwinger(params);
  if (name == "su3_schwinger") return build_su3_schwinger(params);
  if (name == "so5_printed") return build_so5_printed(params);
  if (name == "su11_single") return build_su11_single(params);
  if (name == "su11_intensity") return build_su11_intensity(params);
  if (name == "su11_twomode") return build_su11_twomode(params);
  if (name == "sp2n_boson") return build_sp2n_boson(params);
  if (name == "so2n_fermion") return build_so2n_fermion(params);
  if (name == "jc_super") return build_jc_super(params);
  throw InvalidArgument("unknown algebra '" + name + "'");
}

std::vector<std::string> closure_seed_names() { return {"hw_heis", "su2", "su3", "sp4", "jc_super", "rabi", "lmg"}; }

ClosureSeed closure_seed(const std::string& name) {
  ClosureSeed out;
  out.name = name;
  auto from_model = [&out](const AlgebraModel& m, const std::vector<std::string>& labels) {
    for (const auto& l : labels) out.seed.push_back({l, m.op(l)});
    out.graded = m.graded;
    out.mask = m.interior;
  };
  if (name == "hw_heis") {
    from_model(build_algebra("hw", {{"cutoff", 12}}), {"a", "adag", "I"});
  } else if (name == "su2") {
    from_model(build_algebra("su2_spin", {{"S", 2}}), {"Sz", "S+", "S-"});
  } else if (name == "su3") {
    from_model(build_algebra("su3_schwinger", {{"N", 3}}), {"H1", "H2", "I+", "I-", "U+", "U-", "V+", "V-"});
  } else if (name == "sp4") {
    const auto m = build_algebra("sp2n_boson", {{"modes", 2}, {"cutoff", 6}});
    from_model(m, m.labels());
  } else if (name == "jc_super") {
    from_model(build_algebra("jc_super", {{"cutoff", 6}}), {"adag_a", "cdag_c", "adag_c", "cdag_a"});
  } else if (name == "rabi") {
    const FockBasis b({ModeSpec::boson(12), ModeSpec::spin(1)}, {});
    auto [a, adag] = ladder_ops(b, 0);
    auto [sm, sp] = ladder_ops(b, 1);
    out.seed.push_back({"n", number_op(b, 0)});
    out.seed.push_back({"sigma_z", spin_z(b, 1) * cplx(2.0)});
    out.seed.push_back({"a sigma+ + adag sigma-", a * sp + adag * sm});
    out.seed.push_back({"a sigma- + adag sigma+", a * sm + adag * sp});
    out.mask = interior_mask(b, 2, false);
  } else if (name == "lmg") {
    const double s = 8.0;
    const FockBasis b({ModeSpec::spin(16)}, {});
    auto [sm, sp] = ladder_ops(b, 0);
    const Operator sx = (sp + sm) * cplx(0.5);
    out.seed.push_back({"Sz", spin_z(b, 0)});
    out.seed.push_back({"Sx^2/S", sx * sx * cplx(1.0 / s)});
  } else {
    throw InvalidArgument("unknown closure seed '" + name + "'");
  }
  return out;
}

VerifyReport verify_algebra(const AlgebraModel& model) {
  VerifyReport rep;
  const auto& mask = model.interior;
  double cartan_defect = 0.0;
  for (std::size_t a = 0; a < model.cartan.size(); ++a) {
    const Operator& c = model.generators[model.cartan[a]].op;
    Operator::Matrix off = c.matrix();
    off.prune([](Eigen::Index r, Eigen::Index col, const cplx&) { return r != col; });
    cartan_defect = std::max(cartan_defect, off.norm());
    for (std::size_t b = a + 1; b < model.cartan.size(); ++b) {
      const Operator& d = model.generators[model.cartan[b]].op;
      const double scale = std::max(1.0, c.frobenius() * d.frobenius());
      cartan_defect = std::max(cartan_defect, restrict_to(commutator(c, d), mask).frobenius() / scale);
    }
  }
  rep.cartan_defect = cartan_defect;
  rep.cartan_ok = cartan_defect < 1e-12;

  double root_defect = 0.0;
  for (const auto& rp : model.roots) {
    const Operator& e = model.generators[rp.raise].op;
    const Operator& f = model.generators[rp.lower].op;
    for (std::size_t a = 0; a < model.cartan.size(); ++a) {
      const Operator& c = model.generators[model.cartan[a]].op;
      const double alpha = rp.root_numeric[a];
      const double scale = std::max(1.0, restrict_to(c, mask).frobenius() * restrict_to(e, mask).frobenius());
      const double de = restrict_to(commutator(c, e) - e * cplx(alpha), mask).frobenius() / scale;
      const double df = restrict_to(commutator(c, f) + f * cplx(alpha), mask).frobenius() / scale;
      root_defect = std::max({root_defect, de, df});
    }
  }
  rep.root_defect = root_defect;
  rep.root_eigen_ok = root_defect < 1e-10;

  const std::size_t cap = std::max<std::size_t>(64, 4 * model.generators.size());
  rep.closure = lie_closure(model.generators, cap, model.graded, mask);
  try {
    rep.closure_residual = extract_structure_constants(model.generators, model.graded, mask).max_residual;
  } catch (const DegenerateGenerators&) {
    rep.closure_residual = std::nan("");
  }
  for (const auto& cas : model.casimirs) rep.casimirs.emplace_back(cas.label, verify_casimir(cas.op, model));
  return rep;
}

}  // namespace liefock
