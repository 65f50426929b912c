#include "liefock/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liefock/errors.hpp"
#include "liefock/params.hpp"
#include "liefock/rational.hpp"

namespace liefock {

BlochSample bloch(double delta, double j, double s, double t) {
  BlochSample out;
  out.t = t;
  const double w = std::sqrt(delta * delta + 4.0 * j * j);
  out.omega = w;
  if (w == 0.0) {
    out.sz = s;
    out.a = std::sqrt(2.0 * s);
    out.b = 0.0;
    return out;
  }
  const double c = std::cos(w * t), sn = std::sin(w * t);
  out.sx = 2.0 * j * delta / (w * w) * s * (1.0 - c);
  out.sy = -2.0 * j / w * s * sn;
  out.sz = s * (delta * delta + 4.0 * j * j * c) / (w * w);
  const double ch = std::cos(0.5 * w * t), sh = std::sin(0.5 * w * t);
  out.a = std::sqrt(2.0 * s) * cplx(ch, -delta / w * sh);
  out.b = cplx(0.0, -1.0) * std::sqrt(2.0 * s) * (2.0 * j / w) * sh;
  return out;
}

std::string to_string(SqueezeRegime r) {
  switch (r) {
    case SqueezeRegime::stable: return "stable";
    case SqueezeRegime::critical: return "critical";
    case SqueezeRegime::unstable: return "unstable";
  }
  return "stable";
}

SqueezeSolution::SqueezeSolution(double omega, cplx xi) : omega_(omega), xi_(xi) {
  if (!(omega >= 0.0)) throw InvalidArgument("squeezing: omega must be >= 0");
  const double d = omega * omega - std::norm(xi);
  if (std::abs(d) <= 1e-14 * std::max(1.0, omega * omega)) {
    regime_ = SqueezeRegime::critical;
    rate_ = 0.0;
  } else if (d > 0.0) {
    regime_ = SqueezeRegime::stable;
    rate_ = std::sqrt(d);
  } else {
    regime_ = SqueezeRegime::unstable;
    rate_ = std::sqrt(-d);
  }
}

SqueezeSample SqueezeSolution::at(double t) const {
  // C + i omega S with S = sin(Omega t)/Omega, continued analytically.
  double c = 1.0, s = t;
  if (regime_ == SqueezeRegime::stable) {
    c = std::cos(rate_ * t);
    s = std::sin(rate_ * t) / rate_;
  } else if (regime_ == SqueezeRegime::unstable) {
    c = std::cosh(rate_ * t);
    s = std::sinh(rate_ * t) / rate_;
  }
  double phase = std::atan2(omega_ * s, c);
  if (regime_ == SqueezeRegime::stable) {
    // The point (cos u, (omega/Omega) sin u) turns with u = Omega t and never
    // leaves u's half-plane, so the unwrapped angle is the branch nearest u.
    const double u = rate_ * t;
    phase += 2.0 * std::numbers::pi * std::round((u - phase) / (2.0 * std::numbers::pi));
  }
  SqueezeSample out;
  out.t = t;
  out.r = std::asinh(std::abs(xi_) * std::abs(s));
  out.mean_n = std::norm(xi_) * s * s;
  out.var_n = 2.0 * out.mean_n * (out.mean_n + 1.0);
  // Direction of the squeeze follows sign(S) through zero crossings.
  const double base = std::arg(xi_) + (s < 0.0 ? std::numbers::pi : 0.0);
  out.theta = base + 0.5 * std::numbers::pi - phase;
  out.chi = 0.5 * omega_ * t - 0.5 * phase;
  return out;
}

Eigen::Matrix4cd so5_printed_matrix(double j1, double j2, double phi) {
  const cplx e = std::polar(j2, phi);
  Eigen::Matrix4cd h;
  h << 0.0, j1, j1, e,
       j1, 0.0, e, j1,
       j1, std::conj(e), 0.0, j1,
       std::conj(e), j1, j1, 0.0;
  return h;
}

Eigen::Matrix4cd so5_hopping_matrix(double j1, double j2, double phi) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  auto bond = [&h](int i, int k, cplx v) {
    h(i, k) += v;
    h(k, i) += std::conj(v);
  };
  bond(0, 1, j1);
  bond(2, 3, j1);
  bond(0, 2, std::polar(j2, phi));
  bond(0, 3, j2);
  bond(1, 2, j2);
  bond(1, 3, j2);
  return h;
}

namespace {

Eigen::Vector4d hermitian_eigenvalues(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace

So5Singles so5_singles(double j1, double j2, double phi) {
  So5Singles out;
  out.printed = hermitian_eigenvalues(so5_printed_matrix(j1, j2, phi));
  out.hamiltonian = hermitian_eigenvalues(so5_hopping_matrix(j1, j2, phi));
  if (j1 == j2) {
    const double c = std::cos(0.5 * phi);
    const double hi = std::abs(j1) * std::sqrt(std::max(2.0 + 2.0 * c, 0.0));
    const double lo = std::abs(j1) * std::sqrt(std::max(2.0 - 2.0 * c, 0.0));
    Eigen::Vector4d cf(-hi, -lo, lo, hi);
    std::sort(cf.data(), cf.data() + 4);
    out.closed_form = cf;
  }
  return out;
}

std::vector<double> quadratic_spectrum(const Eigen::VectorXd& singles, int n) {
  if (n < 0) throw InvalidArgument("quadratic_spectrum: N must be >= 0");
  const auto modes = static_cast<int>(singles.size());
  if (modes == 0) throw InvalidArgument("quadratic_spectrum: no single-particle levels");
  std::vector<double> out;
  // Enumerate compositions of n into `modes` parts.
  auto rec = [&](auto&& self, int mode, int left, double energy) -> void {
    if (mode == modes - 1) {
      out.push_back(energy + left * singles(mode));
      return;
    }
    for (int k = 0; k <= left; ++k) self(self, mode + 1, left - k, energy + k * singles(mode));
  };
  rec(rec, 0, n, 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> so5_manybody(const Eigen::Vector4d& singles, int n) { return quadratic_spectrum(singles, n); }

std::optional<So5Revival> so5_revival(double phi, double j) {
  if (j == 0.0) throw SingularParameter("so5_revival: J must be nonzero");
  const double q = phi / 4.0;
  const double sn = std::sin(q);
  if (std::abs(sn) < 1e-15) return std::nullopt;
  const double cot = std::cos(q) / sn;
  const auto ratio = rationalize(cot, kRevivalMaxDenominator, kRevivalTolerance);
  if (!ratio || ratio->num() == 0) return std::nullopt;
  So5Revival out;
  out.m = ratio->num();
  out.n = ratio->den();
  out.period = std::abs(std::numbers::pi * static_cast<double>(out.m) / (j * std::cos(q)));
  return out;
}

std::vector<double> wannier_stark_ladder(double omega, int j_min, int j_max) {
  if (j_max < j_min) throw InvalidArgument("wannier_stark_ladder: empty site range");
  std::vector<double> out;
  for (int jj = j_min; jj <= j_max; ++jj) out.push_back(omega * jj);
  return out;
}

double band_energy(double j, double k) { return 2.0 * j * std::cos(k); }

std::vector<double> driven_oscillator_levels(double delta, double eta, int n_max) {
  if (delta == 0.0) throw SingularParameter("driven oscillator: Delta = 0 makes -eta^2/Delta singular");
  if (n_max < 0) throw InvalidArgument("driven oscillator: n_max must be >= 0");
  std::vector<double> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(delta * n - eta * eta / delta);
  return out;
}

double su2_hopping(int n, int j, double j0) {
  if (n < 1 || j < 0 || j >= n) throw InvalidArgument("su2_hopping: need 0 <= j < N");
  return j0 * std::sqrt(static_cast<double>(j + 1) * static_cast<double>(n - j));
}

double spin_pcs_width(double s, double theta) { return std::sqrt(0.5 * s) * std::abs(std::sin(theta)); }

Eigen::Vector3d su11_expectations(double k, double r, double theta) {
  return k * Eigen::Vector3d(std::cosh(2.0 * r), std::sinh(2.0 * r) * std::cos(theta), std::sinh(2.0 * r) * std::sin(theta));
}

std::vector<std::string> oracle_kinds() {
  return {"bloch", "squeezing", "so5", "wannier_stark", "band", "driven_oscillator", "su2_hopping", "spin_width", "kexp"};
}

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

nlohmann::json oracle_values(const std::string& kind, const Params& params) {
  using nlohmann::json;
  if (kind == "bloch") {
    ParamReader r("bloch", params, {"delta", "J", "S", "t"});
    const auto b = bloch(r.real("delta", 1.0), r.real("J", 1.0), r.real("S", 1.0), r.real("t", 0.0));
    return {{"kind", kind}, {"t", b.t}, {"Omega", b.omega}, {"Sx", b.sx}, {"Sy", b.sy}, {"Sz", b.sz},
            {"a", {b.a.real(), b.a.imag()}}, {"b", {b.b.real(), b.b.imag()}}};
  }
  if (kind == "squeezing") {
    ParamReader r("squeezing", params, {"omega", "xi_re", "xi_im", "t"});
    const SqueezeSolution sol(r.real("omega", 2.0), cplx(r.real("xi_re", 1.0), r.real("xi_im", 0.0)));
    const auto s = sol.at(r.real("t", 0.0));
    return {{"kind", kind}, {"regime", to_string(sol.regime())}, {"rate", sol.rate()}, {"t", s.t}, {"r", s.r},
            {"theta", s.theta}, {"chi", s.chi}, {"mean_n", s.mean_n}, {"var_n", s.var_n}};
  }
  if (kind == "so5") {
    ParamReader r("so5", params, {"J1", "J2", "phi", "N"});
    const double j1 = r.real("J1", 1.0), j2 = r.real("J2", 1.0), phi = r.real("phi", 0.0);
    const auto s = so5_singles(j1, j2, phi);
    json out{{"kind", kind}, {"printed", vec_json(s.printed)}, {"hamiltonian", vec_json(s.hamiltonian)}};
    if (s.closed_form) {
      out["closed_form"] = vec_json(*s.closed_form);
      out["delta_printed"] = vec_json(s.printed - *s.closed_form);
      out["delta_hamiltonian"] = vec_json(s.hamiltonian - *s.closed_form);
      const auto rev = so5_revival(phi, j1);
      out["revival"] = rev ? json{{"m", rev->m}, {"n", rev->n}, {"period", rev->period}} : json(nullptr);
    }
    if (params.count("N")) out["manybody"] = so5_manybody(s.hamiltonian, r.integer("N", 1, 0));
    return out;
  }
  if (kind == "wannier_stark") {
    ParamReader r("wannier_stark", params, {"omega", "j_min", "j_max"});
    return {{"kind", kind},
            {"levels", wannier_stark_ladder(r.real("omega", 1.0), r.integer("j_min", -10, -1000000), r.integer("j_max", 10, -1000000))}};
  }
  if (kind == "band") {
    ParamReader r("band", params, {"J", "k"});
    return {{"kind", kind}, {"energy", band_energy(r.real("J", 1.0), r.real("k", 0.0))}};
  }
  if (kind == "driven_oscillator") {
    ParamReader r("driven_oscillator", params, {"Delta", "eta", "n_max"});
    return {{"kind", kind}, {"levels", driven_oscillator_levels(r.real("Delta", 1.0), r.real("eta", 0.5), r.integer("n_max", 10, 0))}};
  }
  if (kind == "su2_hopping") {
    ParamReader r("su2_hopping", params, {"N", "j", "J0"});
    return {{"kind", kind}, {"amplitude", su2_hopping(r.integer("N", 4, 1), r.integer("j", 0, 0), r.real("J0", 1.0))}};
  }
  if (kind == "spin_width") {
    ParamReader r("spin_width", params, {"S", "theta"});
    return {{"kind", kind}, {"width", spin_pcs_width(r.real("S", 1.0), r.real("theta", 0.0))}};
  }
  if (kind == "kexp") {
    ParamReader r("kexp", params, {"k", "r", "theta"});
    const auto v = su11_expectations(r.real("k", 0.25), r.real("r", 0.0), r.real("theta", 0.0));
    return {{"kind", kind}, {"K0", v(0)}, {"K-_re", v(1)}, {"K-_im", v(2)}};
  }
  throw InvalidArgument("unknown oracle kind '" + kind + "'");
}

}  // namespace liefock
