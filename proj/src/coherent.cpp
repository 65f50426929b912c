#include "liefock/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <thread>

#include "liefock/dynamics.hpp"
#include "liefock/errors.hpp"
#include "liefock/io.hpp"

namespace liefock {

namespace {

constexpr double kPi = std::numbers::pi;

cplx ipow(cplx z, int n) {
  cplx out(1.0);
  for (int k = 0; k < n; ++k) out *= z;
  return out;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void require_normalized(const Vector& v, const char* who) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw InvalidArgument(std::string(who) + ": state is not normalized");
}

bool single_mode(const FockBasis& b, ModeKind kind) {
  return b.mode_count() == 1 && b.mode(0).kind == kind && !b.constraint();
}

bool schwinger_pair(const FockBasis& b) {
  return b.mode_count() == 2 && b.mode(0).kind == ModeKind::boson && b.mode(1).kind == ModeKind::boson &&
         b.constraint().has_value();
}

double bessel_j(int l, double x) {
  const double v = std::cyl_bessel_j(static_cast<double>(std::abs(l)), x);
  return (l < 0 && (std::abs(l) % 2 == 1)) ? -v : v;
}

// exp(-i K) v for Hermitian K.
Vector unit_time_propagate(const Operator& k, const Vector& v) { return krylov_propagate(k, v, 1.0, 30, 1e-13); }

// Generator of a displacement as a Hermitian operator K = i (beta E - conj(beta) F).
Operator displacement_generator(const Operator& raise, const Operator& lower, cplx beta) {
  const Operator a = raise * beta - lower * std::conj(beta);
  Operator k = a * cplx(0.0, 1.0);
  if (!k.hermitian()) throw InvalidArgument("displace: root pair is not an adjoint pair");
  return k;
}

// Spin coherent amplitude on m (ground-truth expansion).
cplx spin_amplitude(double s, double m, double theta, double phi) {
  const int up = static_cast<int>(std::lround(s + m));
  const int down = static_cast<int>(std::lround(s - m));
  const double c = std::cos(0.5 * theta), sn = std::sin(0.5 * theta);
  const double binom = std::exp(0.5 * (log_factorial(up + down) - log_factorial(up) - log_factorial(down)));
  const double mag = binom * std::pow(c, up) * std::pow(sn, down);
  return std::polar(mag, -static_cast<double>(down) * phi);
}

Vector spin_state(const FockBasis& b, double theta, double phi) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b.size()));
  if (single_mode(b, ModeKind::spin)) {
    const double s = b.mode(0).spin();
    for (std::size_t i = 0; i < b.size(); ++i) v(static_cast<Eigen::Index>(i)) = spin_amplitude(s, b.state_at(i)[0] - s, theta, phi);
  } else if (schwinger_pair(b)) {
    const double s = 0.5 * *b.constraint();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& st = b.state_at(i);
      v(static_cast<Eigen::Index>(i)) = spin_amplitude(s, 0.5 * (st[0] - st[1]), theta, phi);
    }
  } else {
    throw InvalidArgument("spin coherent state needs a single spin mode or a two-mode boson sector");
  }
  return v;
}

Vector glauber_state(const FockBasis& b, cplx alpha) {
  if (!single_mode(b, ModeKind::boson)) throw InvalidArgument("displaced state needs a single boson mode");
  Vector v(static_cast<Eigen::Index>(b.size()));
  cplx c = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int n = b.state_at(i)[0];
    if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
    v(static_cast<Eigen::Index>(i)) = c;
  }
  return v;
}

Vector euclidean_state(const FockBasis& b, cplx beta) {
  if (!single_mode(b, ModeKind::spin) || b.mode(0).capacity % 2 != 0) {
    throw InvalidArgument("euclidean state needs a site chain with an odd number of sites");
  }
  const int centre = b.mode(0).capacity / 2;
  const double x = 2.0 * std::abs(beta), ph = std::arg(beta);
  Vector v(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int l = b.state_at(i)[0] - centre;
    v(static_cast<Eigen::Index>(i)) = std::polar(1.0, l * ph) * bessel_j(l, x);
  }
  return v;
}

// Perelomov su(1,1) state on the single-mode chain of index k: z = -zeta_d.
Vector disk_state(const FockBasis& b, double k, cplx zeta_d) {
  const int offset = k > 0.5 ? 1 : 0;
  const double rho2 = std::norm(zeta_d);
  const cplx z = -zeta_d;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b.size()));
  const double lead = std::pow(1.0 - rho2, k);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int n = b.state_at(i)[0];
    if ((n - offset) < 0 || (n - offset) % 2 != 0) continue;
    const int m = (n - offset) / 2;
    const double lg = std::lgamma(2.0 * k + m) - log_factorial(m) - std::lgamma(2.0 * k);
    v(static_cast<Eigen::Index>(i)) = lead * std::exp(0.5 * lg) * ipow(z, m);
  }
  return v;
}

Vector su3_state(const FockBasis& b, const std::array<cplx, 3>& zeta) {
  if (b.mode_count() != 3 || !b.constraint()) throw InvalidArgument("su3 coherent state needs a three-mode sector");
  const int n = *b.constraint();
  Vector v(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& st = b.state_at(i);
    const double lg = log_factorial(n) - log_factorial(st[0]) - log_factorial(st[1]) - log_factorial(st[2]);
    v(static_cast<Eigen::Index>(i)) =
        std::exp(0.5 * lg) * ipow(zeta[0], st[0]) * ipow(zeta[1], st[1]) * ipow(zeta[2], st[2]);
  }
  return v;
}

}  // namespace

std::string to_string(CoherentKind k) {
  switch (k) {
    case CoherentKind::displaced: return "displaced";
    case CoherentKind::spin: return "spin";
    case CoherentKind::squeezed: return "squeezed";
    case CoherentKind::su3: return "su3";
    case CoherentKind::euclidean: return "euclidean";
  }
  return "displaced";
}

CoherentKind coherent_kind_from_string(const std::string& name) {
  for (auto k : {CoherentKind::displaced, CoherentKind::spin, CoherentKind::squeezed, CoherentKind::su3,
                 CoherentKind::euclidean}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown coherent kind '" + name + "'");
}

CoherentParams CoherentParams::su3_angles(double theta1, double theta2, double phi1, double phi2) {
  const double half = 0.5 * kPi;
  if (theta1 < 0 || theta1 > half || theta2 < 0 || theta2 > half) throw InvalidArgument("su3 angles: theta outside [0, pi/2]");
  if (phi1 < 0 || phi1 >= 2 * kPi || phi2 < 0 || phi2 >= 2 * kPi) throw InvalidArgument("su3 angles: phi outside [0, 2pi)");
  CoherentParams p;
  p.kind = CoherentKind::su3;
  p.zeta = {cplx(std::cos(theta1)), std::polar(std::sin(theta1) * std::cos(theta2), phi1),
            std::polar(std::sin(theta1) * std::sin(theta2), phi2)};
  return p;
}

void CoherentParams::validate() const {
  switch (kind) {
    case CoherentKind::spin:
      if (theta < 0 || theta > kPi) throw InvalidArgument("spin coherent: theta outside [0, pi]");
      if (phi < 0 || phi >= 2 * kPi) throw InvalidArgument("spin coherent: phi outside [0, 2pi)");
      break;
    case CoherentKind::squeezed:
      if (r < 0) throw InvalidArgument("squeezed: r must be >= 0");
      if (k != 0.25 && k != 0.75) throw InvalidArgument("squeezed: k must be 1/4 or 3/4");
      break;
    case CoherentKind::su3: {
      const double n = std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]);
      if (std::abs(n - 1.0) > 1e-10) throw InvalidArgument("su3 coherent: |zeta|^2 must sum to 1");
      break;
    }
    default: break;
  }
}

double boundary_leakage(const AlgebraModel& model, const Vector& state) {
  if (model.interior.empty()) return 0.0;
  double out = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (!model.interior[static_cast<std::size_t>(i)]) out += std::norm(state(i));
  }
  return out;
}

Vector displace(const AlgebraModel& model, std::size_t pair, cplx beta, const Vector& state, double* leakage) {
  if (pair >= model.roots.size()) throw InvalidArgument("displace: root pair index out of range");
  if (state.size() != static_cast<Eigen::Index>(model.basis->size())) throw DimensionMismatch("displace: state length");
  require_normalized(state, "displace");
  const auto& rp = model.roots[pair];
  Vector out = state;
  if (beta != cplx(0.0)) {
    out = unit_time_propagate(displacement_generator(model.generators[rp.raise].op, model.generators[rp.lower].op, beta), state);
  }
  if (std::abs(out.norm() - 1.0) > kUnitarityTolerance) throw NumericContractError("displace: norm drift " + format_double(out.norm() - 1.0));
  if (leakage) *leakage = boundary_leakage(model, out);
  return out;
}

Vector displace(const AlgebraModel& model, const std::string& raise_label, cplx beta, const Vector& state,
                double* leakage) {
  const std::size_t g = model.index_of(raise_label);
  for (std::size_t p = 0; p < model.roots.size(); ++p) {
    if (model.roots[p].raise == g) return displace(model, p, beta, state, leakage);
  }
  throw InvalidArgument("displace: '" + raise_label + "' is not the raising member of a root pair");
}

DenseMatrix displacement_matrix(const AlgebraModel& model, std::size_t pair, cplx beta) {
  if (pair >= model.roots.size()) throw InvalidArgument("displacement_matrix: root pair index out of range");
  if (model.basis->size() > kDenseLimit) throw ResourceGuardError("displacement_matrix: dimension above the dense limit");
  const auto& rp = model.roots[pair];
  const Operator k = displacement_generator(model.generators[rp.raise].op, model.generators[rp.lower].op, beta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(k.dense());
  if (eig.info() != Eigen::Success) throw NumericContractError("displacement_matrix: eigensolver failed");
  Eigen::VectorXcd phases(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -eig.eigenvalues()(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Vector squeeze(const FockBasis& basis, cplx xi, const Vector& state) {
  if (!single_mode(basis, ModeKind::boson)) throw InvalidArgument("squeeze needs a single boson mode");
  const auto lp = ladder_ops(basis, 0);
  const Operator a2 = lp.lower * lp.lower, ad2 = lp.raise * lp.raise;
  // S(xi) = exp(-i K) with K = i (conj(xi) a^2 - xi adag^2) / 2.
  const Operator k = (a2 * std::conj(xi) - ad2 * xi) * cplx(0.0, 0.5);
  return unit_time_propagate(k, state);
}

Vector closed_form_state(const CoherentParams& params, const FockBasis& basis) {
  params.validate();
  Vector v;
  switch (params.kind) {
    case CoherentKind::displaced: v = glauber_state(basis, params.beta); break;
    case CoherentKind::spin: v = spin_state(basis, params.theta, params.phi); break;
    case CoherentKind::euclidean: v = euclidean_state(basis, params.beta); break;
    case CoherentKind::su3: v = su3_state(basis, params.zeta); break;
    case CoherentKind::squeezed: {
      if (!single_mode(basis, ModeKind::boson)) throw InvalidArgument("squeezed state needs a single boson mode");
      const cplx xi = std::polar(params.r, params.theta_s);
      if (params.k == 0.25) {
        v = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
        const cplx ratio = -std::polar(std::tanh(params.r), params.theta_s);
        cplx c = 1.0 / std::sqrt(std::cosh(params.r));
        for (int n = 0; 2 * n <= basis.mode(0).capacity; ++n) {
          if (n > 0) c *= ratio * std::sqrt((2.0 * n) * (2.0 * n - 1.0)) / (2.0 * n);
          v(static_cast<Eigen::Index>(basis.index_of({2 * n}))) = c;
        }
      } else {
        Vector one = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
        one(static_cast<Eigen::Index>(basis.index_of({1}))) = 1.0;
        v = squeeze(basis, xi, one);
      }
      break;
    }
  }
  const double n = v.norm();
  if (!(n > 0.0)) throw NumericContractError("closed_form_state: vanishing expansion on this basis");
  return v / n;
}

std::string to_string(PhaseSpace s) {
  switch (s) {
    case PhaseSpace::plane: return "plane";
    case PhaseSpace::sphere: return "sphere";
    case PhaseSpace::cylinder: return "cylinder";
    case PhaseSpace::disk: return "disk";
  }
  return "plane";
}

PhaseSpace phase_space_from_string(const std::string& name) {
  for (auto s : {PhaseSpace::plane, PhaseSpace::sphere, PhaseSpace::cylinder, PhaseSpace::disk}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown phase space '" + name + "' (expected plane, sphere, cylinder or disk)");
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
    weights[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

std::vector<double> trapezoid(double a, double b, int n) {
  std::vector<double> w(static_cast<std::size_t>(n), n > 1 ? (b - a) / (n - 1) : (b - a));
  if (n > 1) w.front() = w.back() = 0.5 * (b - a) / (n - 1);
  return w;
}

std::vector<double> periodic(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = 2.0 * kPi * i / n;
  return out;
}

void require_space(const AlgebraModel& model, PhaseSpace space) {
  const std::string& n = model.name;
  bool ok = false;
  switch (space) {
    case PhaseSpace::plane: ok = n == "hw"; break;
    case PhaseSpace::sphere: ok = n == "su2_spin" || n == "su2_schwinger"; break;
    case PhaseSpace::cylinder: ok = n == "e2"; break;
    case PhaseSpace::disk: ok = n == "su11_single"; break;
  }
  if (!ok) throw InvalidArgument("husimi: phase space '" + to_string(space) + "' does not match algebra '" + n + "'");
}

// Builds the grid geometry and returns the coherent state at node (i, j).
struct GridSetup {
  HusimiGrid grid;
  std::function<Vector(std::size_t, std::size_t)> state;
};

GridSetup setup(const AlgebraModel& model, const HusimiOptions& o) {
  require_space(model, o.space);
  if (o.n1 < 1 || o.n2 < 1) throw InvalidArgument("husimi: grid sizes must be positive");
  if (!(o.extent > 0.0)) throw InvalidArgument("husimi: extent must be positive");
  GridSetup s;
  HusimiGrid& g = s.grid;
  g.space = o.space;
  g.weights.resize(o.n1, o.n2);
  const FockBasis& b = *model.basis;
  switch (o.space) {
    case PhaseSpace::plane: {
      g.axis1 = linspace(-o.extent, o.extent, o.n1);
      g.axis2 = linspace(-o.extent, o.extent, o.n2);
      const auto w1 = trapezoid(-o.extent, o.extent, o.n1), w2 = trapezoid(-o.extent, o.extent, o.n2);
      for (int i = 0; i < o.n1; ++i)
        for (int j = 0; j < o.n2; ++j) g.weights(i, j) = 0.5 * w1[static_cast<std::size_t>(i)] * w2[static_cast<std::size_t>(j)];
      g.w = 1.0 / kPi;
      s.state = [&b, a1 = g.axis1, a2 = g.axis2](std::size_t i, std::size_t j) {
        return glauber_state(b, cplx(a1[i], a2[j]) / std::numbers::sqrt2);
      };
      break;
    }
    case PhaseSpace::sphere: {
      std::vector<double> x, wx;
      gauss_legendre(o.n1, x, wx);
      g.axis1.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) g.axis1[i] = std::acos(std::clamp(x[i], -1.0, 1.0));
      g.axis2 = periodic(o.n2);
      for (int i = 0; i < o.n1; ++i)
        for (int j = 0; j < o.n2; ++j) g.weights(i, j) = wx[static_cast<std::size_t>(i)] * 2.0 * kPi / o.n2;
      const double spin = model.name == "su2_spin" ? b.mode(0).spin() : 0.5 * *b.constraint();
      g.w = (2.0 * spin + 1.0) / (4.0 * kPi);
      s.state = [&b, a1 = g.axis1, a2 = g.axis2](std::size_t i, std::size_t j) { return spin_state(b, a1[i], a2[j]); };
      break;
    }
    case PhaseSpace::cylinder: {
      g.axis1 = periodic(o.n1);
      g.axis2 = linspace(0.0, o.extent, o.n2);
      const auto w2 = trapezoid(0.0, o.extent, o.n2);
      for (int i = 0; i < o.n1; ++i)
        for (int j = 0; j < o.n2; ++j)
          g.weights(i, j) = 2.0 * kPi / o.n1 * w2[static_cast<std::size_t>(j)] * g.axis2[static_cast<std::size_t>(j)];
      g.w = 1.0 / kPi;
      g.normalizable = false;
      s.state = [&b, a1 = g.axis1, a2 = g.axis2](std::size_t i, std::size_t j) {
        return euclidean_state(b, std::polar(a2[j], a1[i]));
      };
      break;
    }
    case PhaseSpace::disk: {
      if (o.extent >= 1.0) throw InvalidArgument("husimi: disk extent must be below 1");
      if (o.k != 0.25 && o.k != 0.75) throw InvalidArgument("husimi: disk k must be 1/4 or 3/4");
      g.axis1 = periodic(o.n1);
      g.axis2 = linspace(0.0, o.extent, o.n2);
      const auto w2 = trapezoid(0.0, o.extent, o.n2);
      for (int i = 0; i < o.n1; ++i) {
        for (int j = 0; j < o.n2; ++j) {
          const double rho = g.axis2[static_cast<std::size_t>(j)];
          g.weights(i, j) = 2.0 * kPi / o.n1 * w2[static_cast<std::size_t>(j)] * rho / std::pow(1.0 - rho * rho, 2);
        }
      }
      g.normalizable = o.k > 0.5;
      g.w = g.normalizable ? (2.0 * o.k - 1.0) / kPi : 1.0 / kPi;
      s.state = [&b, k = o.k, a1 = g.axis1, a2 = g.axis2](std::size_t i, std::size_t j) {
        return disk_state(b, k, std::polar(a2[j], a1[i]));
      };
      break;
    }
  }
  g.values.resize(o.n1, o.n2);
  return s;
}

template <class Eval>
HusimiGrid evaluate(const AlgebraModel& model, const HusimiOptions& o, Eval eval) {
  GridSetup s = setup(model, o);
  HusimiGrid& g = s.grid;
  const std::size_t rows = static_cast<std::size_t>(o.n1), cols = static_cast<std::size_t>(o.n2);
  auto work = [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        double q = g.w * eval(s.state(i, j));
        if (q < -1e-12) throw InvalidArgument("husimi: negative value " + format_double(q) + "; density is not positive");
        g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::max(q, 0.0);
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(o.threads, 1)), 1, rows);
  if (threads == 1) {
    work(0, rows);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(rows * t / threads, rows * (t + 1) / threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return g;
}

}  // namespace

HusimiGrid husimi(const AlgebraModel& model, const Vector& psi, const HusimiOptions& opts) {
  if (psi.size() != static_cast<Eigen::Index>(model.basis->size())) throw DimensionMismatch("husimi: state length");
  return evaluate(model, opts, [&psi](const Vector& c) { return std::norm(c.dot(psi)); });
}

HusimiGrid husimi(const AlgebraModel& model, const DenseMatrix& rho, const HusimiOptions& opts) {
  const auto n = static_cast<Eigen::Index>(model.basis->size());
  if (rho.rows() != n || rho.cols() != n) throw DimensionMismatch("husimi: density matrix shape");
  return evaluate(model, opts, [&rho](const Vector& c) { return c.dot(rho * c).real(); });
}

Uncertainty uncertainty(const Vector& psi, const Operator& a, const Operator& b) {
  if (a.dim() != psi.size() || b.dim() != psi.size()) throw DimensionMismatch("uncertainty: operator dimension");
  auto spread = [&psi](const Operator& op) {
    const Vector v = liefock::apply(op, psi);
    const double mean = psi.dot(v).real();
    return std::sqrt(std::max(v.squaredNorm() - mean * mean, 0.0));
  };
  const Vector ab = liefock::apply(a, liefock::apply(b, psi));
  const Vector ba = liefock::apply(b, liefock::apply(a, psi));
  return {spread(a) * spread(b), 0.5 * std::abs(psi.dot(ab - ba))};
}

double fsl_width(const AlgebraModel& model, const Vector& psi) {
  if (model.cartan.empty()) throw InvalidArgument("fsl_width: model has no Cartan generator");
  const Operator& h = model.generators[model.cartan.front()].op;
  if (h.dim() != psi.size()) throw DimensionMismatch("fsl_width: state length");
  double mean = 0.0, second = 0.0, total = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi(i)), x = h.coeff(i, i).real();
    total += p;
    mean += p * x;
    second += p * x * x;
  }
  mean /= total;
  return std::sqrt(std::max(second / total - mean * mean, 0.0));
}

}  // namespace liefock
