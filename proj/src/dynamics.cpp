#include "liefock/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "liefock/errors.hpp"
#include "liefock/io.hpp"

namespace liefock {

std::string to_string(Method m) {
  switch (m) {
    case Method::dense_eig: return "dense_eig";
    case Method::krylov: return "krylov";
    case Method::automatic: return "auto";
  }
  return "auto";
}

Method method_from_string(const std::string& name) {
  if (name == "dense_eig") return Method::dense_eig;
  if (name == "krylov") return Method::krylov;
  if (name == "auto") return Method::automatic;
  throw InvalidArgument("unknown method '" + name + "' (expected dense_eig, krylov or auto)");
}

namespace {

void require_hermitian(const Operator& h, const char* who) {
  if (!h.hermitian()) {
    throw NotHermitian(std::string(who) + ": operator is not Hermitian (defect " + format_double(hermiticity_defect(h)) + ")");
  }
}

void require_dense_size(const Operator& h, const char* who) {
  if (static_cast<std::size_t>(h.dim()) > kDenseLimit) {
    throw ResourceGuardError(std::string(who) + ": dimension " + std::to_string(h.dim()) +
                             " exceeds the dense limit " + std::to_string(kDenseLimit) + "; use krylov");
  }
}

}  // namespace

DensePropagator::DensePropagator(const Operator& h) : solver_(h.dense()) {
  if (solver_.info() != Eigen::Success) throw NumericContractError("dense eigendecomposition failed");
}

Vector DensePropagator::apply(const Vector& psi, double t) const {
  const Vector c = solver_.eigenvectors().adjoint() * psi;
  Vector phased(c.size());
  for (Eigen::Index k = 0; k < c.size(); ++k) phased(k) = c(k) * std::polar(1.0, -solver_.eigenvalues()(k) * t);
  return solver_.eigenvectors() * phased;
}

Vector krylov_propagate(const Operator& h, const Vector& v0, double t, int krylov_dim, double tol) {
  if (krylov_dim < 2) throw InvalidArgument("krylov_propagate: subspace size must be >= 2");
  Vector v = v0;
  double remaining = t;
  const double sign = t < 0 ? -1.0 : 1.0;
  remaining = std::abs(remaining);
  const Eigen::Index n = h.dim();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(krylov_dim, n));
  Eigen::MatrixXcd basis(n, m_max + 1);
  double tau = remaining;
  while (remaining > 0.0) {
    const double beta = v.norm();
    if (beta == 0.0) return v;
    basis.col(0) = v / beta;
    std::vector<double> alpha, offdiag;
    int m = 0;
    bool exhausted = false;
    double next_beta = 0.0;
    for (int j = 0; j < m_max; ++j) {
      Vector w = h.matrix() * basis.col(j);
      const double a = basis.col(j).dot(w).real();
      // Full reorthogonalization against every stored vector, twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k <= j; ++k) w -= basis.col(k) * basis.col(k).dot(w);
      }
      alpha.push_back(a);
      m = j + 1;
      const double b = w.norm();
      if (b < 1e-13 * std::max(1.0, std::abs(a))) {
        exhausted = true;
        next_beta = 0.0;
        break;
      }
      if (j + 1 < m_max) offdiag.push_back(b);
      next_beta = b;
      basis.col(j + 1) = w / b;
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) tri(j, j) = alpha[j];
    for (int j = 0; j + 1 < m; ++j) tri(j, j + 1) = tri(j + 1, j) = offdiag[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    auto small_exp = [&](double step) {
      Eigen::VectorXcd first = eig.eigenvectors().row(0).transpose().cast<cplx>();
      for (int k = 0; k < m; ++k) first(k) *= std::polar(1.0, -sign * eig.eigenvalues()(k) * step);
      return Eigen::VectorXcd(eig.eigenvectors().cast<cplx>() * first);
    };
    tau = std::min(tau * 2.0, remaining);
    Eigen::VectorXcd y;
    while (true) {
      y = small_exp(tau);
      const double err = exhausted ? 0.0 : beta * next_beta * std::abs(y(m - 1));
      if (err <= tol) break;
      tau *= 0.5;
      if (tau < 1e-14 * std::max(1.0, remaining)) throw NumericContractError("krylov: step size underflow");
    }
    v = basis.leftCols(m) * (y * beta);
    remaining -= tau;
    if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
  }
  return v;
}

EvolutionResult evolve(const Operator& h, const Vector& psi0, const std::vector<double>& times, Method method,
                       const EvolutionOptions& opts) {
  require_hermitian(h, "evolve");
  if (psi0.size() != h.dim()) throw DimensionMismatch("evolve: initial state length does not match the operator");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw InvalidArgument("evolve: initial state is not normalized");
  if (times.empty()) throw InvalidArgument("evolve: empty time grid");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("evolve: time grid must be strictly increasing");
  }
  if (method == Method::automatic) {
    method = static_cast<std::size_t>(h.dim()) <= kAutoDenseLimit ? Method::dense_eig : Method::krylov;
  }
  EvolutionResult res;
  res.method = method;
  res.times = times;
  res.populations.resize(static_cast<Eigen::Index>(times.size()), h.dim());
  auto record = [&](std::size_t k, const Vector& psi) {
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) >= kUnitarityTolerance) {
      throw NumericContractError("evolve: unitarity breach at t=" + format_double(times[k]) + " (norm " +
                                 format_double(norm) + ")");
    }
    res.norms.push_back(norm);
    res.populations.row(static_cast<Eigen::Index>(k)) = psi.cwiseAbs2().transpose();
    if (opts.store_snapshots) res.snapshots.push_back(psi);
  };
  if (method == Method::dense_eig) {
    require_dense_size(h, "evolve");
    const DensePropagator prop(h);
    for (std::size_t k = 0; k < times.size(); ++k) record(k, prop.apply(psi0, times[k]));
  } else {
    Vector psi = psi0;
    double t_prev = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (times[k] != t_prev) psi = krylov_propagate(h, psi, times[k] - t_prev, opts.krylov_dim, opts.krylov_tol);
      t_prev = times[k];
      record(k, psi);
    }
  }
  return res;
}

Eigen::VectorXd spectrum(const Operator& h) {
  require_hermitian(h, "spectrum");
  require_dense_size(h, "spectrum");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericContractError("spectrum: eigensolver failed");
  return solver.eigenvalues();
}

std::optional<double> commensurate_gap(const Eigen::VectorXd& ev, double tol) {
  if (ev.size() < 2) return std::nullopt;
  std::vector<double> distinct;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (distinct.empty() || ev(k) - distinct.back() > tol) distinct.push_back(ev(k));
  }
  if (distinct.size() < 2) return std::nullopt;
  double g = distinct[1] - distinct[0];
  for (std::size_t k = 2; k < distinct.size(); ++k) g = std::min(g, distinct[k] - distinct[k - 1]);
  for (double e : distinct) {
    const double q = (e - distinct.front()) / g;
    if (std::abs(q - std::round(q)) > tol * std::max(1.0, q)) return std::nullopt;
  }
  return g;
}

cplx expectation(const Vector& psi, const Operator& op) { return psi.dot(liefock::apply(op, psi)); }

std::vector<double> fidelity_series(const EvolutionResult& result, const Vector& psi0) {
  if (!result.has_snapshots()) throw InvalidArgument("fidelity unavailable: result stores populations only");
  std::vector<double> out;
  out.reserve(result.snapshots.size());
  for (const auto& s : result.snapshots) out.push_back(std::norm(psi0.dot(s)));
  return out;
}

RevivalReport detect_revivals(const EvolutionResult& result, const Vector& psi0, double threshold,
                              std::optional<double> refractory) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("detect_revivals: threshold must lie in (0, 1]");
  const auto f = fidelity_series(result, psi0);
  const auto& t = result.times;
  RevivalReport rep;
  rep.threshold = threshold;
  rep.refractory = refractory ? *refractory : 0.05 * (t.back() - t.front());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const bool left = k == 0 || f[k] >= f[k - 1];
    const bool right = k + 1 == f.size() || f[k] >= f[k + 1];
    if (!(left && right) || f[k] < threshold) continue;
    if (t[k] - t.front() < rep.refractory) continue;
    if (!rep.revival_times.empty() && t[k] - rep.revival_times.back() < rep.refractory) {
      if (f[k] > rep.fidelities.back()) {
        rep.revival_times.back() = t[k];
        rep.fidelities.back() = f[k];
      }
      continue;
    }
    rep.revival_times.push_back(t[k]);
    rep.fidelities.push_back(f[k]);
  }
  return rep;
}

std::vector<cplx> expectation_series(const EvolutionResult& result, const Operator& op) {
  if (!result.has_snapshots()) throw InvalidArgument("expectation_series: result stores populations only");
  std::vector<cplx> out;
  out.reserve(result.snapshots.size());
  for (const auto& s : result.snapshots) out.push_back(expectation(s, op));
  return out;
}

}  // namespace liefock
