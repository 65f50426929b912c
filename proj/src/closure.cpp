#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "liefock/algebra.hpp"
#include "liefock/errors.hpp"

namespace liefock {

namespace {

Operator bracket(const Operator& a, const Operator& b, bool graded) {
  return graded ? graded_commutator(a, b) : commutator(a, b);
}

void check_common_dim(const std::vector<Generator>& gens, const char* what) {
  for (const auto& g : gens) {
    if (g.op.dim() != gens.front().op.dim()) {
      throw DimensionMismatch(std::string(what) + ": generator '" + g.label + "' lives on a different basis");
    }
  }
}

}  // namespace

StructureConstants extract_structure_constants(const std::vector<Generator>& gens, bool graded,
                                               const std::vector<bool>& mask) {
  if (gens.size() < 2) throw InvalidArgument("extract_structure_constants: need at least two generators");
  check_common_dim(gens, "extract_structure_constants");
  const std::size_t n = gens.size();
  std::vector<Operator> masked;
  masked.reserve(n);
  for (const auto& g : gens) masked.push_back(restrict_to(g.op, mask));

  Eigen::MatrixXcd gram(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      gram(a, b) = trace_inner(masked[a], masked[b]);
      gram(b, a) = std::conj(gram(a, b));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();
  const double lmin = lambda.minCoeff();
  if (lmax <= 0.0 || lmin <= lmax / kGramConditionLimit) {
    std::string labels;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      if (lambda(k) > lmax / kGramConditionLimit) continue;
      for (std::size_t a = 0; a < n; ++a) {
        if (std::abs(eig.eigenvectors()(static_cast<Eigen::Index>(a), k)) > 1e-6) {
          if (labels.find("'" + gens[a].label + "'") == std::string::npos) labels += " '" + gens[a].label + "'";
        }
      }
    }
    throw DegenerateGenerators("linearly dependent generators (Gram condition above 1e12):" + labels);
  }
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > kPinvCutoff * lmax) inv(k) = 1.0 / lambda(k);
  }
  const Eigen::MatrixXcd pinv = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().adjoint();

  StructureConstants sc;
  sc.n = n;
  sc.f.assign(n * n * n, cplx(0.0));
  sc.residual.assign(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Operator c = restrict_to(bracket(gens[a].op, gens[b].op, graded), mask);
      const double cnorm = c.frobenius();
      const double scale = masked[a].frobenius() * masked[b].frobenius();
      if (cnorm <= 1e-14 * std::max(scale, 1.0)) continue;
      Eigen::VectorXcd rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs(static_cast<Eigen::Index>(k)) = trace_inner(masked[k], c);
      const Eigen::VectorXcd coef = pinv * rhs;
      Operator::Matrix rest = c.matrix();
      for (std::size_t k = 0; k < n; ++k) rest -= masked[k].matrix() * coef(static_cast<Eigen::Index>(k));
      sc.residual[a * n + b] = rest.norm() / cnorm;
      for (std::size_t k = 0; k < n; ++k) sc.f[(a * n + b) * n + k] = cplx(0.0, -1.0) * coef(static_cast<Eigen::Index>(k));
    }
  }
  sc.max_residual = *std::max_element(sc.residual.begin(), sc.residual.end());
  sc.closed = sc.max_residual < kClosureResidual;
  return sc;
}

ClosureReport lie_closure(const std::vector<Generator>& seed, std::size_t cap, bool graded,
                          const std::vector<bool>& mask) {
  if (seed.empty()) throw InvalidArgument("lie_closure: empty seed");
  if (cap < seed.size()) {
    throw InvalidArgument("lie_closure: cap " + std::to_string(cap) + " is smaller than the seed size " +
                          std::to_string(seed.size()));
  }
  check_common_dim(seed, "lie_closure");

  std::vector<Operator> ops;
  std::vector<std::string> labels;
  std::vector<Operator::Matrix> ortho;
  ClosureReport rep;
  rep.cap = cap;

  // Modified Gram-Schmidt, applied twice, in the interior metric.
  // `scale` is the size of the operands; a bracket that is only rounding
  // noise relative to it is not a new direction.
  auto try_add = [&](const Operator& full, const std::string& label, double scale) {
    Operator::Matrix r = restrict_to(full, mask).matrix();
    const double n0 = r.norm();
    if (n0 == 0.0 || n0 <= kIndependenceThreshold * scale) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho) {
        const cplx c = q.conjugate().cwiseProduct(r).sum();
        r -= q * c;
      }
    }
    const double n1 = r.norm();
    if (n1 <= kIndependenceThreshold * n0) return false;
    r /= cplx(n1);
    r.prune(cplx(0.0), 1e-300);
    ortho.push_back(std::move(r));
    ops.push_back(full);
    labels.push_back(label);
    return true;
  };

  std::vector<double> norms;
  for (const auto& g : seed) {
    if (try_add(g.op, g.label, 0.0)) norms.push_back(restrict_to(g.op, mask).frobenius());
  }
  rep.iterations.push_back(ops.size());
  std::size_t swept = 0;
  while (true) {
    const std::size_t count = ops.size();
    bool grew = false;
    for (std::size_t j = swept; j < count && ops.size() <= cap; ++j) {
      for (std::size_t i = 0; i <= j && ops.size() <= cap; ++i) {
        const bool both_odd = ops[i].grade() == Grade::odd && ops[j].grade() == Grade::odd;
        if (i == j && !(graded && both_odd)) continue;
        const std::string label = "[" + labels[i] + ", " + labels[j] + (graded && both_odd ? "}" : "]");
        if (try_add(bracket(ops[i], ops[j], graded), label, norms[i] * norms[j])) {
          norms.push_back(restrict_to(ops.back(), mask).frobenius());
          rep.added_labels.push_back(label);
          grew = true;
        }
      }
    }
    swept = count;
    rep.iterations.push_back(ops.size());
    if (ops.size() > cap) {
      rep.closed = false;
      break;
    }
    if (!grew) {
      rep.closed = true;
      break;
    }
  }
  rep.dim = ops.size();
  rep.basis.reserve(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) rep.basis.push_back({labels[k], ops[k]});
  return rep;
}

double verify_casimir(const Operator& op, const AlgebraModel& model) {
  const auto& mask = model.interior;
  const double on = restrict_to(op, mask).frobenius();
  if (on == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& g : model.generators) {
    Operator::check_same(op, g.op, "verify_casimir");
    const double gn = restrict_to(g.op, mask).frobenius();
    if (gn == 0.0) continue;
    worst = std::max(worst, restrict_to(commutator(op, g.op), mask).frobenius() / (on * gn));
  }
  return worst;
}

std::vector<Vector> find_reference_states(const AlgebraModel& model) {
  const auto& basis = *model.basis;
  const std::size_t dim = basis.size();
  std::vector<Eigen::Index> cols;
  for (std::size_t i = 0; i < dim; ++i) {
    if (model.interior.empty() || model.interior[i]) cols.push_back(static_cast<Eigen::Index>(i));
  }
  if (cols.size() > 4096) {
    throw ResourceGuardError("find_reference_states: " + std::to_string(cols.size()) +
                             " interior states exceed the dense limit 4096");
  }
  const auto k = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(k, k);
  for (const auto& rp : model.roots) {
    const std::size_t gi = model.reference_side == ReferenceSide::raising ? rp.raise : rp.lower;
    const DenseMatrix e = model.generators[gi].op.dense();
    Eigen::MatrixXcd sub(e.rows(), k);
    for (Eigen::Index c = 0; c < k; ++c) sub.col(c) = e.col(cols[static_cast<std::size_t>(c)]);
    gram.noalias() += sub.adjoint() * sub;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const double lmax = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Vector> out;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (eig.eigenvalues()(j) > 1e-10 * lmax) continue;
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (Eigen::Index c = 0; c < k; ++c) v(cols[static_cast<std::size_t>(c)]) = eig.eigenvectors()(c, j);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v *= std::conj(v(peak)) / std::abs(v(peak));
    out.push_back(v.normalized());
  }
  std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& b) {
    Eigen::Index pa = 0, pb = 0;
    a.cwiseAbs().maxCoeff(&pa);
    b.cwiseAbs().maxCoeff(&pb);
    return pa < pb;
  });
  return out;
}

}  // namespace liefock
