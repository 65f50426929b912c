#ifndef LIEFOCK_OPERATORS_HPP
#define LIEFOCK_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <json.hpp>

#include "liefock/errors.hpp"
#include "liefock/fock.hpp"

namespace liefock {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

enum class Grade { even, odd };

inline Grade operator^(Grade a, Grade b) { return a == b ? Grade::even : Grade::odd; }
inline std::string to_string(Grade g) { return g == Grade::even ? "even" : "odd"; }

// Entries below this fraction of the largest magnitude are dropped.
inline constexpr double kDropTolerance = 1e-14;
inline constexpr double kHermitianTolerance = 1e-12;

// Sparse operator over a finite basis with a parity grade. Immutable after
// construction: every arithmetic operation returns a new operator.
template <typename Scalar>
class BasicOperator {
 public:
  using Matrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;

  BasicOperator() = default;
  explicit BasicOperator(Matrix m, Grade grade = Grade::even) : m_(std::move(m)), grade_(grade) {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("operator matrix must be square");
    drop_small();
    hermitian_ = check_hermitian();
  }

  static BasicOperator zero(Eigen::Index dim, Grade grade = Grade::even) {
    return BasicOperator(Matrix(dim, dim), grade);
  }
  static BasicOperator identity(Eigen::Index dim) {
    Matrix m(dim, dim);
    m.setIdentity();
    return BasicOperator(std::move(m));
  }
  static BasicOperator from_triplets(Eigen::Index dim, const std::vector<Eigen::Triplet<Scalar>>& t,
                                     Grade grade = Grade::even) {
    Matrix m(dim, dim);
    m.setFromTriplets(t.begin(), t.end());
    return BasicOperator(std::move(m), grade);
  }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Grade grade() const { return grade_; }
  bool hermitian() const { return hermitian_; }
  bool is_zero() const { return m_.nonZeros() == 0; }

  Real max_abs() const {
    Real best = 0;
    for (Eigen::Index k = 0; k < m_.outerSize(); ++k) {
      for (typename Matrix::InnerIterator it(m_, k); it; ++it) best = std::max<Real>(best, std::abs(it.value()));
    }
    return best;
  }
  Real frobenius() const { return m_.norm(); }

  Scalar coeff(Eigen::Index r, Eigen::Index c) const { return m_.coeff(r, c); }

  BasicOperator adjoint() const { return BasicOperator(Matrix(m_.adjoint()), grade_); }
  BasicOperator with_grade(Grade g) const { return BasicOperator(m_, g); }

  DenseMatrix dense() const { return DenseMatrix(m_.template cast<cplx>()); }

  friend BasicOperator operator+(const BasicOperator& a, const BasicOperator& b) {
    check_same(a, b, "+");
    if (a.grade_ != b.grade_ && !a.is_zero() && !b.is_zero()) {
      throw InvalidArgument("cannot add operators of different grade");
    }
    return BasicOperator(Matrix(a.m_ + b.m_), a.is_zero() ? b.grade_ : a.grade_);
  }
  friend BasicOperator operator-(const BasicOperator& a, const BasicOperator& b) {
    return a + b * Scalar(-1);
  }
  friend BasicOperator operator*(const BasicOperator& a, Scalar s) {
    return BasicOperator(Matrix(a.m_ * s), a.grade_);
  }
  friend BasicOperator operator*(Scalar s, const BasicOperator& a) { return a * s; }
  friend BasicOperator operator*(const BasicOperator& a, const BasicOperator& b) {
    check_same(a, b, "*");
    return BasicOperator(Matrix(a.m_ * b.m_), a.grade_ ^ b.grade_);
  }

  static void check_same(const BasicOperator& a, const BasicOperator& b, const char* op) {
    if (a.dim() != b.dim()) {
      throw DimensionMismatch(std::string("operator ") + op + ": dimension " + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()));
    }
  }

 private:
  void drop_small() {
    const Real scale = max_abs();
    if (scale == Real(0)) {
      m_.data().squeeze();
      m_.makeCompressed();
      return;
    }
    const Real cut = Real(kDropTolerance) * scale;
    m_.prune([cut](Eigen::Index, Eigen::Index, const Scalar& v) { return std::abs(v) > cut; });
    m_.makeCompressed();
  }

  bool check_hermitian() const {
    const Real scale = max_abs();
    if (scale == Real(0)) return true;
    Matrix diff = m_ - Matrix(m_.adjoint());
    Real worst = 0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
      for (typename Matrix::InnerIterator it(diff, k); it; ++it) worst = std::max<Real>(worst, std::abs(it.value()));
    }
    return worst < Real(kHermitianTolerance) * scale;
  }

  Matrix m_;
  Grade grade_ = Grade::even;
  bool hermitian_ = true;
};

using Operator = BasicOperator<cplx>;

// [A, B} : anticommutator when both operands are odd, commutator otherwise.
template <typename Scalar>
BasicOperator<Scalar> graded_commutator(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  BasicOperator<Scalar>::check_same(a, b, "graded_commutator");
  using M = typename BasicOperator<Scalar>::Matrix;
  const M ab = a.matrix() * b.matrix();
  const M ba = b.matrix() * a.matrix();
  const bool both_odd = a.grade() == Grade::odd && b.grade() == Grade::odd;
  return BasicOperator<Scalar>(both_odd ? M(ab + ba) : M(ab - ba), a.grade() ^ b.grade());
}

template <typename Scalar>
BasicOperator<Scalar> commutator(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  BasicOperator<Scalar>::check_same(a, b, "commutator");
  using M = typename BasicOperator<Scalar>::Matrix;
  return BasicOperator<Scalar>(M(a.matrix() * b.matrix() - b.matrix() * a.matrix()), a.grade() ^ b.grade());
}

template <typename Scalar>
BasicOperator<Scalar> anticommutator(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  BasicOperator<Scalar>::check_same(a, b, "anticommutator");
  using M = typename BasicOperator<Scalar>::Matrix;
  return BasicOperator<Scalar>(M(a.matrix() * b.matrix() + b.matrix() * a.matrix()), a.grade() ^ b.grade());
}

// Trace inner product tr(A^dagger B).
template <typename Scalar>
Scalar trace_inner(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  BasicOperator<Scalar>::check_same(a, b, "trace_inner");
  return a.matrix().conjugate().cwiseProduct(b.matrix()).sum();
}

// Exact sparse matrix-vector product.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply(const BasicOperator<Scalar>& a, const Eigen::MatrixBase<Derived>& v) {
  if (v.size() != a.dim()) {
    throw DimensionMismatch("apply: vector length " + std::to_string(v.size()) + " vs operator dim " +
                            std::to_string(a.dim()));
  }
  return a.matrix() * v;
}

// Keep rows and columns flagged in `keep` and zero the rest. An empty mask keeps everything.
template <typename Scalar>
BasicOperator<Scalar> restrict_to(const BasicOperator<Scalar>& a, const std::vector<bool>& keep) {
  if (keep.empty()) return a;
  if (static_cast<Eigen::Index>(keep.size()) != a.dim()) throw DimensionMismatch("restrict_to: mask size");
  typename BasicOperator<Scalar>::Matrix m = a.matrix();
  m.prune([&keep](Eigen::Index r, Eigen::Index c, const Scalar&) {
    return keep[static_cast<std::size_t>(r)] && keep[static_cast<std::size_t>(c)];
  });
  return BasicOperator<Scalar>(std::move(m), a.grade());
}

template <typename Scalar>
typename BasicOperator<Scalar>::Real hermiticity_defect(const BasicOperator<Scalar>& a) {
  return (a.dense() - a.dense().adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Builders over a Fock basis.

struct Ladder {
  std::size_t mode;
  bool dagger;
};

// Product of ladder operators, rightmost factor acting first, evaluated on
// each basis state. Intermediate boson occupations are not cut off; only the
// final state must lie in the basis. Fermion signs follow `order`
// (defaults to the basis fermion order). Spin ladders are S+/S-.
Operator monomial(const FockBasis& basis, std::span<const Ladder> factors,
                  const std::vector<std::size_t>* fermion_order = nullptr);

struct LadderPair {
  Operator lower;
  Operator raise;
};

// lower/raise operators for one mode. For fermions `order` lists the
// Jordan-Wigner mode order and must contain `mode`.
LadderPair ladder_ops(const FockBasis& basis, std::size_t mode,
                      std::optional<std::vector<std::size_t>> order = std::nullopt);

Operator number_op(const FockBasis& basis, std::size_t mode);
// m = level - S on a spin mode.
Operator spin_z(const FockBasis& basis, std::size_t mode);
Operator identity_op(const FockBasis& basis);
// a_i^dagger a_j evaluated directly on the basis.
Operator hop(const FockBasis& basis, std::size_t to, std::size_t from);
Operator diagonal_op(const FockBasis& basis, const std::vector<double>& diag);

nlohmann::json to_json(const Operator& op);
Operator operator_from_json(const nlohmann::json& j);

}  // namespace liefock

#endif  // LIEFOCK_OPERATORS_HPP
