#include "liefock/operators.hpp"

#include <algorithm>

namespace liefock {

namespace {

struct Amplitude {
  BasisState state;
  cplx value;
};

// Acts with one ladder factor in place; returns false when the result vanishes.
bool act(const FockBasis& basis, const Ladder& f, const std::vector<std::size_t>& order, Amplitude& amp) {
  const ModeSpec& mode = basis.mode(f.mode);
  int& n = amp.state[f.mode];
  switch (mode.kind) {
    case ModeKind::boson:
      if (f.dagger) {
        amp.value *= std::sqrt(static_cast<double>(n + 1));
        ++n;
      } else {
        if (n == 0) return false;
        amp.value *= std::sqrt(static_cast<double>(n));
        --n;
      }
      return true;
    case ModeKind::fermion: {
      if (f.dagger ? n == 1 : n == 0) return false;
      int occupied_before = 0;
      for (std::size_t m : order) {
        if (m == f.mode) break;
        occupied_before += amp.state[m];
      }
      if (occupied_before % 2) amp.value = -amp.value;
      n = f.dagger ? 1 : 0;
      return true;
    }
    case ModeKind::spin: {
      const double s = mode.spin();
      const double m = n - s;
      if (f.dagger) {
        if (n == mode.capacity) return false;
        amp.value *= std::sqrt(s * (s + 1) - m * (m + 1));
        ++n;
      } else {
        if (n == 0) return false;
        amp.value *= std::sqrt(s * (s + 1) - m * (m - 1));
        --n;
      }
      return true;
    }
  }
  return false;
}

bool grade_is_odd(const FockBasis& basis, std::span<const Ladder> factors) {
  int fermionic = 0;
  for (const auto& f : factors) fermionic += basis.mode(f.mode).kind == ModeKind::fermion ? 1 : 0;
  return fermionic % 2 == 1;
}

void check_mode(const FockBasis& basis, std::size_t mode) {
  if (mode >= basis.mode_count()) {
    throw InvalidArgument("mode index " + std::to_string(mode) + " out of range (basis has " +
                          std::to_string(basis.mode_count()) + " modes)");
  }
}

}  // namespace

Operator monomial(const FockBasis& basis, std::span<const Ladder> factors,
                  const std::vector<std::size_t>* fermion_order) {
  for (const auto& f : factors) check_mode(basis, f.mode);
  const auto& order = fermion_order ? *fermion_order : basis.fermion_order();
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    Amplitude amp{basis.state_at(col), cplx(1.0)};
    bool alive = true;
    for (auto it = factors.rbegin(); it != factors.rend() && alive; ++it) alive = act(basis, *it, order, amp);
    if (!alive) continue;
    const auto& modes = basis.modes();
    bool in_range = true;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      if (amp.state[m] < 0 || amp.state[m] > modes[m].capacity) in_range = false;
    }
    if (!in_range) continue;
    if (auto row = basis.find(amp.state)) {
      triplets.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col), amp.value);
    }
  }
  return Operator::from_triplets(static_cast<Eigen::Index>(basis.size()), triplets,
                                 grade_is_odd(basis, factors) ? Grade::odd : Grade::even);
}

LadderPair ladder_ops(const FockBasis& basis, std::size_t mode, std::optional<std::vector<std::size_t>> order) {
  check_mode(basis, mode);
  const std::vector<std::size_t>* jw = nullptr;
  if (basis.mode(mode).kind == ModeKind::fermion) {
    const auto& declared = order ? *order : basis.fermion_order();
    if (std::find(declared.begin(), declared.end(), mode) == declared.end()) {
      throw InvalidArgument("ladder_ops: fermion mode " + std::to_string(mode) +
                            " is missing from the declared Jordan-Wigner order");
    }
    if (order) jw = &*order;
  }
  const Ladder lower_f[] = {{mode, false}};
  Operator lower = monomial(basis, lower_f, jw);
  // raise is built as the exact adjoint so the involution is structural.
  Operator raise = lower.adjoint();
  return {std::move(lower), std::move(raise)};
}

Operator number_op(const FockBasis& basis, std::size_t mode) {
  check_mode(basis, mode);
  std::vector<double> diag(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) diag[i] = basis.state_at(i)[mode];
  return diagonal_op(basis, diag);
}

Operator spin_z(const FockBasis& basis, std::size_t mode) {
  check_mode(basis, mode);
  if (basis.mode(mode).kind != ModeKind::spin) throw InvalidArgument("spin_z: mode is not a spin");
  const double s = basis.mode(mode).spin();
  std::vector<double> diag(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) diag[i] = basis.state_at(i)[mode] - s;
  return diagonal_op(basis, diag);
}

Operator identity_op(const FockBasis& basis) { return Operator::identity(static_cast<Eigen::Index>(basis.size())); }

Operator hop(const FockBasis& basis, std::size_t to, std::size_t from) {
  const Ladder f[] = {{to, true}, {from, false}};
  return monomial(basis, f);
}

Operator diagonal_op(const FockBasis& basis, const std::vector<double>& diag) {
  if (diag.size() != basis.size()) throw DimensionMismatch("diagonal_op: length mismatch");
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] != 0.0) t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), diag[i]);
  }
  return Operator::from_triplets(static_cast<Eigen::Index>(basis.size()), t);
}

nlohmann::json to_json(const Operator& op) {
  nlohmann::json entries = nlohmann::json::array();
  const auto& m = op.matrix();
  // Row-major storage iterates (r, c) in sorted order.
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (Operator::Matrix::InnerIterator it(m, r); it; ++it) {
      entries.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
    }
  }
  return {{"dim", op.dim()}, {"hermitian", op.hermitian()}, {"grade", to_string(op.grade())}, {"entries", entries}};
}

Operator operator_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const std::string grade = j.at("grade").get<std::string>();
  if (grade != "even" && grade != "odd") throw InvalidArgument("operator json: grade must be even|odd");
  std::vector<Eigen::Triplet<cplx>> t;
  for (const auto& e : j.at("entries")) {
    t.emplace_back(e.at(0).get<Eigen::Index>(), e.at(1).get<Eigen::Index>(),
                   cplx(e.at(2).get<double>(), e.at(3).get<double>()));
  }
  return Operator::from_triplets(dim, t, grade == "odd" ? Grade::odd : Grade::even);
}

}  // namespace liefock
