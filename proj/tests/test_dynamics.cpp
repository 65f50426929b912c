#include <doctest.h>

#include <numbers>

#include "liefock/dynamics.hpp"
#include "liefock/errors.hpp"
#include "liefock/hamiltonians.hpp"
#include "liefock/oracles.hpp"

using namespace liefock;

namespace {

constexpr double kPi = std::numbers::pi;

Vector unit(const FockBasis& b, const BasisState& s) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b.size()));
  v(static_cast<Eigen::Index>(b.index_of(s))) = 1.0;
  return v;
}

std::vector<double> grid(double stop, int steps) {
  std::vector<double> t;
  for (int k = 0; k <= steps; ++k) t.push_back(stop * k / steps);
  return t;
}

}  // namespace

TEST_CASE("zero Hamiltonian leaves the state alone") {
  const auto m = build_algebra("hw", {{"cutoff", 6}});
  Vector psi = Vector::Random(7);
  psi.normalize();
  for (Method method : {Method::dense_eig, Method::krylov}) {
    const auto res = evolve(Operator::zero(7), psi, {0.0, 1.0, 5.0}, method);
    for (const auto& s : res.snapshots) CHECK((s - psi).norm() < 1e-14);
  }
}

TEST_CASE("two-mode chain N=50 transfers and returns") {
  const auto mh = named_hamiltonian("two_mode", {{"N", 50}, {"J0", 1.0}});
  const Vector psi0 = unit(*mh.model.basis, {50, 0});
  const auto res = evolve(mh.h, psi0, {0.5 * kPi, kPi});
  CHECK(res.populations(0, static_cast<Eigen::Index>(mh.model.basis->index_of({0, 50}))) > 1 - 1e-8);
  CHECK(res.populations(1, static_cast<Eigen::Index>(mh.model.basis->index_of({50, 0}))) > 1 - 1e-8);
  for (double n : res.norms) CHECK(std::abs(n - 1.0) < kUnitarityTolerance);
}

TEST_CASE("spectra") {
  SUBCASE("equally spaced two-mode spectrum") {
    const Eigen::VectorXd ev = spectrum(named_hamiltonian("two_mode", {{"N", 4}}).h);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(ev(i) - (2.0 * i - 4.0)) < 1e-10);
    CHECK(commensurate_gap(ev) == doctest::Approx(2.0));
  }
  SUBCASE("driven oscillator converges across cutoffs") {
    const Eigen::VectorXd e60 = spectrum(named_hamiltonian("driven_oscillator", {{"cutoff", 60}}).h);
    const Eigen::VectorXd e120 = spectrum(named_hamiltonian("driven_oscillator", {{"cutoff", 120}}).h);
    for (int n = 0; n <= 20; ++n) {
      CHECK(std::abs(e60(n) - (n - 0.25)) < 1e-8);
      CHECK(std::abs(e60(n) - e120(n)) < 1e-8);
    }
  }
  SUBCASE("Wannier-Stark interior ladder at L=41") {
    const Eigen::VectorXd e41 = spectrum(named_hamiltonian("wannier_stark", {{"L", 41}, {"J", 0.3}}).h);
    const Eigen::VectorXd e81 = spectrum(named_hamiltonian("wannier_stark", {{"L", 81}, {"J", 0.3}}).h);
    for (int i = 10; i <= 30; ++i) {
      CHECK(std::abs(e41(i) - (i - 20)) < 1e-6);
      CHECK(std::abs(e41(i) - e81(i + 20)) < 1e-6);
    }
  }
  SUBCASE("non-Hermitian input") {
    const auto m = build_algebra("hw", {{"cutoff", 4}});
    CHECK_THROWS_AS(spectrum(m.op("a")), NotHermitian);
    CHECK_THROWS_AS(evolve(m.op("a"), unit(*m.basis, {0}), {1.0}), NotHermitian);
  }
  SUBCASE("incommensurate spectrum has no common gap") {
    Eigen::VectorXd ev(3);
    ev << 0.0, 1.0, std::sqrt(2.0);
    CHECK_FALSE(commensurate_gap(ev).has_value());
  }
}

TEST_CASE("revival detection") {
  SUBCASE("su(2) chain revives at pi") {
    const auto mh = named_hamiltonian("spin_hop", {{"S", 5}});
    const Vector psi0 = unit(*mh.model.basis, {10});
    const auto res = evolve(mh.h, psi0, grid(1.5 * kPi, 300));
    const auto rep = detect_revivals(res, psi0);
    REQUIRE_FALSE(rep.revival_times.empty());
    CHECK(rep.revival_times[0] == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(rep.fidelities[0] > 1 - 1e-8);
  }
  SUBCASE("Wannier-Stark revives at multiples of 2 pi") {
    const auto mh = named_hamiltonian("wannier_stark", {{"L", 41}, {"J", 0.3}});
    const Vector psi0 = unit(*mh.model.basis, {20});
    const auto res = evolve(mh.h, psi0, grid(4.5 * kPi, 450));
    const auto rep = detect_revivals(res, psi0, 0.999);
    REQUIRE(rep.revival_times.size() == 2u);
    CHECK(rep.revival_times[0] == doctest::Approx(2 * kPi));
    CHECK(rep.revival_times[1] == doctest::Approx(4 * kPi));
    for (std::size_t k = 1; k < rep.revival_times.size(); ++k) {
      CHECK(rep.revival_times[k] - rep.revival_times[k - 1] >= rep.refractory);
    }
  }
  SUBCASE("equidistant spectrum implies revival at 2 pi / gap") {
    const auto mh = named_hamiltonian("bloch", {{"S", 3}, {"delta", 0.6}, {"J", 0.4}});
    const Eigen::VectorXd ev = spectrum(mh.h);
    const auto gap = commensurate_gap(ev);
    REQUIRE(gap.has_value());
    Vector psi0 = Vector::Random(static_cast<Eigen::Index>(mh.model.basis->size()));
    psi0.normalize();
    const auto res = evolve(mh.h, psi0, {2 * kPi / *gap});
    CHECK(std::norm(psi0.dot(res.snapshots[0])) > 1 - 1e-6);
  }
  SUBCASE("populations-only results cannot report fidelity") {
    const auto mh = named_hamiltonian("spin_hop", {{"S", 1}});
    EvolutionOptions eo;
    eo.store_snapshots = false;
    const Vector psi0 = unit(*mh.model.basis, {2});
    const auto res = evolve(mh.h, psi0, {0.0, 1.0, 2.0}, Method::automatic, eo);
    CHECK_FALSE(res.has_snapshots());
    CHECK(res.populations.rows() == 3);
    CHECK_THROWS_AS(detect_revivals(res, psi0), InvalidArgument);
    CHECK_THROWS_AS(expectation_series(res, mh.h), InvalidArgument);
  }
}

TEST_CASE("dense and krylov agree") {
  for (const std::string name : {"three_mode", "so5"}) {
    const auto mh = named_hamiltonian(name, {{"N", 6}, {"phi", 0.8}});
    REQUIRE(mh.model.basis->size() <= 1000u);
    const Vector psi0 = unit(*mh.model.basis, mh.model.basis->state_at(mh.model.basis->size() / 2));
    const auto t = grid(2.0, 10);
    const auto d = evolve(mh.h, psi0, t, Method::dense_eig);
    const auto k = evolve(mh.h, psi0, t, Method::krylov);
    CHECK(k.method == Method::krylov);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK((d.snapshots[i] - k.snapshots[i]).norm() < 1e-8);
  }
}

TEST_CASE("energy conservation and conserved observables") {
  const auto mh = named_hamiltonian("three_mode", {{"N", 5}, {"phi", 0.4}});
  Vector psi0 = Vector::Random(static_cast<Eigen::Index>(mh.model.basis->size()));
  psi0.normalize();
  for (Method method : {Method::dense_eig, Method::krylov}) {
    const auto res = evolve(mh.h, psi0, grid(3.0, 12), method);
    const auto e = expectation_series(res, mh.h);
    for (const auto& x : e) CHECK(std::abs(x - e[0]) < 1e-9 * std::max(1.0, std::abs(e[0])));
    const auto n = expectation_series(res, mh.model.casimirs[0].op);
    for (const auto& x : n) CHECK(std::abs(x - n[0]) < 1e-10);
  }
}

TEST_CASE("Bloch precession matches the closed form") {
  const double delta = 1.0, j = 1.0, s = 5.0;
  const auto mh = named_hamiltonian("bloch", {{"S", s}, {"delta", delta}, {"J", j}});
  const Vector psi0 = unit(*mh.model.basis, {10});
  const auto t = grid(3.0, 30);
  const auto res = evolve(mh.h, psi0, t);
  const Operator sx = (mh.model.op("S+") + mh.model.op("S-")) * cplx(0.5);
  const Operator sy = (mh.model.op("S+") - mh.model.op("S-")) * cplx(0.0, -0.5);
  const auto ez = expectation_series(res, mh.model.op("Sz"));
  const auto ex = expectation_series(res, sx);
  const auto ey = expectation_series(res, sy);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const BlochSample b = bloch(delta, j, s, t[k]);
    CHECK(std::abs(ez[k].real() - b.sz) < 1e-9);
    CHECK(std::abs(ex[k].real() - b.sx) < 1e-9);
    CHECK(std::abs(ey[k].real() - b.sy) < 1e-9);
    CHECK(std::abs(std::norm(ex[k]) + std::norm(ey[k]) + std::norm(ez[k]) - s * s) < 1e-9);
  }
  const BlochSample at = bloch(delta, j, s, 0.7);
  const auto one = evolve(mh.h, psi0, {0.7});
  CHECK(std::abs(expectation(one.snapshots[0], mh.model.op("Sz")).real() - at.sz) < 1e-9);
}

TEST_CASE("squeezing from vacuum follows the oscillator formula") {
  const auto mh = named_hamiltonian("squeeze", {{"cutoff", 200}, {"omega", 2.0}, {"xi_re", 1.0}});
  const Vector vac = unit(*mh.model.basis, {0});
  const double big = std::sqrt(3.0);
  const auto t = grid(3 * kPi / big, 60);
  const auto res = evolve(mh.h, vac, t);
  const Operator n = number_op(*mh.model.basis, 0);
  const auto en = expectation_series(res, n);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double s = std::sin(big * t[k]);
    CHECK(std::abs(en[k].real() - s * s / 3.0) < 1e-6);
    CHECK(en[k].real() >= -1e-14);
  }
}

TEST_CASE("evolution guards") {
  const auto m = build_algebra("hw", {{"cutoff", 4}});
  const Vector psi = unit(*m.basis, {0});
  CHECK_THROWS_AS(evolve(m.op("n"), psi, {}), InvalidArgument);
  CHECK_THROWS_AS(evolve(m.op("n"), psi, {1.0, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(evolve(m.op("n"), Vector::Zero(3), {1.0}), DimensionMismatch);
  CHECK_THROWS_AS(evolve(m.op("n"), Vector(psi * 2.0), {1.0}), InvalidArgument);
  const FockBasis big(std::vector<ModeSpec>(3, ModeSpec::boson(100)), 100);
  REQUIRE(big.size() > kDenseLimit);
  const Operator h = hop(big, 0, 1) + hop(big, 1, 0);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(big.size()));
  v(0) = 1.0;
  CHECK_THROWS_AS(evolve(h, v, {0.1}, Method::dense_eig), ResourceGuardError);
  const auto res = evolve(h, v, {0.1}, Method::automatic);
  CHECK(res.method == Method::krylov);
  CHECK(method_from_string("krylov") == Method::krylov);
  CHECK_THROWS_AS(method_from_string("rk4"), InvalidArgument);
}
