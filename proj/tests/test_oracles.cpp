#include <doctest.h>

#include <numbers>

#include "liefock/coherent.hpp"
#include "liefock/dynamics.hpp"
#include "liefock/errors.hpp"
#include "liefock/hamiltonians.hpp"
#include "liefock/oracles.hpp"

using namespace liefock;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Bloch closed form") {
  const BlochSample b0 = bloch(0.3, 0.7, 4.0, 0.0);
  CHECK(b0.sz == doctest::Approx(4.0));
  CHECK(std::abs(b0.sx) < 1e-15);
  CHECK(b0.omega == doctest::Approx(std::sqrt(0.09 + 4 * 0.49)));
  // Full period returns to the pole.
  CHECK(bloch(0.3, 0.7, 4.0, 2 * kPi / b0.omega).sz == doctest::Approx(4.0));
  const BlochSample h = bloch(0.0, 1.0, 2.0, kPi / 4);
  CHECK(h.sz == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::norm(h.a) + std::norm(h.b) == doctest::Approx(4.0));
}

TEST_CASE("squeezing solution") {
  SUBCASE("vacuum at t = 0") {
    const SqueezeSample s = SqueezeSolution(2.0, 1.0).at(0.0);
    CHECK(s.r == 0.0);
    CHECK(s.mean_n == 0.0);
  }
  SUBCASE("stable regime peaks at a quarter period") {
    const SqueezeSolution sol(2.0, 1.0);
    CHECK(sol.regime() == SqueezeRegime::stable);
    CHECK(sol.rate() == doctest::Approx(std::sqrt(3.0)));
    const SqueezeSample s = sol.at(0.5 * kPi / sol.rate());
    CHECK(s.mean_n == doctest::Approx(1.0 / 3.0));
    CHECK(s.var_n == doctest::Approx(2 * s.mean_n * (s.mean_n + 1)));
    CHECK(sol.at(kPi / sol.rate()).mean_n == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("unstable regime grows monotonically") {
    const SqueezeSolution sol(1.0, 2.0);
    CHECK(sol.regime() == SqueezeRegime::unstable);
    double last = -1.0;
    for (int k = 0; k <= 20; ++k) {
      const double n = sol.at(0.1 * k).mean_n;
      CHECK(n > last);
      last = n;
    }
    CHECK(SqueezeSolution(1.0, 1.0).regime() == SqueezeRegime::critical);
    CHECK(SqueezeSolution(1.0, 1.0).at(2.0).mean_n == doctest::Approx(4.0));
  }
  SUBCASE("closed form state matches numerical evolution") {
    const cplx xi = std::polar(1.0, 0.6);
    const double omega = 2.0;
    const auto mh = named_hamiltonian("squeeze", {{"cutoff", 160}, {"omega", omega}, {"xi_re", xi.real()}, {"xi_im", xi.imag()}});
    Vector vac = Vector::Zero(161);
    vac(0) = 1.0;
    const SqueezeSolution sol(omega, xi);
    for (double t : {0.3, 0.9, 1.7}) {
      const auto res = evolve(mh.h, vac, {t});
      const SqueezeSample s = sol.at(t);
      const Vector predicted = std::polar(1.0, s.chi) * squeeze(*mh.model.basis, std::polar(s.r, s.theta), vac);
      CHECK((predicted - res.snapshots[0]).norm() < 1e-8);
    }
  }
}

TEST_CASE("so5 single-particle energies") {
  SUBCASE("closed form at phi = pi") {
    const So5Singles s = so5_singles(1.0, 1.0, kPi);
    REQUIRE(s.closed_form.has_value());
    const double a = std::sqrt(2.0);
    CHECK((*s.closed_form - Eigen::Vector4d(-a, -a, a, a)).norm() < 1e-12);
    // The four-mode hopping matrix itself has levels +-1, +-sqrt5 here.
    const double b = std::sqrt(5.0);
    CHECK((s.hamiltonian - Eigen::Vector4d(-b, -1, 1, b)).norm() < 1e-12);
    CHECK((s.hamiltonian - *s.closed_form).cwiseAbs().maxCoeff() > 0.5);
    CHECK(so5_hopping_matrix(1.0, 1.0, kPi).isApprox(so5_hopping_matrix(1.0, 1.0, kPi).adjoint()));
  }
  SUBCASE("all three disagree at phi = 0") {
    const So5Singles s = so5_singles(1.0, 1.0, 0.0);
    REQUIRE(s.closed_form.has_value());
    CHECK((*s.closed_form - Eigen::Vector4d(-2, 0, 0, 2)).norm() < 1e-12);
    CHECK((s.printed - *s.closed_form).cwiseAbs().maxCoeff() > 0.5);
    // Complete graph K4.
    CHECK((s.hamiltonian - Eigen::Vector4d(-1, -1, -1, 3)).norm() < 1e-12);
  }
  SUBCASE("unequal couplings have no closed form") {
    CHECK_FALSE(so5_singles(1.0, 0.5, 0.3).closed_form.has_value());
  }
  SUBCASE("J2 = 0 decouples into two dimers") {
    const So5Singles s = so5_singles(1.0, 0.0, 0.7);
    CHECK((s.hamiltonian - Eigen::Vector4d(-1, -1, 1, 1)).norm() < 1e-12);
  }
  SUBCASE("many-body multiset against the hopping Hamiltonian") {
    const auto mh = named_hamiltonian("so5", {{"N", 3}, {"phi", 0.9}});
    const Eigen::VectorXd ev = spectrum(mh.h);
    const auto predicted = so5_manybody(so5_singles(1.0, 1.0, 0.9).hamiltonian, 3);
    REQUIRE(predicted.size() == static_cast<std::size_t>(ev.size()));
    for (std::size_t i = 0; i < predicted.size(); ++i) CHECK(std::abs(predicted[i] - ev(static_cast<Eigen::Index>(i))) < 1e-10);
  }
}

TEST_CASE("so5 revival period") {
  const auto r = so5_revival(kPi, 1.0);
  REQUIRE(r.has_value());
  CHECK(r->m == 1);
  CHECK(r->n == 1);
  CHECK(r->period == doctest::Approx(kPi * std::sqrt(2.0)));
  CHECK(so5_revival(0.0, 1.0) == std::nullopt);
  CHECK(so5_revival(2.0, 1.0) == std::nullopt);
}

TEST_CASE("ladders and bands") {
  const auto w = wannier_stark_ladder(0.5, -2, 2);
  REQUIRE(w.size() == 5u);
  CHECK(w.front() == doctest::Approx(-1.0));
  CHECK(w.back() == doctest::Approx(1.0));
  CHECK(band_energy(0.5, 0.0) == doctest::Approx(1.0));
  CHECK(band_energy(0.5, std::numbers::pi) == doctest::Approx(-1.0));
  CHECK(band_energy(0.5, kPi / 2) == doctest::Approx(0.0).epsilon(1e-12));
  const auto d = driven_oscillator_levels(1.0, 0.5, 3);
  CHECK(d[0] == doctest::Approx(-0.25));
  CHECK(d[3] == doctest::Approx(2.75));
  CHECK_THROWS_AS(driven_oscillator_levels(0.0, 0.5, 3), SingularParameter);
  CHECK(su2_hopping(4, 2, 1.0) == doctest::Approx(std::sqrt(6.0)));
  CHECK(su2_hopping(4, 0, 1.0) == doctest::Approx(2.0));
  CHECK(spin_pcs_width(3.0, kPi / 2) == doctest::Approx(std::sqrt(1.5)));
  const Eigen::Vector3d k = su11_expectations(0.25, 0.5, 0.0);
  CHECK(k(0) == doctest::Approx(0.25 * std::cosh(1.0)));
  CHECK(k(2) == doctest::Approx(0.0));
}

TEST_CASE("su(1,1) expectations on a displaced state") {
  const auto m = build_algebra("su11_single", {{"cutoff", 200}});
  Vector vac = Vector::Zero(static_cast<Eigen::Index>(m.basis->size()));
  vac(0) = 1.0;
  const double r = 0.6, theta = 0.8;
  const Vector psi = squeeze(*m.basis, std::polar(r, theta), vac);
  const Eigen::Vector3d k = su11_expectations(0.25, r, theta);
  CHECK(expectation(psi, m.op("K0")).real() == doctest::Approx(k(0)).epsilon(1e-10));
  const cplx km = expectation(psi, m.op("K-"));
  CHECK(std::abs(std::abs(km) - std::hypot(k(1), k(2))) < 1e-10);
}

TEST_CASE("quadratic spectrum counts") {
  Eigen::VectorXd e(2);
  e << -1.0, 1.0;
  const auto v = quadratic_spectrum(e, 4);
  REQUIRE(v.size() == 5u);
  CHECK(v.front() == doctest::Approx(-4.0));
  CHECK(v.back() == doctest::Approx(4.0));
}

TEST_CASE("oracle dispatcher") {
  for (const auto& kind : oracle_kinds()) {
    CAPTURE(kind);
    const auto j = oracle_values(kind, {});
    CHECK(j.is_object());
    CHECK_FALSE(j.empty());
  }
  CHECK_THROWS_AS(oracle_values("nope", {}), InvalidArgument);
  CHECK_THROWS_AS(oracle_values("bloch", {{"bogus", 1.0}}), InvalidArgument);
}
