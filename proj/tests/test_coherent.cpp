#include <doctest.h>

#include <numbers>
#include <random>

#include "liefock/coherent.hpp"
#include "liefock/dynamics.hpp"
#include "liefock/errors.hpp"

using namespace liefock;

namespace {

constexpr double kPi = std::numbers::pi;

Vector unit(const FockBasis& b, const BasisState& s) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b.size()));
  v(static_cast<Eigen::Index>(b.index_of(s))) = 1.0;
  return v;
}

// Distance up to a global phase.
double phase_distance(const Vector& a, const Vector& b) {
  const cplx ov = a.dot(b);
  const cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return (a * ph - b).norm();
}

double lgamma_ratio_sqrt(double k, int m) {
  return std::exp(0.5 * (std::lgamma(2 * k + m) - std::lgamma(m + 1.0) - std::lgamma(2 * k)));
}

CoherentParams spin(double theta, double phi) {
  CoherentParams c;
  c.kind = CoherentKind::spin;
  c.theta = theta;
  c.phi = phi;
  return c;
}

}  // namespace

TEST_CASE("zero displacement is the identity") {
  const auto m = build_algebra("hw", {{"cutoff", 10}});
  const Vector v = unit(*m.basis, {3});
  CHECK((displace(m, "adag", 0.0, v) - v).norm() < 1e-14);
}

TEST_CASE("hw displacement gives Glauber amplitudes") {
  const auto m = build_algebra("hw", {{"cutoff", 60}});
  const cplx beta(0.9, -0.4);
  double leak = -1.0;
  const Vector psi = displace(m, "adag", beta, unit(*m.basis, {0}), &leak);
  CHECK(leak >= 0.0);
  CHECK(leak < kLeakageWarning);
  double worst = 0.0;
  double log_fact = 0.0;
  for (int n = 0; n < 30; ++n) {
    if (n > 0) log_fact += std::log(n);
    const cplx expected = std::exp(-0.5 * std::norm(beta) - 0.5 * log_fact) * std::pow(beta, n);
    worst = std::max(worst, std::abs(psi(n) - expected));
  }
  CHECK(worst < 1e-10);
  CoherentParams c;
  c.beta = beta;
  CHECK((closed_form_state(c, *m.basis) - psi).norm() < 1e-8);
}

TEST_CASE("leakage is reported near the cutoff") {
  const auto m = build_algebra("hw", {{"cutoff", 12}});
  double leak = 0.0;
  displace(m, "adag", 2.5, unit(*m.basis, {0}), &leak);
  CHECK(leak > kLeakageWarning);
}

TEST_CASE("e2 displacement matches Bessel amplitudes and the closed form") {
  const auto m = build_algebra("e2", {{"L", 61}});
  const cplx beta = std::polar(1.5, -0.6);
  const Vector psi = displace(m, "E+", beta, unit(*m.basis, {30}));
  for (int l = -10; l <= 10; ++l) {
    const double jl = std::cyl_bessel_j(std::abs(l), 3.0) * ((l < 0 && l % 2) ? -1.0 : 1.0);
    CHECK(std::abs(psi(30 + l) - jl * std::polar(1.0, l * std::arg(beta))) < 1e-10);
  }
  CoherentParams c;
  c.kind = CoherentKind::euclidean;
  c.beta = beta;
  CHECK((closed_form_state(c, *m.basis) - psi).norm() < 1e-8);
}

TEST_CASE("spin displacement reproduces the spin coherent expansion") {
  const auto m = build_algebra("su2_spin", {{"S", 3}});
  const Vector top = unit(*m.basis, {6});
  for (double theta : {0.0, 0.4, 1.7, kPi}) {
    for (double phi : {0.0, 1.1, 4.0}) {
      const Vector numeric = displace(m, "S+", -0.5 * theta * std::polar(1.0, phi), top);
      CHECK(phase_distance(numeric, closed_form_state(spin(theta, phi), *m.basis)) < 1e-8);
    }
  }
  CHECK(phase_distance(closed_form_state(spin(0.0, 0.0), *m.basis), top) < 1e-15);
}

TEST_CASE("spin coherent state on a Schwinger sector") {
  const auto m = build_algebra("su2_schwinger", {{"N", 6}});
  const Vector psi = closed_form_state(spin(0.8, 0.3), *m.basis);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK(fsl_width(m, psi) == doctest::Approx(std::sqrt(1.5) * std::sin(0.8)).epsilon(1e-10));
}

TEST_CASE("su(1,1) displacement equals squeezing with xi = -beta") {
  for (double k : {0.25, 0.75}) {
    const auto m = build_algebra("su11_single", {{"k", k}, {"cutoff", 200}});
    const Vector ref = unit(*m.basis, {k == 0.25 ? 0 : 1});
    const cplx beta = std::polar(0.6, 0.9);
    const Vector d = displace(m, "K+", beta, ref);
    CHECK((squeeze(*m.basis, -beta, ref) - d).norm() < 1e-8);
    CoherentParams c;
    c.kind = CoherentKind::squeezed;
    c.k = k;
    c.r = std::abs(beta);
    c.theta_s = std::arg(-beta);
    CHECK(phase_distance(closed_form_state(c, *m.basis), d) < 1e-8);
  }
}

TEST_CASE("closed-form states") {
  SUBCASE("squeezed vacuum weight on |0>") {
    const FockBasis b({ModeSpec::boson(200)}, {});
    CoherentParams c;
    c.kind = CoherentKind::squeezed;
    c.r = 0.5;
    const Vector psi = closed_form_state(c, b);
    CHECK(std::norm(psi(0)) == doctest::Approx(0.886819).epsilon(1e-6));
    CHECK(std::abs(std::norm(psi(0)) - 1.0 / std::cosh(0.5)) < 1e-10);
    for (Eigen::Index n = 1; n < psi.size(); n += 2) CHECK(std::abs(psi(n)) == 0.0);
  }
  SUBCASE("Perelomov series for the even chain") {
    const FockBasis b({ModeSpec::boson(120)}, {});
    CoherentParams c;
    c.kind = CoherentKind::squeezed;
    c.r = 0.7;
    c.theta_s = 0.4;
    const Vector psi = closed_form_state(c, b);
    const double rho = std::tanh(c.r);
    const cplx z = -std::polar(rho, c.theta_s);
    for (int m = 0; m < 20; ++m) {
      const cplx expected = std::pow(1 - rho * rho, 0.25) * lgamma_ratio_sqrt(0.25, m) * std::pow(z, m);
      CHECK(std::abs(std::abs(psi(2 * m)) - std::abs(expected)) < 1e-10);
    }
  }
  SUBCASE("su3 along the first mode") {
    const FockBasis b(std::vector<ModeSpec>(3, ModeSpec::boson(4)), 4);
    CoherentParams c;
    c.kind = CoherentKind::su3;
    const Vector psi = closed_form_state(c, b);
    CHECK(std::abs(psi(static_cast<Eigen::Index>(b.index_of({4, 0, 0})))) == doctest::Approx(1.0));
    const auto a = CoherentParams::su3_angles(0.7, 0.3, 1.0, 2.0);
    const Vector q = closed_form_state(a, b);
    CHECK(q.norm() == doctest::Approx(1.0));
    // Multinomial oracle for |2,1,1>.
    const cplx ex = std::sqrt(12.0) * a.zeta[0] * a.zeta[0] * a.zeta[1] * a.zeta[2];
    CHECK(std::abs(q(static_cast<Eigen::Index>(b.index_of({2, 1, 1}))) - ex) < 1e-12);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(spin(-0.1, 0.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(spin(0.1, 2 * kPi).validate(), InvalidArgument);
    CHECK_THROWS_AS(CoherentParams::su3_angles(2.0, 0.0, 0.0, 0.0), InvalidArgument);
    CoherentParams z;
    z.kind = CoherentKind::su3;
    z.zeta = {cplx(1.0), cplx(1.0), cplx(0.0)};
    CHECK_THROWS_AS(z.validate(), InvalidArgument);
    CoherentParams sq;
    sq.kind = CoherentKind::squeezed;
    sq.k = 0.5;
    CHECK_THROWS_AS(sq.validate(), InvalidArgument);
    CHECK_THROWS_AS(closed_form_state(spin(0.2, 0.0), FockBasis({ModeSpec::boson(3)}, {})), InvalidArgument);
  }
}

TEST_CASE("plane Husimi") {
  const auto m = build_algebra("hw", {{"cutoff", 60}});
  HusimiOptions ho;
  ho.n1 = 81;
  ho.n2 = 81;
  ho.extent = 6.0;
  const HusimiGrid vac = husimi(m, unit(*m.basis, {0}), ho);
  CHECK(vac.values(40, 40) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(vac.integral() == doctest::Approx(1.0).epsilon(1e-6));
  const cplx a0(0.8, -0.5);
  CoherentParams c;
  c.beta = a0;
  const HusimiGrid g = husimi(m, closed_form_state(c, *m.basis), ho);
  double worst = 0.0;
  for (int i = 0; i < ho.n1; i += 7) {
    for (int j = 0; j < ho.n2; j += 7) {
      const cplx alpha(g.axis1[static_cast<std::size_t>(i)] / std::sqrt(2.0), g.axis2[static_cast<std::size_t>(j)] / std::sqrt(2.0));
      worst = std::max(worst, std::abs(g.values(i, j) - std::exp(-std::norm(alpha - a0)) / kPi));
    }
  }
  CHECK(worst < 1e-10);
  CHECK(g.values.minCoeff() >= 0.0);
}

TEST_CASE("sphere Husimi normalization") {
  const auto m = build_algebra("su2_spin", {{"S", 50}});
  std::mt19937 rng(3);
  std::normal_distribution<double> n;
  Vector psi(static_cast<Eigen::Index>(m.basis->size()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = cplx(n(rng), n(rng));
  psi.normalize();
  HusimiOptions ho;
  ho.space = PhaseSpace::sphere;
  ho.n1 = 200;
  ho.n2 = 200;
  ho.threads = 4;
  const HusimiGrid g = husimi(m, psi, ho);
  CHECK(g.w == doctest::Approx(101.0 / (4 * kPi)));
  CHECK(std::abs(g.integral() - 1.0) < 1e-6);
  CHECK(g.weights.sum() == doctest::Approx(4 * kPi).epsilon(1e-10));
  // Thread count does not change values.
  ho.threads = 1;
  CHECK((husimi(m, psi, ho).values - g.values).cwiseAbs().maxCoeff() == 0.0);
  // Density matrix form agrees with the pure state.
  const DenseMatrix rho = psi * psi.adjoint();
  ho.n1 = 20;
  ho.n2 = 20;
  CHECK((husimi(m, rho, ho).values - husimi(m, psi, ho).values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("disk and cylinder Husimi") {
  SUBCASE("k = 3/4 is normalizable on the disk") {
    const auto m = build_algebra("su11_single", {{"k", 0.75}, {"cutoff", 300}});
    HusimiOptions ho;
    ho.space = PhaseSpace::disk;
    ho.k = 0.75;
    ho.n1 = 400;
    ho.n2 = 64;
    ho.extent = 0.999;
    const Vector psi = displace(m, "K+", 0.3, unit(*m.basis, {1}));
    const HusimiGrid g = husimi(m, psi, ho);
    CHECK(g.normalizable);
    CHECK(g.w == doctest::Approx(0.5 / kPi));
    CHECK(g.values.minCoeff() >= 0.0);
  }
  SUBCASE("k = 1/4 is not") {
    const auto m = build_algebra("su11_single", {{"cutoff", 100}});
    HusimiOptions ho;
    ho.space = PhaseSpace::disk;
    ho.n1 = 20;
    ho.n2 = 20;
    ho.extent = 0.9;
    CHECK_FALSE(husimi(m, unit(*m.basis, {0}), ho).normalizable);
  }
  SUBCASE("cylinder") {
    const auto m = build_algebra("e2", {{"L", 41}});
    HusimiOptions ho;
    ho.space = PhaseSpace::cylinder;
    ho.n1 = 16;
    ho.n2 = 16;
    ho.extent = 3.0;
    const HusimiGrid g = husimi(m, unit(*m.basis, {20}), ho);
    CHECK_FALSE(g.normalizable);
    CHECK(g.values.maxCoeff() > 0.0);
  }
  SUBCASE("mismatched manifold") {
    const auto m = build_algebra("hw", {{"cutoff", 10}});
    HusimiOptions ho;
    ho.space = PhaseSpace::sphere;
    CHECK_THROWS_AS(husimi(m, unit(*m.basis, {0}), ho), InvalidArgument);
  }
}

TEST_CASE("Bessel resolution integral grows with the radius") {
  // int_0^R J_m(2r)^2 r dr ~ R / (2 pi): the diagonal does not settle at 1/2.
  auto integral = [](int m, int n, double r_max) {
    const int steps = static_cast<int>(r_max * 200);
    double s = 0.0;
    for (int i = 1; i <= steps; ++i) {
      const double r0 = r_max * (i - 1) / steps, r1 = r_max * i / steps;
      auto f = [&](double r) { return std::cyl_bessel_j(m, 2 * r) * std::cyl_bessel_j(n, 2 * r) * r; };
      s += 0.5 * (f(r0) + f(r1)) * (r1 - r0);
    }
    return s;
  };
  const double d200 = integral(1, 1, 200.0), d400 = integral(1, 1, 400.0);
  CHECK(d400 / d200 == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(integral(1, 2, 200.0)) < 1.0);
}

TEST_CASE("uncertainty relations") {
  const auto m = build_algebra("hw", {{"cutoff", 120}});
  const Operator x = (m.op("a") + m.op("adag")) * cplx(1 / std::sqrt(2.0));
  const Operator p = (m.op("a") - m.op("adag")) * cplx(0.0, 1 / std::sqrt(2.0));
  for (int n = 0; n < 5; ++n) {
    const Uncertainty u = uncertainty(unit(*m.basis, {n}), x, p);
    CHECK(u.bound == doctest::Approx(0.5));
    CHECK(u.product == doctest::Approx(n + 0.5));
  }
  CoherentParams c;
  c.kind = CoherentKind::squeezed;
  c.r = 0.4;
  const Vector sq = closed_form_state(c, *m.basis);
  const auto var = [&](const Operator& op) {
    const double mean = expectation(sq, op).real();
    return expectation(sq, op * op).real() - mean * mean;
  };
  CHECK(var(x) == doctest::Approx(0.5 * (std::cosh(0.8) - std::sinh(0.8))).epsilon(1e-10));
  CHECK(var(p) == doctest::Approx(0.5 * (std::cosh(0.8) + std::sinh(0.8))).epsilon(1e-10));

  const auto s = build_algebra("su2_spin", {{"S", 7}});
  const Operator sx = (s.op("S+") + s.op("S-")) * cplx(0.5);
  const Operator sy = (s.op("S+") - s.op("S-")) * cplx(0.0, -0.5);
  const Uncertainty pole = uncertainty(closed_form_state(spin(0.0, 0.0), *s.basis), sx, sy);
  CHECK(pole.product == doctest::Approx(3.5));
  CHECK(std::abs(pole.product - pole.bound) < 1e-10);
}

TEST_CASE("su(1,1) orbit has half the oscillator period") {
  const auto m = build_algebra("su11_single", {{"cutoff", 200}});
  const Vector psi = displace(m, "K+", std::polar(0.5, 0.3), unit(*m.basis, {0}));
  const Operator n = number_op(*m.basis, 0);
  const auto res = evolve(n, psi, {kPi, 2 * kPi});
  const cplx k0 = expectation(psi, m.op("K-"));
  CHECK(std::abs(expectation(res.snapshots[0], m.op("K-")) - k0) < 1e-10);

  const auto hw = build_algebra("hw", {{"cutoff", 60}});
  CoherentParams c;
  c.beta = 0.7;
  const Vector coh = closed_form_state(c, *hw.basis);
  const auto r2 = evolve(hw.op("n"), coh, {kPi, 2 * kPi});
  const cplx a0 = expectation(coh, hw.op("a"));
  CHECK(std::abs(expectation(r2.snapshots[0], hw.op("a")) + a0) < 1e-10);
  CHECK(std::abs(expectation(r2.snapshots[1], hw.op("a")) - a0) < 1e-10);
}

TEST_CASE("displacement composition as operators") {
  const auto m = build_algebra("hw", {{"cutoff", 80}, {"window", 40}});
  const cplx a(0.4, 0.2), b(-0.3, 0.5);
  const DenseMatrix lhs = displacement_matrix(m, 0, a) * displacement_matrix(m, 0, b);
  const DenseMatrix rhs = std::polar(1.0, std::imag(a * std::conj(b))) * displacement_matrix(m, 0, a + b);
  // Compare on the low-occupation block, well away from the cutoff.
  CHECK((lhs - rhs).topLeftCorner(30, 30).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("parabolic surface helper") {
  CHECK(parabolic_surface(0.0, 0.0) == doctest::Approx(0.5));
  CHECK(parabolic_surface(1.0, 2.0) == doctest::Approx(3.0));
}

TEST_CASE("Gauss-Legendre nodes") {
  std::vector<double> x, w;
  gauss_legendre(10, x, w);
  double s = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    s4 += w[i] * std::pow(x[i], 18);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s4 == doctest::Approx(2.0 / 19.0).epsilon(1e-12));
}
