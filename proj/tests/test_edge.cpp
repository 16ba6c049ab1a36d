#include "kickrotor/edge.hpp"

#include "kickrotor/floquet.hpp"
#include "kickrotor/spectral.hpp"
#include "kickrotor/tightbinding.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace kr;

TEST_CASE("corner block") {
  const CMatrix2 t0 = edge_matrix(0.0);
  CHECK(std::abs(t0(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(t0(1, 1) - kAlpha) < 1e-15);
  CHECK(t0(0, 1) == 0.0);
  CHECK(t0(1, 0) == 0.0);

  CHECK(std::abs(edge_matrix(0.3)(0, 0) - 0.985) < 1e-15);

  // same closed forms as the kick elements, with the kinetic prefactors
  for (double kick : {0.1, 0.3, 1.0}) {
    const CMatrix2 t = edge_matrix(kick);
    for (int l = 0; l < 2; ++l)
      for (int lp = 0; lp < 2; ++lp)
        CHECK(std::abs(t(l, lp) - kinetic_phase(l, Rational(1, 3)) * perturbative_kick_element(l, lp, kick)) < 1e-14);
    CHECK(t(1, 0) == kAlpha * t(0, 1));
  }
}

TEST_CASE("edge energy") {
  CHECK(std::abs(edge_energy(0.0) - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon());
  for (double kick : {0.1, 0.3, 1.0}) CHECK(std::abs(edge_quadratic(kick)(edge_energy(kick))) < 1e-12);

  // det(T0 - E) = -alpha P^4/60 + O(P^6)
  const double p = 0.1;
  const Complex det = (edge_matrix(p) - edge_energy(p) * CMatrix2::Identity()).determinant();
  CHECK(std::abs(det) <= std::pow(p, 4) / 50.0);
  CHECK(std::abs(det + kAlpha * std::pow(p, 4) / 60.0) < std::pow(p, 6));

  for (int i = 0; i < 100; ++i) {
    const double a = 0.01 * i, b = 0.01 * (i + 1);
    CHECK(std::abs(edge_energy(b) - edge_energy(a)) < 0.05);
    CHECK(std::abs(std::abs(edge_energy(b)) - 1.0) <= 0.5 * b * b);
  }
}

TEST_CASE("edge wavenumber") {
  for (double kick : {0.1, 0.3, 1.0, 2.0, 3.0}) {
    const Complex k = edge_wavenumber(kick);
    CHECK(k.imag() > 0.0);
    const Complex gamma = dispersion_gamma(edge_energy(kick), kick);
    CHECK(std::abs(std::exp(3.0 * kI * k) + std::exp(-3.0 * kI * k) - gamma) < 1e-12);
  }
  double prev = edge_wavenumber(0.05).imag();
  for (int i = 2; i <= 60; ++i) {
    const double rate = edge_wavenumber(0.05 * i).imag();
    CHECK(rate < prev);
    prev = rate;
  }
  CHECK_THROWS(edge_wavenumber(0.0));
}

TEST_CASE("edge profile") {
  const RVector v = edge_profile(40, Complex(0.0, std::log(2.0)));
  REQUIRE(v.size() == 41);
  CHECK(v.norm() == doctest::Approx(1.0));
  for (int l = 0; l < 40; ++l) CHECK(v(l + 1) / v(l) == doctest::Approx(0.5));

  const Complex k = edge_wavenumber(0.3);
  const RVector e = edge_profile(150, k);
  CVector c = e.cast<Complex>();
  CHECK(std::abs(fit_decay_rate(c, 0, 12) + k.imag()) < 1e-10);
  CHECK_THROWS_AS(edge_profile(40, Complex(0.3, -0.1)), std::domain_error);
}

TEST_CASE("solve_edge flags non-perturbative kicks") {
  const EdgeSolution a = solve_edge(0.3);
  CHECK(a.perturbative);
  CHECK(a.energy == edge_energy(0.3));
  CHECK(a.decay_rate == a.wavenumber.imag());
  CHECK((a.corner() - edge_matrix(0.3)).norm() == 0.0);
  CHECK_FALSE(solve_edge(2.0).perturbative);
  CHECK_FALSE(solve_edge(3.0).perturbative);
}

TEST_CASE("analytic energy matches the numerical edge state") {
  RotorParams p;
  p.kick = 0.3;
  const auto edge = detect_edge_state(eigendecompose(build_floquet(p)));
  REQUIRE(edge);
  CHECK(std::abs(edge->eigenvalue - edge_energy(0.3)) < 1e-2);
}
