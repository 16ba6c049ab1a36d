#include "kickrotor/floquet.hpp"

#include <doctest.h>

#include <cmath>

using namespace kr;

namespace {

// Plane-wave expansion e^{-iPx} = sum_L (2L+1) (-i)^L j_L(P) P_L(x), with the
// Legendre triple products integrated from std::legendre.
Complex plane_wave_element(int l, int lp, double kick) {
  const auto q = gauss_legendre(2 * (l + lp) + 60);
  Complex sum = 0.0;
  Complex phase = 1.0;  // (-i)^L
  for (int L = 0; L <= l + lp; ++L) {
    double triple = 0.0;
    for (int i = 0; i < q.order; ++i) {
      const double x = q.nodes(i);
      triple += q.weights(i) * std::legendre(l, x) * std::legendre(L, x) * std::legendre(lp, x);
    }
    sum += (2.0 * L + 1.0) * phase * std::sph_bessel(L, kick) * triple;
    phase *= Complex(0.0, -1.0);
  }
  return 0.5 * std::sqrt((2.0 * l + 1.0) * (2.0 * lp + 1.0)) * sum;
}

}  // namespace

TEST_CASE("kinetic phase at tau = 4 pi / 3") {
  const Rational third(1, 3);
  CHECK(std::abs(kinetic_phase(0, third) - 1.0) < 1e-15);
  CHECK(std::abs(kinetic_phase(1, third) - kAlpha) < 1e-15);
  CHECK(std::abs(kinetic_phase(2, third) - 1.0) < 1e-15);
  for (int l = 0; l < 30; ++l)
    CHECK(std::abs(kinetic_phase(l, third) - kinetic_phase(l, 4.0 * kPi / 3.0)) < 1e-12);
}

TEST_CASE("kinetic phase stays exact for huge l") {
  const Rational third(1, 3);
  for (int l : {1000000, 1000001, 1000002, 46340 * 3 + 1})
    CHECK(kinetic_phase(l, third) == kinetic_phase(l % 3, third));
  // other resonance: tau = 4 pi * 1/4, phase exp(-i pi l(l+1)/2)
  const Rational quarter(1, 4);
  for (int l = 0; l < 12; ++l)
    CHECK(std::abs(kinetic_phase(l, quarter) - std::polar(1.0, -kPi * l * (l + 1) / 2.0)) < 1e-12);
}

TEST_CASE("exact element matches the plane-wave expansion") {
  const auto quad = gauss_legendre(96);
  for (double kick : {0.1, 0.3, 1.0, 3.0})
    for (int l = 0; l <= 12; ++l)
      for (int lp = 0; lp <= 12; ++lp)
        CHECK(std::abs(exact_kick_element(l, lp, kick, quad) - plane_wave_element(l, lp, kick)) < 1e-12);
}

TEST_CASE("exact element basics") {
  const auto quad = gauss_legendre(64);
  CHECK(std::abs(exact_kick_element(0, 0, 0.0, quad) - 1.0) < 1e-15);
  const Complex t01 = exact_kick_element(0, 1, 0.3, quad);
  CHECK(std::abs(t01 - Complex(0.0, -0.17165)) < 1e-5);
  CHECK(std::abs(t01 - perturbative_kick_element(0, 1, 0.3)) < 1e-4);
  for (double kick : {0.2, 1.7}) {
    CHECK(std::abs(exact_kick_element(0, 2, kick, quad).imag()) < 1e-15);
    CHECK(std::abs(exact_kick_element(4, 9, kick, quad) - exact_kick_element(9, 4, kick, quad)) < 1e-15);
    CHECK(std::abs(exact_kick_element(4, 9, kick, quad) - std::conj(exact_kick_element(9, 4, -kick, quad))) < 1e-15);
  }
  CHECK_THROWS_AS(exact_kick_element(60, 0, 0.3, quad), std::invalid_argument);
}

TEST_CASE("perturbative elements") {
  for (double kick : {0.0, 0.2, 0.7}) CHECK(std::abs(perturbative_kick_element(0, 0, kick) - (1.0 - kick * kick / 6.0)) < 1e-15);
  CHECK(std::abs(perturbative_kick_element(1, 1, 0.3) - 0.973) < 1e-12);
  CHECK(perturbative_kick_element(6, 2, 0.3) == 0.0);
  CHECK(std::abs(perturbative_kick_element(5, 2, 0.3)) > 0.0);  // third diagonal, O(P^3)
  CHECK(perturbative_kick_element(2, 6, 0.3) == 0.0);
  const double p = 0.3;
  CHECK(std::abs(perturbative_kick_element(0, 1, p) - Complex(0.0, -p / std::sqrt(3.0) + p * p * p / (10.0 * std::sqrt(3.0)))) < 1e-15);
}

TEST_CASE("large-l coefficients") {
  const auto zero = large_l_coefficients(0.0);
  CHECK(zero.A == 1.0);
  CHECK(zero.B == 0.0);
  CHECK(zero.C == 0.0);
  CHECK(zero.D == 0.0);
  const auto c = large_l_coefficients(0.3);
  CHECK(std::abs(c.A - 0.9775) < 1e-15);
  CHECK(std::abs(c.C - (-0.01125)) < 1e-15);
  CHECK(std::abs(perturbative_kick_element(200, 200, 0.3) - c.A) < 1e-5);
  CHECK(std::abs(perturbative_kick_element(200, 201, 0.3) - c.B) < 1e-5);
  CHECK(std::abs(perturbative_kick_element(200, 202, 0.3) - c.C) < 1e-5);
  CHECK(std::abs(perturbative_kick_element(200, 203, 0.3) - c.D) < 1e-5);
}

TEST_CASE("perturbative elements converge at order P^4") {
  auto worst = [](double kick) {
    const CMatrix exact = exact_kick_matrix(53, kick, gauss_legendre(96));
    double w = 0.0;
    for (int l = 0; l <= 50; ++l)
      for (int lp = std::max(0, l - 3); lp <= l + 3; ++lp)
        w = std::max(w, std::abs(exact(l, lp) - perturbative_kick_element(l, lp, kick)));
    return w;
  };
  const double e1 = worst(0.1), e2 = worst(0.2);
  CHECK(e1 < 1e-4);
  CHECK(e2 / e1 > 10.0);
  CHECK(e2 / e1 < 25.0);
}

TEST_CASE("build_floquet") {
  RotorParams p;
  p.l_max = 40;

  SUBCASE("P = 0 gives the kinetic diagonal") {
    p.kick = 0.0;
    for (BuildMode mode : {BuildMode::exact, BuildMode::perturbative}) {
      const FloquetMatrix t = build_floquet(p, mode);
      REQUIRE(t.dim() == 41);
      for (int l = 0; l <= 40; ++l)
        for (int lp = 0; lp <= 40; ++lp) {
          const Complex want = l == lp ? kinetic_phase(l, p.tau_frac) : Complex(0.0);
          CHECK(std::abs(t(l, lp) - want) < 1e-14);
        }
    }
  }

  SUBCASE("perturbative mode is banded with period-3 prefactors") {
    p.kick = 0.3;
    const FloquetMatrix t = build_floquet(p, BuildMode::perturbative);
    for (int l = 0; l <= 40; ++l)
      for (int lp = 0; lp <= 40; ++lp) {
        if (std::abs(l - lp) > 3) {
          CHECK(t(l, lp) == 0.0);
          continue;
        }
        const Complex prefactor = l % 3 == 1 ? kAlpha : Complex(1.0);
        CHECK(std::abs(t(l, lp) - prefactor * perturbative_kick_element(l, lp, 0.3)) < 1e-15);
      }
  }

  SUBCASE("exact mode columns are unit away from the cutoff") {
    p.l_max = 150;
    for (double kick : {0.3, 1.0}) {
      p.kick = kick;
      const FloquetMatrix t = build_floquet(p);
      for (int c = 3; c <= 138; ++c) CHECK(std::abs(t.entries().col(c).norm() - 1.0) < 1e-8);
    }
  }

  SUBCASE("undersized quadrature is a numerical failure") {
    p.kick = 0.3;
    p.quad_order = 30;
    CHECK_THROWS_AS(build_floquet(p), NumericalError);
    CHECK_NOTHROW(build_floquet(p, BuildMode::perturbative));
  }
}

TEST_CASE("RotorParams validation") {
  RotorParams p;
  CHECK(p.effective_quad_order() == 166);
  p.l_max = 20;
  CHECK(p.effective_quad_order() == 64);
  CHECK_NOTHROW(p.validate());
  p.kick = -0.1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.kick = 0.3;
  p.l_max = 5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("Rational parsing") {
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("2/6") == Rational(1, 3));
  CHECK(Rational::parse("2") == Rational(2, 1));
  CHECK_THROWS_AS(Rational::parse("1/0"), ConfigError);
  CHECK_THROWS_AS(Rational::parse("abc"), ConfigError);
  CHECK_THROWS_AS(Rational::parse("0.33"), ConfigError);
}
