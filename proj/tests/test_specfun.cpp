#include "kickrotor/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace kr;

TEST_CASE("legendre low orders") {
  CHECK(legendre(0, 0.3) == 1.0);
  CHECK(legendre(1, -0.42) == -0.42);
  CHECK(legendre(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-15));
  for (double x : {-1.0, -0.7, 0.0, 0.2, 0.91, 1.0}) {
    const double p3 = 0.5 * (5.0 * x * x * x - 3.0 * x);
    CHECK(legendre(3, x) == doctest::Approx(p3).epsilon(1e-14));
  }
}

TEST_CASE("legendre agrees with std::legendre") {
  for (int n = 0; n <= 80; n += 7)
    for (double x : {-0.93, -0.31, 0.05, 0.66, 0.999}) CHECK(std::abs(legendre(n, x) - std::legendre(n, x)) < 1e-12);
}

TEST_CASE("legendre rejects bad input") {
  CHECK_THROWS_AS(legendre(-1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(legendre(2, 1.5), std::domain_error);
}

TEST_CASE("legendre_sequence matches scalar evaluation") {
  const auto seq = legendre_sequence(40, 0.37);
  REQUIRE(seq.size() == 41);
  for (int n = 0; n <= 40; ++n) CHECK(seq(n) == doctest::Approx(legendre(n, 0.37)).epsilon(1e-13));
}

TEST_CASE("gauss_legendre small rules") {
  const auto one = gauss_legendre(1);
  CHECK(one.nodes(0) == 0.0);
  CHECK(one.weights(0) == doctest::Approx(2.0));

  const auto two = gauss_legendre(2);
  CHECK(two.nodes(0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(two.integrate([](double x) { return x * x; }) - 2.0 / 3.0) < 1e-14);

  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int order : {3, 8, 33, 120}) {
    const auto q = gauss_legendre(order);
    CHECK(std::abs(q.weights.sum() - 2.0) < 1e-13);
    for (int i = 1; i < order; ++i) CHECK(q.nodes(i) > q.nodes(i - 1));
    const int deg = 2 * order - 2;  // even degree below the exactness limit
    const double exact = 2.0 / (deg + 1);
    CHECK(std::abs(q.integrate([&](double x) { return std::pow(x, deg); }) - exact) < 1e-12);
  }
}

TEST_CASE("wigner3j_zero values") {
  CHECK(wigner3j_zero(1, 1, 1) == 0.0);
  CHECK(wigner3j_zero(0, 0, 0) == doctest::Approx(1.0));
  CHECK(wigner3j_zero(1, 1, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  // triangle violation
  CHECK(wigner3j_zero(1, 1, 3) == 0.0);
  // tabulated (2 2 2; 0 0 0) = -sqrt(2/35)
  CHECK(wigner3j_zero(2, 2, 2) == doctest::Approx(-std::sqrt(2.0 / 35.0)).epsilon(1e-14));
}

TEST_CASE("triple_legendre_integral against brute-force quadrature") {
  CHECK(triple_legendre_integral(0, 0, 0) == doctest::Approx(2.0));
  CHECK(triple_legendre_integral(1, 1, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(triple_legendre_integral(1, 1, 1) == 0.0);

  // Oracle: std::legendre integrated by a high-order rule.
  const auto q = gauss_legendre(80);
  for (int k = 0; k <= 25; k += 3)
    for (int l = 0; l <= 25; l += 2)
      for (int m = 0; m <= 25; ++m) {
        double brute = 0.0;
        for (int i = 0; i < q.order; ++i) {
          const double x = q.nodes(i);
          brute += q.weights(i) * std::legendre(k, x) * std::legendre(l, x) * std::legendre(m, x);
        }
        CHECK(std::abs(triple_legendre_integral(k, l, m) - brute) < 1e-12);
      }
}

TEST_CASE("large arguments stay finite") {
  const double w = wigner3j_zero(1500, 1500, 2);
  CHECK(std::isfinite(w));
  // (l l 2; 0 0 0)^2 = l(l+1) / ((2l-1)(2l+1)(2l+3))
  const double l = 1500.0;
  CHECK(w * w == doctest::Approx(l * (l + 1) / ((2 * l - 1) * (2 * l + 1) * (2 * l + 3))).epsilon(1e-10));
}
