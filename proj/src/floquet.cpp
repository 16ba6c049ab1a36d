#include "kickrotor/floquet.hpp"

#include <algorithm>
#include <cmath>

namespace kr {

int RotorParams::effective_quad_order() const {
  return quad_order > 0 ? quad_order : std::max(64, l_max + 16);
}

void RotorParams::validate() const {
  if (!std::isfinite(kick) || kick < 0.0) throw ConfigError("kick strength P must be finite and >= 0");
  if (tau_frac.den <= 0) throw ConfigError("tau fraction must have a positive denominator");
  if (l_max < 9) throw ConfigError("l_max must be >= 9");
  if (quad_order < 0) throw ConfigError("quad_order must be >= 0 (0 = automatic)");
}

BandCoefficients large_l_coefficients(Real kick) {
  const Real p = kick, p2 = p * p, p3 = p2 * p;
  BandCoefficients c;
  c.A = 1.0 - p2 / 4.0;
  c.B = kI * (-p / 2.0 + p3 / 16.0);
  c.C = -p2 / 8.0;
  c.D = kI * (p3 / 48.0);
  return c;
}

Complex kinetic_phase(int l, const Rational& tau_frac) {
  if (l < 0) throw std::invalid_argument("kinetic_phase: negative l");
  // (tau/2) l(l+1) = 2 pi * a l(l+1) / b; only a l(l+1) mod b matters.
  const __int128 b = tau_frac.den;
  __int128 a = tau_frac.num % b;
  if (a < 0) a += b;
  const __int128 n = (a * ((__int128(l) % b) * ((__int128(l) + 1) % b) % b)) % b;
  // keep the angle in (-pi, pi]
  const __int128 signed_n = (2 * n > b) ? n - b : n;
  if (signed_n == 0) return Complex(1.0, 0.0);
  return std::polar(1.0, -2.0 * kPi * double(signed_n) / double(b));
}

Complex kinetic_phase(int l, Real tau) {
  if (l < 0) throw std::invalid_argument("kinetic_phase: negative l");
  return std::polar(1.0, -0.5 * tau * double(l) * double(l + 1));
}

Complex exact_kick_element(int l, int lp, Real kick, const QuadratureRule<Real>& quad) {
  if (l < 0 || lp < 0) throw std::invalid_argument("exact_kick_element: negative l");
  if (quad.order < std::max(l, lp) + 16)
    throw std::invalid_argument("exact_kick_element: quadrature order below max(l, lp) + 16");
  const Real norm = std::sqrt(Real(2 * l + 1) * Real(2 * lp + 1)) / 2.0;
  const Complex integral = quad.integrate([&](Real x) {
    return legendre(l, x) * legendre(lp, x) * std::polar(1.0, -kick * x);
  });
  return norm * integral;
}

namespace {

// Closed-form diagonals, each written for the row index l.
Real main_diagonal(Real p, Real l) {
  return 1.0 - p * p / 2.0 * (2 * l * l + 2 * l - 1) / ((2 * l - 1) * (2 * l + 3));
}

Complex first_right(Real p, Real l) {
  const Real root = std::sqrt((2 * l + 1) * (2 * l + 3));
  const Real p3 = p * p * p;
  return kI * (-p * (l + 1) / root +
               p3 / 20.0 * ((2 * l + 2) / root + l * (2 * l + 2) * (l + 2) / ((2 * l - 1) * (2 * l + 5) * root)));
}

Complex first_left(Real p, Real l) {
  const Real root = std::sqrt((2 * l + 1) * (2 * l - 1));
  const Real p3 = p * p * p;
  return kI * (-p * l / root +
               p3 / (20.0 * root) * (2 * l + 2 * l * (l - 1) * (l + 1) / ((2 * l - 3) * (2 * l + 3))));
}

Real second_right(Real p, Real l) {
  return -p * p / 2.0 * (l + 1) * (l + 2) / ((2 * l + 3) * std::sqrt((2 * l + 1) * (2 * l + 5)));
}

Real second_left(Real p, Real l) {
  return -p * p / 2.0 * l * (l - 1) / ((2 * l - 1) * std::sqrt((2 * l + 1) * (2 * l - 3)));
}

Complex third_right(Real p, Real l) {
  const Real p3 = p * p * p;
  return kI * (p3 / 48.0 * (2 * l + 2) * (2 * l + 4) * (2 * l + 6) /
               ((2 * l + 3) * (2 * l + 5) * std::sqrt((2 * l + 1) * (2 * l + 7))));
}

Complex third_left(Real p, Real l) {
  const Real p3 = p * p * p;
  return kI * (p3 / 48.0 * 2 * l * (2 * l - 2) * (2 * l - 4) /
               ((2 * l - 3) * (2 * l - 1) * std::sqrt((2 * l + 1) * (2 * l - 5))));
}

}  // namespace

Complex perturbative_kick_element(int l, int lp, Real kick) {
  if (l < 0 || lp < 0) throw std::invalid_argument("perturbative_kick_element: negative l");
  const Real row = l;
  switch (lp - l) {
    case 0: return main_diagonal(kick, row);
    case 1: return first_right(kick, row);
    case -1: return first_left(kick, row);
    case 2: return second_right(kick, row);
    case -2: return second_left(kick, row);
    case 3: return third_right(kick, row);
    case -3: return third_left(kick, row);
    default: return Complex(0.0, 0.0);
  }
}

CMatrix exact_kick_matrix(int l_max, Real kick, const QuadratureRule<Real>& quad) {
  if (quad.order < l_max + 16)
    throw NumericalError("quadrature order " + std::to_string(quad.order) + " < l_max + 16 = " +
                         std::to_string(l_max + 16));
  const int n = quad.order;
  const int dim = l_max + 1;
  if (kick == 0.0) return CMatrix::Identity(dim, dim);  // orthonormality, without quadrature roundoff

  // basis(i, l) = sqrt((2l+1)/2) P_l(x_i)
  Eigen::MatrixXd basis(n, dim);
  for (int i = 0; i < n; ++i) {
    const RVector p = legendre_sequence(l_max, quad.nodes(i));
    for (int l = 0; l < dim; ++l) basis(i, l) = std::sqrt((2.0 * l + 1.0) / 2.0) * p(l);
  }
  const RVector wc = (quad.weights.array() * (kick * quad.nodes.array()).cos()).matrix();
  const RVector ws = (quad.weights.array() * (kick * quad.nodes.array()).sin()).matrix();

  const Eigen::MatrixXd re = basis.transpose() * wc.asDiagonal() * basis;
  const Eigen::MatrixXd im = -(basis.transpose() * ws.asDiagonal() * basis);

  CMatrix t(dim, dim);
  t.real() = re;
  t.imag() = im;
  return t;
}

FloquetMatrix build_floquet(const RotorParams& params, BuildMode mode) {
  params.validate();
  const int dim = params.dim();

  CVector kinetic(dim);
  for (int l = 0; l < dim; ++l) kinetic(l) = kinetic_phase(l, params.tau_frac);

  CMatrix kick;
  if (mode == BuildMode::exact) {
    const int order = params.effective_quad_order();
    if (order < params.l_max + 16)
      throw NumericalError("quadrature order " + std::to_string(order) + " < l_max + 16 = " +
                           std::to_string(params.l_max + 16));
    kick = exact_kick_matrix(params.l_max, params.kick, gauss_legendre<Real>(order));
  } else {
    kick = CMatrix::Zero(dim, dim);
    for (int l = 0; l < dim; ++l)
      for (int lp = std::max(0, l - 3); lp <= std::min(dim - 1, l + 3); ++lp)
        kick(l, lp) = perturbative_kick_element(l, lp, params.kick);
  }
  return FloquetMatrix(kinetic.asDiagonal() * kick, mode, params);
}

}  // namespace kr
