#include "kickrotor/edge.hpp"

#include "kickrotor/tightbinding.hpp"

#include <cmath>
#include <stdexcept>

namespace kr {

CMatrix2 edge_matrix(Real kick) {
  const Real p2 = kick * kick;
  const Complex t00 = 1.0 - p2 / 6.0;
  const Complex t01 = kI * (-kick / std::sqrt(3.0) + p2 * kick / (10.0 * std::sqrt(3.0)));
  const Complex t11 = kAlpha * (1.0 - 3.0 * p2 / 10.0);
  CMatrix2 m;
  m << t00, t01, kAlpha * t01, t11;
  return m;
}

EdgeQuadratic edge_quadratic(Real kick) {
  const Real p2 = kick * kick;
  return {-(1.0 + kAlpha - p2 * (5.0 + 9.0 * kAlpha) / 30.0), kAlpha * (1.0 - 2.0 * p2 / 15.0)};
}

Complex edge_energy(Real kick) {
  if (kick < 0.0) throw std::invalid_argument("edge_energy: P must be >= 0");
  const EdgeQuadratic q = edge_quadratic(kick);
  return 0.5 * (-q.b + std::sqrt(q.b * q.b - 4.0 * q.c));
}

Complex edge_wavenumber(Real kick) {
  const Complex gamma = dispersion_gamma(edge_energy(kick), kick);
  const Complex root = std::sqrt(gamma * gamma / 4.0 - 1.0);
  const Complex z_plus = gamma / 2.0 + root;
  const Complex z_minus = gamma / 2.0 - root;
  if (std::abs(std::abs(z_plus) - 1.0) < 1e-9 && std::abs(std::abs(z_minus) - 1.0) < 1e-9)
    throw NumericalError("edge_wavenumber: no localized solution (gamma_edge on the band)");
  const Complex z = std::abs(z_plus) > std::abs(z_minus) ? z_plus : z_minus;
  return kI / 3.0 * std::log(z);
}

RVector edge_profile(int l_max, Complex wavenumber) {
  if (!(wavenumber.imag() > 0.0)) throw std::domain_error("edge_profile: Im(k) must be > 0");
  if (l_max < 0) throw std::invalid_argument("edge_profile: negative l_max");
  RVector a(l_max + 1);
  for (int l = 0; l <= l_max; ++l) a(l) = std::exp(-wavenumber.imag() * l);
  return a.normalized();
}

EdgeSolution solve_edge(Real kick) {
  EdgeSolution s;
  s.kick = kick;
  const CMatrix2 t0 = edge_matrix(kick);
  s.t00 = t0(0, 0);
  s.t01 = t0(0, 1);
  s.t10 = t0(1, 0);
  s.t11 = t0(1, 1);
  s.energy = edge_energy(kick);
  s.gamma = dispersion_gamma(s.energy, kick);
  s.wavenumber = edge_wavenumber(kick);
  s.decay_rate = s.wavenumber.imag();
  s.perturbative = kick < 2.0;
  return s;
}

}  // namespace kr
