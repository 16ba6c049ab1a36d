#include "kickrotor/tightbinding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kr {

Real CubicCoefficients::max_abs() const {
  return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

CMatrix3 solid_matrix(Real k, const BandCoefficients& c) {
  const Complex e1 = std::polar(1.0, k);
  const Complex e2 = std::polar(1.0, 2.0 * k);
  const Complex gamma = gamma_of_k(k);
  const Complex diag = c.A + c.D * gamma;
  const Complex fwd = c.B * e1 + c.C / e2;       // B e^{ik} + C e^{-2ik}
  const Complex bwd = c.B / e1 + c.C * e2;       // B e^{-ik} + C e^{2ik}

  CMatrix3 m;
  m << c.alpha * diag, c.alpha * fwd, c.alpha * bwd,
       bwd,            diag,          fwd,
       fwd,            bwd,           diag;
  return m;
}

CubicCoefficients characteristic_polynomial(const CMatrix3& m) {
  const Complex minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                         m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  CubicCoefficients p;
  p.c3 = 1.0;
  p.c2 = -m.trace();
  p.c1 = minors;
  p.c0 = -m.determinant();
  return p;
}

CubicCoefficients characteristic_cubic(Real kick, Complex gamma) {
  const Real p2 = kick * kick, p3 = p2 * kick;
  const Complex a = kAlpha;
  CubicCoefficients p;
  p.c3 = 1.0;
  p.c2 = -(1.0 - p2 / 4.0 + kI * p3 / 48.0 * gamma) * (a + 2.0);
  p.c1 = -((2.0 * a + 1.0) * (-1.0 + p2 / 4.0) + a * kI * p3 / 24.0 * gamma + kI * p3 / 48.0 * gamma);
  p.c0 = -a;
  return p;
}

namespace {

Complex derivative(const CubicCoefficients& p, Complex e) {
  return (3.0 * p.c3 * e + 2.0 * p.c2) * e + p.c1;
}

Complex newton_polish(const CubicCoefficients& p, Complex e) {
  for (int it = 0; it < 50; ++it) {
    const Complex d = derivative(p, e);
    if (std::abs(d) == 0.0) break;
    const Complex step = p(e) / d;
    e -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(e))) break;
  }
  return e;
}

// Newton on p' = 3 c3 E^2 + 2 c2 E + c1, whose root sits at a double root of p.
Complex polish_double(const CubicCoefficients& p, Complex e) {
  for (int it = 0; it < 50; ++it) {
    const Complex d2 = 6.0 * p.c3 * e + 2.0 * p.c2;
    if (std::abs(d2) == 0.0) break;
    const Complex step = derivative(p, e) / d2;
    e -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(e))) break;
  }
  return e;
}

}  // namespace

std::array<Complex, 3> solve_cubic(const CubicCoefficients& p) {
  if (std::abs(p.c3) == 0.0) throw std::invalid_argument("solve_cubic: leading coefficient is zero");

  Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
  companion(0, 0) = -p.c2 / p.c3;
  companion(0, 1) = -p.c1 / p.c3;
  companion(0, 2) = -p.c0 / p.c3;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("solve_cubic: companion eigensolver failed");
  std::array<Complex, 3> r{solver.eigenvalues()(0), solver.eigenvalues()(1), solver.eigenvalues()(2)};

  const Real scale = 1.0 + std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  const Real cluster = 1e-5 * scale;
  auto close = [&](int i, int j) { return std::abs(r[i] - r[j]) < cluster; };

  if (close(0, 1) && close(1, 2) && close(0, 2)) {
    const Complex triple = -p.c2 / (3.0 * p.c3);
    r = {triple, triple, triple};
  } else {
    int pair_a = -1, pair_b = -1;
    for (int i = 0; i < 3 && pair_a < 0; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (close(i, j)) {
          pair_a = i;
          pair_b = j;
          break;
        }
    if (pair_a >= 0) {
      const int lone = 3 - pair_a - pair_b;
      const Complex dbl = polish_double(p, 0.5 * (r[pair_a] + r[pair_b]));
      r[pair_a] = dbl;
      r[pair_b] = dbl;
      r[lone] = newton_polish(p, r[lone]);
    } else {
      for (auto& root : r) root = newton_polish(p, root);
    }
  }

  const Real bound = 1e-10 * p.max_abs();
  for (int i = 0; i < 3; ++i)
    if (std::abs(p(r[i])) > bound)
      throw NumericalError("solve_cubic: ill-conditioned, residual " + std::to_string(std::abs(p(r[i]))) +
                           " at root " + std::to_string(i));
  return r;
}

Complex perturbative_E1(Real k, Real kick, Branch branch) {
  const Complex ac = std::conj(kAlpha);
  const Real gamma = gamma_of_k(k);
  const Real sign = branch == Branch::plus ? 1.0 : -1.0;
  const Complex second = (3.0 * (1.0 + ac) * gamma - 12.0 * ac) / (48.0 * (ac - 1.0));
  return 1.0 + sign * kI * 0.5 * kick + second * kick * kick;
}

Complex perturbative_E2(Real k, Real kick) {
  const Complex a = kAlpha;
  const Complex ac = std::conj(a);
  const Real gamma = gamma_of_k(k);
  const Real p2 = kick * kick;
  return a + (a + 1.0) / (4.0 * (ac - 1.0)) * p2 - kI * p2 * kick * a * gamma / 48.0;
}

BandEnergies band_energies(Real k, Real kick) {
  return {perturbative_E1(k, kick, Branch::plus), perturbative_E1(k, kick, Branch::minus),
          perturbative_E2(k, kick)};
}

Real distance_to_bands(Complex e, Real k, Real kick) {
  Real best = std::numeric_limits<Real>::infinity();
  for (Complex band : band_energies(k, kick).as_array()) best = std::min(best, std::abs(e - band));
  return best;
}

Complex dispersion_gamma(Complex energy, Real kick) {
  if (kick == 0.0) throw std::domain_error("dispersion_gamma: undefined at P = 0");
  const Complex ac = std::conj(kAlpha);
  return 16.0 * (ac - 1.0) / ((ac + 1.0) * kick * kick) * (energy + kI * kick / 2.0 - 1.0) +
         4.0 * ac / (1.0 + ac);
}

std::array<BlochPoint, 3> bloch_states(Real k, Real kick) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(solid_matrix(k, large_l_coefficients(kick)));
  if (solver.info() != Eigen::Success) throw NumericalError("bloch_states: eigensolver failed");
  std::array<BlochPoint, 3> out;
  for (int j = 0; j < 3; ++j) {
    out[j].k = k;
    out[j].gamma = gamma_of_k(k);
    out[j].energy = solver.eigenvalues()(j);
    out[j].cell_amplitudes = solver.eigenvectors().col(j).normalized();
  }
  return out;
}

CVector bloch_wave(const BlochPoint& point, int l_max) {
  // cell site 0 is the alpha site, l = 1 (mod 3)
  CVector v(l_max + 1);
  for (int l = 0; l <= l_max; ++l)
    v(l) = point.cell_amplitudes((l + 2) % 3) * std::polar(1.0, point.k * l);
  return v * std::sqrt(3.0 / double(l_max + 1));
}

}  // namespace kr
