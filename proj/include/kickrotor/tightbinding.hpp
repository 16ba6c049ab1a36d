// Three-site-cell tight-binding analog of the banded bulk Floquet matrix at
// tau = 4 pi / 3, with the perturbative band energies and their inversion.
#pragma once

#include "kickrotor/floquet.hpp"
#include "kickrotor/types.hpp"

#include <array>

namespace kr {

/// gamma = exp(3ik) + exp(-3ik) = 2 cos 3k.
inline Real gamma_of_k(Real k) { return 2.0 * std::cos(3.0 * k); }

/// Coefficients of c3 E^3 + c2 E^2 + c1 E + c0.
struct CubicCoefficients {
  Complex c3{1.0, 0.0}, c2, c1, c0;

  Complex operator()(Complex e) const { return ((c3 * e + c2) * e + c1) * e + c0; }
  Real max_abs() const;
};

/// Bloch-cell transfer matrix at wavenumber k. Row 0 is the alpha-carrying site.
CMatrix3 solid_matrix(Real k, const BandCoefficients& c);

/// det(E - M) for a 3x3 matrix, as a monic cubic.
CubicCoefficients characteristic_polynomial(const CMatrix3& m);

/// The O(P^3) characteristic equation for the band energies at given gamma.
CubicCoefficients characteristic_cubic(Real kick, Complex gamma);

/// All three roots. Companion-matrix eigenvalues, then clustered roots are
/// pinned to the roots of p' or p'' and isolated roots Newton-polished.
/// Throws NumericalError if some |p(E)| exceeds 1e-10 max|c_i|.
std::array<Complex, 3> solve_cubic(const CubicCoefficients& p);

enum class Branch { plus, minus };

/// E1 = 1 +- iP/2 + [(3(1+a*) gamma - 12 a*) / (48 (a* - 1))] P^2, evaluated as printed
/// with the same P^2 coefficient on both branches.
Complex perturbative_E1(Real k, Real kick, Branch branch);

/// E20 = a + (a+1)/(4(a*-1)) P^2 - i P^3 a gamma / 48.
Complex perturbative_E2(Real k, Real kick);

struct BandEnergies {
  Complex E1_plus, E1_minus, E20;

  std::array<Complex, 3> as_array() const { return {E1_plus, E1_minus, E20}; }
};

BandEnergies band_energies(Real k, Real kick);

/// Distance from e to the nearest of the three band energies at k.
Real distance_to_bands(Complex e, Real k, Real kick);

/// Inverts the P^2 term of the E1 minus branch for gamma. Throws
/// std::domain_error when P == 0.
Complex dispersion_gamma(Complex energy, Real kick);

/// One eigenpair of the solid matrix, i.e. a Bloch state of the periodic bulk.
struct BlochPoint {
  Real k = 0.0;
  Real gamma = 2.0;
  Complex energy;
  Eigen::Vector3cd cell_amplitudes;  // (alpha_1, alpha_2, alpha_3), unit norm
};

std::array<BlochPoint, 3> bloch_states(Real k, Real kick);

/// The Bloch wave sqrt(3/N) sum alpha_r e^{ikl} laid out on l = 0 .. l_max.
CVector bloch_wave(const BlochPoint& point, int l_max);

}  // namespace kr
