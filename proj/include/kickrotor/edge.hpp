// Analytic edge state at l = 0: the 2x2 corner block, its energy, the complex
// wavenumber obtained through the bulk dispersion relation, and the model
// exponential profile.
#pragma once

#include "kickrotor/types.hpp"

namespace kr {

struct EdgeSolution {
  Real kick = 0.0;
  Complex t00, t01, t10, t11;
  Complex energy;
  Complex gamma;
  Complex wavenumber;
  Real decay_rate = 0.0;  // Im(wavenumber)
  bool perturbative = true;  // false for P >= 2

  CMatrix2 corner() const {
    CMatrix2 m;
    m << t00, t01, t10, t11;
    return m;
  }
};

/// Corner block T0 with the small-l corrections (kinetic phase included).
CMatrix2 edge_matrix(Real kick);

/// Monic quadratic E^2 + b E + c whose "+" root is the edge energy.
struct EdgeQuadratic {
  Complex b, c;
  Complex operator()(Complex e) const { return (e + b) * e + c; }
};

EdgeQuadratic edge_quadratic(Real kick);

/// "+" root of the edge quadratic on the principal square-root branch;
/// equals 1 at P = 0.
Complex edge_energy(Real kick);

/// k_edge with Im(k) = ln|z| / 3 > 0, z the root of z + 1/z = gamma_edge
/// outside the unit circle. Throws NumericalError if both roots lie on the
/// unit circle; std::domain_error at P = 0.
Complex edge_wavenumber(Real kick);

/// exp(-Im(k) l) for l = 0 .. l_max, unit Euclidean norm.
RVector edge_profile(int l_max, Complex wavenumber);

EdgeSolution solve_edge(Real kick);

}  // namespace kr
