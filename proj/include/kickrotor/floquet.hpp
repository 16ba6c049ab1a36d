// One-kick Floquet operator T = T_kin * T_P of the m = 0 three-dimensional
// kicked rotor, truncated to l = 0 .. l_max.
#pragma once

#include "kickrotor/specfun.hpp"
#include "kickrotor/types.hpp"

namespace kr {

struct RotorParams {
  Real kick = 0.3;          // P
  Rational tau_frac{1, 3};  // tau = 4 pi * tau_frac
  int l_max = 150;
  int quad_order = 0;  // 0 selects max(64, l_max + 16)
  // Only the m = 0 sector is modelled.

  Real tau() const { return 4.0 * kPi * tau_frac.value(); }
  int dim() const { return l_max + 1; }
  int effective_quad_order() const;

  /// Throws ConfigError on a malformed configuration.
  void validate() const;
};

/// Large-l limits of the banded kick matrix, through order P^3.
struct BandCoefficients {
  Complex A, B, C, D;
  Complex alpha = kAlpha;
};

BandCoefficients large_l_coefficients(Real kick);

/// exp(-i (tau/2) l (l+1)) with tau = 4 pi a/b. The phase is reduced with
/// integer arithmetic so that it is exact for any l.
Complex kinetic_phase(int l, const Rational& tau_frac);

/// Same phase for a floating tau; only exact while tau*l^2 stays small.
Complex kinetic_phase(int l, Real tau);

/// <l,0| exp(-i P cos theta) |lp,0> by Gauss-Legendre quadrature.
/// Requires quad.order >= max(l, lp) + 16.
Complex exact_kick_element(int l, int lp, Real kick, const QuadratureRule<Real>& quad);

/// Closed-form O(P^3) kick elements for |l - lp| <= 3, zero beyond.
Complex perturbative_kick_element(int l, int lp, Real kick);

/// Dense kick matrix T_P over l = 0 .. l_max, without the kinetic factor.
CMatrix exact_kick_matrix(int l_max, Real kick, const QuadratureRule<Real>& quad);

class FloquetMatrix {
 public:
  FloquetMatrix(CMatrix entries, BuildMode mode, RotorParams params)
      : entries_(std::move(entries)), mode_(mode), params_(params) {}

  const CMatrix& entries() const { return entries_; }
  Complex operator()(Eigen::Index l, Eigen::Index lp) const { return entries_(l, lp); }
  Eigen::Index dim() const { return entries_.rows(); }
  BuildMode mode() const { return mode_; }
  const RotorParams& params() const { return params_; }

 private:
  CMatrix entries_;
  BuildMode mode_;
  RotorParams params_;
};

/// Builds T with row l carrying kinetic_phase(l). Throws NumericalError if an
/// exact build is requested with quad_order < l_max + 16.
FloquetMatrix build_floquet(const RotorParams& params, BuildMode mode = BuildMode::exact);

}  // namespace kr
