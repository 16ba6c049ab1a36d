// Eigen-decomposition of the Floquet matrix and the numerical side of the
// band/edge comparison: Bloch wavenumber estimates, edge-state detection and
// log-amplitude decay fits.
#pragma once

#include "kickrotor/floquet.hpp"
#include "kickrotor/types.hpp"

#include <optional>

namespace kr {

/// Mean l of |v_l|^2 / |v|^2.
template <typename Derived>
Real centroid(const Eigen::MatrixBase<Derived>& v) {
  const auto w = v.cwiseAbs2();
  const Real total = w.sum();
  Real acc = 0.0;
  for (Eigen::Index l = 0; l < v.size(); ++l) acc += Real(l) * w(l);
  return acc / total;
}

/// Fraction of |v|^2 carried by l = 0 .. l_window.
template <typename Derived>
Real low_weight(const Eigen::MatrixBase<Derived>& v, int l_window = 2) {
  const Eigen::Index n = std::min<Eigen::Index>(l_window + 1, v.size());
  return v.head(n).squaredNorm() / v.squaredNorm();
}

/// Right eigenpairs of a Floquet matrix, ordered by (phase, centroid).
struct Spectrum {
  CVector eigenvalues;
  RVector phases;        // omega = arg(E) in (-pi, pi]
  CMatrix eigenvectors;  // column j pairs with eigenvalues(j); unit norm
  RVector residuals;     // |T v - E v|

  Eigen::Index size() const { return eigenvalues.size(); }
  auto state(Eigen::Index j) const { return eigenvectors.col(j); }
};

/// Dense complex eigendecomposition. Each eigenvector is normalized and its
/// largest component made real-positive. Throws NumericalError if the solver
/// fails or a residual exceeds 1e-8.
Spectrum eigendecompose(const CMatrix& t);
inline Spectrum eigendecompose(const FloquetMatrix& t) { return eigendecompose(t.entries()); }

/// Reduced-zone Bloch wavenumber k in [0, pi/3] from the peak of the DFT
/// magnitude of the l = 0 (mod 3) sublattice over l in [9, l_max - 12].
/// Empty when the peak carries less than twice the median spectral weight.
std::optional<Real> assign_wavenumber(const CVector& v);

/// Spacing of the k estimate for a vector of the given length.
Real wavenumber_resolution(Eigen::Index length);

struct EdgeSearch {
  int l_window = 2;
  Real threshold = 0.5;
  int fit_lo = 0;
  int fit_hi = 12;
};

struct EdgeDetection {
  Eigen::Index index = -1;
  Real weight_low = 0.0;
  Complex eigenvalue;
  Real fitted_slope = 0.0;  // NaN if the fit window had too few usable points
};

/// The state with the largest weight on l <= l_window, if that weight reaches
/// the threshold.
std::optional<EdgeDetection> detect_edge_state(const Spectrum& s, const EdgeSearch& search = {});

/// Number of states whose weight on l <= l_window is at least threshold.
int count_low_weight_states(const Spectrum& s, int l_window, Real threshold);

/// Least-squares slope of ln|v_l| against l for l in [l_lo, l_hi], skipping
/// |v_l| <= 1e-12. Throws NumericalError with fewer than 4 usable points.
Real fit_decay_rate(const CVector& v, int l_lo, int l_hi);

}  // namespace kr
