#include "kickrotor/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace kr {

namespace {

constexpr int kGridIntervals = 1024;
constexpr int kWindowLo = 9;
constexpr int kWindowTailGap = 12;

}  // namespace

Spectrum eigendecompose(const CMatrix& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("eigendecompose: matrix not square");
  if (t.rows() > 2000) throw std::length_error("eigendecompose: dimension above dense budget of 2000");

  Eigen::ComplexEigenSolver<CMatrix> solver(t, true);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecompose: QR iteration did not converge");

  const Eigen::Index n = t.rows();
  CMatrix vecs = solver.eigenvectors();
  const CVector& vals = solver.eigenvalues();

  RVector centroids(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto v = vecs.col(j);
    v.normalize();
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    v(imax) = std::abs(v(imax));
    centroids(j) = centroid(v);
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const Real wa = std::arg(vals(a)), wb = std::arg(vals(b));
    if (wa != wb) return wa < wb;
    return centroids(a) < centroids(b);
  });

  Spectrum s;
  s.eigenvalues.resize(n);
  s.phases.resize(n);
  s.eigenvectors.resize(n, n);
  s.residuals.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[j];
    s.eigenvalues(j) = vals(src);
    s.phases(j) = std::arg(vals(src));
    s.eigenvectors.col(j) = vecs.col(src);
    s.residuals(j) = (t * vecs.col(src) - vals(src) * vecs.col(src)).norm();
    if (!(s.residuals(j) < 1e-8))
      throw NumericalError("eigendecompose: residual " + std::to_string(s.residuals(j)) + " at state " +
                           std::to_string(j));
  }
  return s;
}

Real wavenumber_resolution(Eigen::Index length) {
  const Eigen::Index l_max = length - 1;
  const Eigen::Index first = (kWindowLo + 2) / 3;
  const Eigen::Index last = (l_max - kWindowTailGap) / 3;
  const Eigen::Index count = std::max<Eigen::Index>(1, last - first + 1);
  // DFT bin width in q = 3k
  return 2.0 * kPi / (3.0 * double(count));
}

std::optional<Real> assign_wavenumber(const CVector& v) {
  if (v.size() < 30) throw std::invalid_argument("assign_wavenumber: vector shorter than 30");
  const Eigen::Index l_max = v.size() - 1;
  const Eigen::Index first = (kWindowLo + 2) / 3;
  const Eigen::Index last = (l_max - kWindowTailGap) / 3;

  const Eigen::Index count = last - first + 1;
  CVector sub(count);
  for (Eigen::Index j = 0; j < count; ++j) sub(j) = v(3 * (first + j));

  RVector power(kGridIntervals + 1);
  for (int m = 0; m <= kGridIntervals; ++m) {
    const Real q = kPi * m / kGridIntervals;
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < count; ++j) acc += sub(j) * std::polar(1.0, -q * double(j));
    power(m) = std::norm(acc);
  }

  Eigen::Index peak = 0;
  const Real top = power.maxCoeff(&peak);
  std::vector<Real> sorted(power.data(), power.data() + power.size());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const Real median = sorted[sorted.size() / 2];
  if (!(top >= 2.0 * median) || top == 0.0) return std::nullopt;
  return kPi * double(peak) / kGridIntervals / 3.0;
}

std::optional<EdgeDetection> detect_edge_state(const Spectrum& s, const EdgeSearch& search) {
  if (s.size() == 0) return std::nullopt;
  Eigen::Index best = 0;
  Real best_weight = -1.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const Real w = low_weight(s.state(j), search.l_window);
    if (w > best_weight) {
      best_weight = w;
      best = j;
    }
  }
  if (best_weight < search.threshold) return std::nullopt;

  EdgeDetection d;
  d.index = best;
  d.weight_low = best_weight;
  d.eigenvalue = s.eigenvalues(best);
  try {
    d.fitted_slope = fit_decay_rate(s.state(best), search.fit_lo, search.fit_hi);
  } catch (const NumericalError&) {
    d.fitted_slope = std::numeric_limits<Real>::quiet_NaN();
  }
  return d;
}

int count_low_weight_states(const Spectrum& s, int l_window, Real threshold) {
  int n = 0;
  for (Eigen::Index j = 0; j < s.size(); ++j)
    if (low_weight(s.state(j), l_window) >= threshold) ++n;
  return n;
}

Real fit_decay_rate(const CVector& v, int l_lo, int l_hi) {
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  const int hi = std::min<int>(l_hi, int(v.size()) - 1);
  for (int l = std::max(0, l_lo); l <= hi; ++l) {
    const Real a = std::abs(v(l));
    if (!(a > 1e-12)) continue;
    const Real y = std::log(a);
    sx += l;
    sy += y;
    sxx += Real(l) * l;
    sxy += l * y;
    ++n;
  }
  if (n < 4) throw NumericalError("fit_decay_rate: window too small (" + std::to_string(n) + " usable points)");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace kr
