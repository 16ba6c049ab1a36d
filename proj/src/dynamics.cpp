#include "kickrotor/dynamics.hpp"

#include "kickrotor/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace kr {

WaveState WaveState::delta(int dim, int l) {
  if (l < 0 || l >= dim) throw std::invalid_argument("WaveState::delta: l outside basis");
  WaveState s;
  s.amplitudes = CVector::Zero(dim);
  s.amplitudes(l) = 1.0;
  return s;
}

WaveState WaveState::gaussian(int dim, Real center, Real width) {
  if (!(width > 0.0)) throw std::invalid_argument("WaveState::gaussian: width must be > 0");
  WaveState s;
  s.amplitudes.resize(dim);
  for (int l = 0; l < dim; ++l) {
    const Real x = (l - center) / width;
    s.amplitudes(l) = std::exp(-0.5 * x * x);
  }
  const Real n = s.amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("WaveState::gaussian: no support inside basis");
  s.amplitudes /= n;
  return s;
}

Real kinetic_energy_expectation(const CVector& psi, Real tau) {
  Real acc = 0.0;
  for (Eigen::Index l = 0; l < psi.size(); ++l) acc += Real(l) * Real(l + 1) * std::norm(psi(l));
  return 0.5 * tau * acc;
}

namespace {

TrajectoryRecord observe(int n, const CVector& psi, Real tau) {
  return {n, kinetic_energy_expectation(psi, tau), psi.norm(), std::norm(psi(0)), centroid(psi)};
}

}  // namespace

Trajectory propagate(const WaveState& state, const FloquetMatrix& t, int n_kicks) {
  if (state.dim() != t.dim()) throw std::invalid_argument("propagate: state dimension does not match T");
  if (n_kicks < 1) throw std::invalid_argument("propagate: n_kicks must be positive");

  const Real tau = t.params().tau();
  const Real limit = t.params().l_max - 20;

  Trajectory traj;
  traj.records.reserve(n_kicks + 1);
  CVector psi = state.amplitudes;
  traj.records.push_back(observe(0, psi, tau));
  CVector next(psi.size());
  for (int n = 1; n <= n_kicks; ++n) {
    next.noalias() = t.entries() * psi;
    psi.swap(next);
    traj.records.push_back(observe(n, psi, tau));
    if (!traj.truncation_warning && traj.records.back().centroid > limit) traj.truncation_warning = n;
  }
  traj.final_state = std::move(psi);
  return traj;
}

Real growth_exponent(const Trajectory& traj, int k_min, int k_max) {
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : traj.records) {
    if (r.kick < k_min || r.kick > k_max || r.kick <= 0) continue;
    if (!(r.energy > 0.0)) throw std::invalid_argument("growth_exponent: non-positive energy in window");
    const Real x = std::log(Real(r.kick));
    const Real y = std::log(r.energy);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 5) throw std::invalid_argument("growth_exponent: window has fewer than 5 points");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace kr
