// Kick-by-kick propagation and energy observables.
#pragma once

#include "kickrotor/floquet.hpp"
#include "kickrotor/types.hpp"

#include <optional>
#include <vector>

namespace kr {

struct WaveState {
  CVector amplitudes;

  Real norm() const { return amplitudes.norm(); }
  Eigen::Index dim() const { return amplitudes.size(); }

  static WaveState delta(int dim, int l);
  static WaveState gaussian(int dim, Real center, Real width);
};

struct TrajectoryRecord {
  int kick = 0;
  Real energy = 0.0;
  Real norm = 0.0;
  Real p_l0 = 0.0;
  Real centroid = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;  // kick 0 is the initial state
  CVector final_state;
  std::optional<int> truncation_warning;  // first kick with centroid > l_max - 20
};

/// (tau/2) sum_l l(l+1) |psi_l|^2.
Real kinetic_energy_expectation(const CVector& psi, Real tau);

/// Applies T n_kicks times without renormalizing.
Trajectory propagate(const WaveState& state, const FloquetMatrix& t, int n_kicks);

/// Least-squares slope of ln E against ln n over records with k_min <= n <= k_max.
/// Throws std::invalid_argument with fewer than 5 points or a non-positive energy.
Real growth_exponent(const Trajectory& traj, int k_min, int k_max);

}  // namespace kr
