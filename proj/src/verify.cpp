#include "kickrotor/verify.hpp"

#include "kickrotor/dynamics.hpp"
#include "kickrotor/edge.hpp"
#include "kickrotor/floquet.hpp"
#include "kickrotor/spectral.hpp"
#include "kickrotor/specfun.hpp"
#include "kickrotor/tightbinding.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace kr {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

CheckResult make(std::string id, std::string title, bool ok, std::string detail) {
  return {std::move(id), std::move(title), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

CheckResult skip(std::string id, std::string title, std::string why) {
  return {std::move(id), std::move(title), CheckStatus::skip, std::move(why)};
}

CheckResult info(std::string id, std::string title, std::string detail) {
  return {std::move(id), std::move(title), CheckStatus::info, std::move(detail)};
}

RotorParams params_for(Real kick, const VerifyOptions& opts, int l_max) {
  RotorParams p;
  p.kick = kick;
  p.l_max = l_max;
  p.quad_order = opts.quad_order;
  return p;
}

Real median(std::vector<Real> v) {
  if (v.empty()) return std::numeric_limits<Real>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  Real m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

// Smallest over the 6 pairings of the largest |a_i - b_pi(i)|.
Real pairing_error(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
  std::array<int, 3> perm{0, 1, 2};
  Real best = std::numeric_limits<Real>::infinity();
  do {
    Real worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::array<Complex, 3> solid_eigenvalues(Real k, Real kick) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(solid_matrix(k, large_l_coefficients(kick)), false);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1), solver.eigenvalues()(2)};
}

Real max_band_pairing_error(Real kick) {
  Real worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Real k = (kPi / 3.0) * i / 199.0;
    worst = std::max(worst, pairing_error(solid_eigenvalues(k, kick), band_energies(k, kick).as_array()));
  }
  return worst;
}

// Distance from the nearest 3x3 eigenvalue to a single band function, worst over k.
template <typename Band>
Real max_single_band_error(Real kick, Band band) {
  Real worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Real k = (kPi / 3.0) * i / 199.0;
    const auto ev = solid_eigenvalues(k, kick);
    const Complex b = band(k);
    Real nearest = std::numeric_limits<Real>::infinity();
    for (Complex e : ev) nearest = std::min(nearest, std::abs(e - b));
    worst = std::max(worst, nearest);
  }
  return worst;
}

Real max_element_disagreement(Real kick, int l_limit) {
  const int l_max = l_limit + 3;
  const CMatrix exact = exact_kick_matrix(l_max, kick, gauss_legendre<Real>(l_max + 32));
  Real worst = 0.0;
  for (int l = 0; l <= l_limit; ++l)
    for (int lp = std::max(0, l - 3); lp <= l + 3; ++lp)
      worst = std::max(worst, std::abs(exact(l, lp) - perturbative_kick_element(l, lp, kick)));
  return worst;
}

struct SpectrumCache {
  const VerifyOptions& opts;
  std::map<Real, Spectrum> spectra;
  std::map<Real, double> seconds;

  const Spectrum& get(Real kick) {
    auto it = spectra.find(kick);
    if (it != spectra.end()) return it->second;
    const auto start = std::chrono::steady_clock::now();
    Spectrum s = eigendecompose(build_floquet(params_for(kick, opts, opts.l_max)));
    seconds[kick] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return spectra.emplace(kick, std::move(s)).first->second;
  }
};

struct BandComparison {
  std::size_t compared = 0;
  std::size_t flagged = 0;
  Real median_distance = 0.0;
  Real max_distance = 0.0;
};

BandComparison compare_bulk_to_bands(const Spectrum& s, Real kick, int l_max) {
  BandComparison out;
  std::vector<Real> distances;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const CVector v = s.state(j);
    const Real c = centroid(v);
    if (c < 9.0 || c > l_max - 12.0) continue;
    const auto k = assign_wavenumber(v);
    if (!k) {
      ++out.flagged;
      continue;
    }
    distances.push_back(distance_to_bands(s.eigenvalues(j), *k, kick));
  }
  out.compared = distances.size();
  if (!distances.empty()) {
    out.max_distance = *std::max_element(distances.begin(), distances.end());
    out.median_distance = median(distances);
  }
  return out;
}

CheckResult band_check(SpectrumCache& cache, const std::string& id, Real kick, Real median_tol,
                       std::optional<Real> max_tol, const VerifyOptions& opts) {
  const std::string title = "band reproduction, P=" + num(kick);
  if (opts.l_max < kMinTruncationForSpectralChecks) return skip(id, title, "l_max below " + std::to_string(kMinTruncationForSpectralChecks));
  const auto start = std::chrono::steady_clock::now();
  const Spectrum& s = cache.get(kick);
  const BandComparison cmp = compare_bulk_to_bands(s, kick, opts.l_max);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = cmp.compared > 0 && cmp.median_distance < median_tol;
  std::string detail = "states=" + std::to_string(cmp.compared) + " flagged=" + std::to_string(cmp.flagged) +
                       " median=" + num(cmp.median_distance) + " (<" + num(median_tol) + ")";
  if (max_tol) {
    ok = ok && cmp.max_distance < *max_tol;
    detail += " max=" + num(cmp.max_distance) + " (<" + num(*max_tol) + ")";
  } else {
    detail += " max=" + num(cmp.max_distance);
  }
  ok = ok && secs < 60.0;
  detail += " runtime=" + num(secs) + "s (<60s)";
  return make(id, title, ok, detail);
}

Real relative_slope_error(Real fitted_slope, Real decay_rate) {
  return std::abs(fitted_slope + decay_rate) / decay_rate;
}

}  // namespace

std::vector<CheckResult> acceptance_checks(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  SpectrumCache cache{opts, {}, {}};
  const bool room = opts.l_max >= kMinTruncationForSpectralChecks;
  const std::string gate = "l_max below " + std::to_string(kMinTruncationForSpectralChecks);

  // 1, 2: bulk bands
  out.push_back(band_check(cache, "A1", 0.3, 1e-2, 2e-2, opts));
  out.push_back(band_check(cache, "A2", 1.0, 0.1, std::nullopt, opts));

  // 3: edge state at P = 0.3
  if (room) {
    const Real kick = 0.3;
    const Spectrum& s = cache.get(kick);
    const int count = count_low_weight_states(s, 2, 0.8);
    const auto edge = detect_edge_state(s);
    const EdgeSolution a = solve_edge(kick);
    if (!edge) {
      out.push_back(make("A3", "edge state, P=0.3", false, "no edge state detected"));
    } else {
      const Real de = std::abs(edge->eigenvalue - a.energy);
      const Real rel = relative_slope_error(edge->fitted_slope, a.decay_rate);
      const bool ok = count == 1 && de < 1e-2 && rel < 0.15;
      out.push_back(make("A3", "edge state, P=0.3", ok,
                         "states with w(l<=2)>=0.8: " + std::to_string(count) + " (want 1); |E-E_edge|=" + num(de) +
                             " (<0.01); slope=" + num(edge->fitted_slope) + " vs -Im k=" + num(-a.decay_rate) +
                             " rel.dev=" + num(rel) + " (<0.15)"));
      if (count != 1) {
        std::string others;
        for (Eigen::Index j = 0; j < s.size(); ++j)
          if (j != edge->index && low_weight(s.state(j), 2) >= 0.8)
            others += " E=" + num(s.eigenvalues(j).real()) + (s.eigenvalues(j).imag() < 0 ? "" : "+") +
                      num(s.eigenvalues(j).imag()) + "i w=" + num(low_weight(s.state(j), 2)) +
                      " centroid=" + num(centroid(s.state(j)));
        out.push_back(info("A3-info", "other low-l states", "alpha-band state(s):" + others));
      }
    }
  } else {
    out.push_back(skip("A3", "edge state, P=0.3", gate));
  }

  // 4: edge state at P = 1
  if (room) {
    const Real kick = 1.0;
    const auto edge = detect_edge_state(cache.get(kick));
    const EdgeSolution a = solve_edge(kick);
    if (!edge) {
      out.push_back(make("A4", "edge state, P=1", false, "no edge state detected"));
    } else {
      const Real de = std::abs(edge->eigenvalue - a.energy);
      const Real rel = relative_slope_error(edge->fitted_slope, a.decay_rate);
      out.push_back(make("A4", "edge state, P=1", de < 5e-2 && rel < 0.20,
                         "|E-E_edge|=" + num(de) + " (<0.05); slope=" + num(edge->fitted_slope) +
                             " vs -Im k=" + num(-a.decay_rate) + " rel.dev=" + num(rel) + " (<0.2)"));
    }
  } else {
    out.push_back(skip("A4", "edge state, P=1", gate));
  }

  // 5: non-perturbative probe
  if (room) {
    bool ok = true;
    std::string detail;
    for (Real kick : {2.0, 3.0}) {
      EdgeSearch search;
      search.l_window = 3;
      search.threshold = 0.5;
      const auto edge = detect_edge_state(cache.get(kick), search);
      const EdgeSolution a = solve_edge(kick);
      detail += "P=" + num(kick) + ": ";
      if (!edge) {
        ok = false;
        detail += "no state with w(l<=3)>=0.5; ";
        continue;
      }
      const Real rel = relative_slope_error(edge->fitted_slope, a.decay_rate);
      ok = ok && rel < 0.40;
      detail += "w(l<=3)=" + num(edge->weight_low) + " slope=" + num(edge->fitted_slope) + " vs -Im k=" +
                num(-a.decay_rate) + " rel.dev=" + num(rel) + " (<0.4); ";
    }
    out.push_back(make("A5", "non-perturbative edge probe, P=2,3", ok, detail));
  } else {
    out.push_back(skip("A5", "non-perturbative edge probe, P=2,3", gate));
  }

  // 6: dispersion round trip
  {
    Real worst = 0.0;
    for (Real kick : {0.1, 0.3, 1.0})
      for (int i = 0; i < 200; ++i) {
        const Real k = (kPi / 3.0) * i / 199.0;
        worst = std::max(worst, std::abs(dispersion_gamma(perturbative_E1(k, kick, Branch::minus), kick) -
                                         gamma_of_k(k)));
      }
    out.push_back(make("A6", "dispersion round trip", worst < 1e-12, "max=" + num(worst) + " (<1e-12)"));
  }

  // 7: cubic degeneracy at P = 0
  {
    Real worst = 0.0;
    for (Real gamma : {2.0, 0.0, -2.0}) {
      const auto roots = solve_cubic(characteristic_cubic(0.0, gamma));
      worst = std::max(worst, pairing_error(roots, {1.0, 1.0, kAlpha}));
    }
    out.push_back(make("A7", "cubic roots at P=0 are {1,1,alpha}", worst < 1e-12, "max=" + num(worst) + " (<1e-12)"));
  }

  // 8: solid-matrix eigenvalues against the perturbative bands
  {
    const Real e1 = max_band_pairing_error(0.1);
    const Real e2 = max_band_pairing_error(0.2);
    const Real ratio = e2 / e1;
    out.push_back(make("A8", "perturbative bands vs 3x3 eigenvalues", e1 < 5e-4 && ratio >= 10.0 && ratio <= 25.0,
                       "err(0.1)=" + num(e1) + " (<5e-4) ratio err(0.2)/err(0.1)=" + num(ratio) + " (in [10,25])"));
    std::string detail;
    for (Real kick : {0.1, 0.2}) {
      const Real plus = max_single_band_error(kick, [&](Real k) { return perturbative_E1(k, kick, Branch::plus); });
      const Real minus = max_single_band_error(kick, [&](Real k) { return perturbative_E1(k, kick, Branch::minus); });
      const Real e20 = max_single_band_error(kick, [&](Real k) { return perturbative_E2(k, kick); });
      // E1 minus with the sign of its gamma term reversed
      const Real flipped = max_single_band_error(kick, [&](Real k) {
        const Complex ac = std::conj(kAlpha);
        return 1.0 - kI * 0.5 * kick +
               (-3.0 * (1.0 + ac) * gamma_of_k(k) - 12.0 * ac) / (48.0 * (ac - 1.0)) * kick * kick;
      });
      detail += "P=" + num(kick) + ": E1+=" + num(plus) + " E1-=" + num(minus) + " E20=" + num(e20) +
                " E1-(gamma sign flipped)=" + num(flipped) + "; ";
    }
    out.push_back(info("A8-info", "per-band errors", detail));
  }

  // 9: closed-form elements against quadrature
  {
    const Real worst = max_element_disagreement(0.1, 50);
    out.push_back(make("A9", "perturbative vs exact elements, P=0.1", worst < 1e-4, "max=" + num(worst) + " (<1e-4)"));
  }

  // 10: unitarity and parity
  {
    Real parity = 0.0;
    for (Real kick : {0.1, 0.3, 1.0}) {
      const CMatrix tp = exact_kick_matrix(60, kick, gauss_legendre<Real>(96));
      for (int l = 0; l <= 60; ++l)
        for (int lp = 0; lp <= 60; ++lp)
          parity = std::max(parity, (l - lp) % 2 == 0 ? std::abs(tp(l, lp).imag()) : std::abs(tp(l, lp).real()));
    }
    if (room) {
      Real unit = 0.0;
      for (Real kick : {0.1, 0.3, 1.0}) {
        const FloquetMatrix t = build_floquet(params_for(kick, opts, opts.l_max));
        for (int c = 3; c <= opts.l_max - 12; ++c) unit = std::max(unit, std::abs(t.entries().col(c).norm() - 1.0));
      }
      out.push_back(make("A10", "unitarity and parity", unit < 1e-8 && parity < 1e-12,
                         "max|col norm-1|=" + num(unit) + " (<1e-8) parity=" + num(parity) + " (<1e-12)"));
    } else {
      out.push_back(skip("A10", "unitarity and parity", gate + " (parity=" + num(parity) + ")"));
    }
  }

  // 11: edge closed form
  {
    Real residual = 0.0;
    for (Real kick : {0.1, 0.3, 1.0}) residual = std::max(residual, std::abs(edge_quadratic(kick)(edge_energy(kick))));
    const Complex e0 = edge_energy(0.0);
    const bool at_one = std::abs(e0 - 1.0) <= 4.0 * std::numeric_limits<Real>::epsilon();
    Real jump = 0.0;
    for (int i = 0; i < 100; ++i) jump = std::max(jump, std::abs(edge_energy((i + 1) * 0.01) - edge_energy(i * 0.01)));
    out.push_back(make("A11", "edge energy closed form", residual < 1e-12 && at_one && jump < 0.05,
                       "residual=" + num(residual) + " (<1e-12) |E_edge(0)-1|=" + num(std::abs(e0 - 1.0)) +
                           " max step=" + num(jump) + " (<0.05)"));
  }

  // 12: dynamics
  if (room) {
    Real drift = 0.0;
    for (Real kick : {0.3, 1.0}) {
      const FloquetMatrix t = build_floquet(params_for(kick, opts, opts.l_max));
      const Spectrum& s = cache.get(kick);
      const auto edge = detect_edge_state(s);
      if (!edge) {
        drift = std::numeric_limits<Real>::infinity();
        continue;
      }
      WaveState w;
      w.amplitudes = s.state(edge->index);
      const Trajectory traj = propagate(w, t, 100);
      const Real e0 = traj.records.front().energy;
      for (const auto& r : traj.records) drift = std::max(drift, std::abs(r.energy - e0) / e0);
    }
    const int probe_l_max = 2 * opts.l_max;
    const FloquetMatrix t = build_floquet(params_for(1.0, opts, probe_l_max));
    const Trajectory traj = propagate(WaveState::delta(probe_l_max + 1, 0), t, 40);
    const Real exponent = growth_exponent(traj, 5, 40);
    out.push_back(make("A12", "edge pinning and ballistic growth", drift < 1e-6 && exponent >= 1.5 && exponent <= 2.2,
                       "edge energy drift=" + num(drift) + " (<1e-6); delta_0 exponent over kicks 5-40 at P=1, l_max=" +
                           std::to_string(probe_l_max) + ": " + num(exponent) + " (in [1.5,2.2])"));

    const int long_l_max = std::max(600, probe_l_max);
    const FloquetMatrix tl = build_floquet(params_for(1.0, opts, long_l_max));
    const Trajectory long_traj = propagate(WaveState::delta(long_l_max + 1, 0), tl, 400);
    out.push_back(info("A12-info", "later growth windows",
                       "delta_0, P=1, l_max=" + std::to_string(long_l_max) + ": exponent kicks 40-100=" +
                           num(growth_exponent(long_traj, 40, 100)) +
                           " kicks 100-400=" + num(growth_exponent(long_traj, 100, 400))));
  } else {
    out.push_back(skip("A12", "edge pinning and ballistic growth", gate));
  }

  return out;
}

std::vector<CheckResult> property_checks(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const bool room = opts.l_max >= kMinTruncationForSpectralChecks;
  const std::string gate = "l_max below " + std::to_string(kMinTruncationForSpectralChecks);

  // specfun
  {
    Real worst = 0.0;
    bool ordered = true;
    for (int order : {1, 2, 5, 64, 200}) {
      const auto q = gauss_legendre<Real>(order);
      worst = std::max(worst, std::abs(q.weights.sum() - 2.0));
      for (int i = 0; i < order; ++i) {
        worst = std::max(worst, std::abs(q.nodes(i) + q.nodes(order - 1 - i)));
        if (i > 0 && !(q.nodes(i) > q.nodes(i - 1))) ordered = false;
      }
    }
    out.push_back(make("S1", "quadrature weights and symmetry", worst < 1e-12 && ordered, "max dev=" + num(worst)));
  }
  {
    const int n = 40;
    const auto q = gauss_legendre<Real>(96);
    Eigen::MatrixXd table(q.order, n + 1);
    for (int i = 0; i < q.order; ++i) table.row(i) = legendre_sequence(n, q.nodes(i)).transpose();
    Real worst = 0.0, asym = 0.0;
    for (int k = 0; k <= n; ++k)
      for (int l = k; l <= n; ++l)
        for (int m = l; m <= n; ++m) {
          const Real quad = (q.weights.array() * table.col(k).array() * table.col(l).array() * table.col(m).array()).sum();
          const Real closed = triple_legendre_integral(k, l, m);
          worst = std::max(worst, std::abs(quad - closed));
          asym = std::max({asym, std::abs(closed - triple_legendre_integral(m, k, l)),
                           std::abs(closed - triple_legendre_integral(l, m, k))});
        }
    out.push_back(make("S2", "triple Legendre integral vs quadrature (<=40)", worst < 1e-10 && asym < 1e-14,
                       "max=" + num(worst) + " (<1e-10) permutation asym=" + num(asym)));
  }
  {
    Real worst = 0.0;
    for (int k = 0; k <= 20; ++k)
      for (int l = 0; l <= 20; ++l) {
        Real sum = 0.0;
        for (int m = std::abs(k - l); m <= k + l; ++m) {
          const Real w = wigner3j_zero(k, l, m);
          sum += (2 * m + 1) * w * w;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    out.push_back(make("S3", "3j orthogonality (k,l<=20)", worst < 1e-10, "max=" + num(worst) + " (<1e-10)"));
  }

  // floquet
  {
    const Real e1 = max_element_disagreement(0.1, 50);
    const Real e2 = max_element_disagreement(0.2, 50);
    const Real ratio = e2 / e1;
    out.push_back(make("F1", "element agreement is O(P^4)", e1 <= 1e-4 && ratio >= 10.0 && ratio <= 25.0,
                       "err(0.1)=" + num(e1) + " (<=P^4=1e-4) ratio=" + num(ratio) + " (in [10,25])"));
  }
  {
    const int n = std::max(opts.l_max, 60);
    Real worst = 0.0;
    for (Real kick : {0.3, 1.0, 3.0}) {
      const CMatrix tp = exact_kick_matrix(n, kick, gauss_legendre<Real>(std::max(64, n + 16)));
      for (int l = 0; l <= n; ++l)
        for (int lp = 0; lp <= n; ++lp)
          if (std::abs(l - lp) > 3.0 * kick + 15.0) worst = std::max(worst, std::abs(tp(l, lp)));
    }
    out.push_back(make("F2", "exact kick matrix is banded", worst <= 1e-10, "max beyond 3P+15=" + num(worst)));
  }
  {
    bool periodic = true;
    for (int l = 0; l <= 1000; ++l)
      if (kinetic_phase(l + 3, Rational(1, 3)) != kinetic_phase(l, Rational(1, 3))) periodic = false;
    out.push_back(make("F3", "kinetic phase has period 3", periodic, periodic ? "l<=1000" : "mismatch"));
  }
  {
    const Real dev = std::abs(perturbative_kick_element(200, 200, 0.3) - large_l_coefficients(0.3).A);
    out.push_back(make("F4", "main diagonal tends to A", dev < 1e-5, "|T(200,200)-A|=" + num(dev)));
  }

  // spectral
  if (room) {
    Real worst = 0.0;
    bool complete = true, same = true;
    for (Real kick : {0.3, 1.0}) {
      const FloquetMatrix t = build_floquet(params_for(kick, opts, opts.l_max));
      const Spectrum s = eigendecompose(t);
      const Spectrum again = eigendecompose(t);
      complete = complete && s.size() == opts.l_max + 1;
      same = same && s.eigenvalues == again.eigenvalues;
      for (Eigen::Index j = 0; j < s.size(); ++j)
        if (centroid(s.state(j)) < opts.l_max - 12) worst = std::max(worst, std::abs(std::abs(s.eigenvalues(j)) - 1.0));
    }
    out.push_back(make("SP1", "spectrum complete, interior on unit circle, deterministic", complete && same && worst < 1e-6,
                       "max||E|-1|=" + num(worst) + " (<1e-6)"));
  } else {
    out.push_back(skip("SP1", "spectrum complete, interior on unit circle, deterministic", gate));
  }

  // tightbinding
  {
    Real worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Real k = (kPi / 3.0) * i / 49.0;
      const auto a = characteristic_polynomial(solid_matrix(k, large_l_coefficients(0.1)));
      const auto b = characteristic_cubic(0.1, gamma_of_k(k));
      worst = std::max({worst, std::abs(a.c2 - b.c2), std::abs(a.c1 - b.c1), std::abs(a.c0 - b.c0)});
    }
    out.push_back(make("T1", "char. polynomial of solid matrix vs cubic", worst < 5e-4, "max coeff diff=" + num(worst)));
  }
  {
    Real worst = 0.0;
    for (Real kick : {0.1, 0.2, 0.3})
      for (int i = 0; i < 50; ++i) {
        const Real k = (kPi / 3.0) * i / 49.0;
        worst = std::max(worst, std::abs(characteristic_cubic(kick, gamma_of_k(k))(perturbative_E2(k, kick))) /
                                    std::pow(kick, 4));
      }
    out.push_back(make("T2", "E20 satisfies the cubic to O(P^4)", worst <= 10.0, "max residual/P^4=" + num(worst)));
  }
  {
    Real worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Real k = 0.05 * i;
      const auto a = band_energies(k, 0.3).as_array();
      const auto b = band_energies(-k, 0.3).as_array();
      for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    }
    out.push_back(make("T3", "bands are even in k", worst < 1e-14, "max=" + num(worst)));
  }

  // edge
  {
    const Real kick = 0.1;
    const CMatrix2 t0 = edge_matrix(kick);
    const Real det = std::abs((t0 - edge_energy(kick) * CMatrix2::Identity()).determinant());
    Real modulus = 0.0;
    bool monotone = true, positive = true;
    Real prev = std::numeric_limits<Real>::infinity();
    for (int i = 1; i <= 100; ++i) {
      const Real p = 0.01 * i;
      modulus = std::max(modulus, std::abs(std::abs(edge_energy(p)) - 1.0) / (0.5 * p * p));
      const Real rate = edge_wavenumber(p).imag();
      if (!(rate < prev)) monotone = false;
      prev = rate;
    }
    for (Real p : {0.1, 0.5, 1.0, 2.0, 3.0}) positive = positive && edge_wavenumber(p).imag() > 0.0;
    const bool t10 = std::abs(t0(1, 0) - kAlpha * t0(0, 1)) == 0.0;
    out.push_back(make("E1", "edge block and wavenumber properties",
                       det <= std::pow(kick, 4) / 50.0 && modulus <= 1.0 && monotone && positive && t10,
                       "|det(T0-E)|=" + num(det) + " (<=P^4/50) max||E|-1|/(P^2/2)=" + num(modulus) +
                           (monotone ? " Im k decreasing in P" : " Im k NOT monotone")));
  }

  // dynamics
  if (room) {
    const FloquetMatrix t = build_floquet(params_for(1.0, opts, opts.l_max));
    const WaveState a = WaveState::gaussian(opts.l_max + 1, opts.l_max / 2.0, 3.0);
    const WaveState b = WaveState::delta(opts.l_max + 1, opts.l_max / 2);
    const Trajectory ta = propagate(a, t, 20);
    Real norm_dev = 0.0;
    for (const auto& r : ta.records) norm_dev = std::max(norm_dev, std::abs(r.norm - 1.0));
    WaveState mix;
    const Complex ca(0.6, -0.2), cb(-0.3, 0.7);
    mix.amplitudes = ca * a.amplitudes + cb * b.amplitudes;
    const Trajectory tb = propagate(b, t, 20);
    const Trajectory tm = propagate(mix, t, 20);
    const Real lin = (tm.final_state - ca * ta.final_state - cb * tb.final_state).norm();
    out.push_back(make("D1", "norm conservation and linearity", norm_dev < 1e-8 && lin < 1e-10,
                       "max|norm-1|=" + num(norm_dev) + " linearity=" + num(lin)));
  } else {
    out.push_back(skip("D1", "norm conservation and linearity", gate));
  }

  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const auto& r) { return r.status == CheckStatus::fail; });
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skip: return "SKIP";
    case CheckStatus::info: return "INFO";
  }
  return "?";
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    char head[96];
    std::snprintf(head, sizeof(head), "[%s] %-8s %-56s ", to_string(r.status), r.id.c_str(), r.title.c_str());
    os << head << r.detail << "\n";
  }
}

}  // namespace kr
