// Special functions behind the kick matrix elements: Legendre polynomials,
// Gauss-Legendre rules, and zero-projection Wigner 3j symbols.
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace kr {

/// P_n(x) by the upward three-term recurrence.
template <typename Scalar>
Scalar legendre(int n, Scalar x) {
  using std::abs;
  if (n < 0) throw std::invalid_argument("legendre: negative degree");
  if (abs(x) > Scalar(1) + Scalar(1e-12))
    throw std::domain_error("legendre: |x| > 1 (x = " + std::to_string(double(x)) + ")");
  Scalar p_prev(1);
  if (n == 0) return p_prev;
  Scalar p = x;
  for (int k = 1; k < n; ++k) {
    const Scalar p_next = (Scalar(2 * k + 1) * x * p - Scalar(k) * p_prev) / Scalar(k + 1);
    p_prev = p;
    p = p_next;
  }
  return p;
}

/// Values P_0(x) .. P_{n_max}(x) in one pass.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> legendre_sequence(int n_max, Scalar x) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p(n_max + 1);
  p(0) = Scalar(1);
  if (n_max >= 1) p(1) = x;
  for (int k = 1; k < n_max; ++k)
    p(k + 1) = (Scalar(2 * k + 1) * x * p(k) - Scalar(k) * p(k - 1)) / Scalar(k + 1);
  return p;
}

template <typename Scalar>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int order = 0;
  Vector nodes;    // strictly increasing in (-1, 1)
  Vector weights;  // positive, summing to 2

  /// Integral of f over [-1, 1].
  template <typename F>
  auto integrate(F&& f) const {
    decltype(f(Scalar(0))) sum{};
    for (int i = 0; i < order; ++i) sum += weights(i) * f(nodes(i));
    return sum;
  }
};

/// Gauss-Legendre rule of the given order. Nodes come from Newton iteration on
/// the Legendre recurrence; the negative half mirrors the positive half so the
/// rule is exactly symmetric.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre(int order) {
  using std::abs;
  using std::cos;
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

  QuadratureRule<Scalar> rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);

  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar z = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
    Scalar dp(0);
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0(1), p1 = z;
      for (int k = 1; k < order; ++k) {
        const Scalar p2 = (Scalar(2 * k + 1) * z * p1 - Scalar(k) * p0) / Scalar(k + 1);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(z), p0 = P_{n-1}(z)
      dp = Scalar(order) * (z * p1 - p0) / (z * z - Scalar(1));
      const Scalar dz = p1 / dp;
      z -= dz;
      if (abs(dz) < Scalar(1e-15)) break;
    }
    // refresh the derivative at the converged node
    {
      Scalar p0(1), p1 = z;
      for (int k = 1; k < order; ++k) {
        const Scalar p2 = (Scalar(2 * k + 1) * z * p1 - Scalar(k) * p0) / Scalar(k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = (order == 1) ? Scalar(1) : Scalar(order) * (z * p1 - p0) / (z * z - Scalar(1));
    }
    if (2 * i + 1 == order) z = Scalar(0);
    const Scalar w = Scalar(2) / ((Scalar(1) - z * z) * dp * dp);
    rule.nodes(order - 1 - i) = z;
    rule.nodes(i) = -z;
    rule.weights(order - 1 - i) = w;
    rule.weights(i) = w;
  }
  return rule;
}

namespace detail {

inline double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(4097);
    t[0] = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] + std::log(double(k));
    return t;
  }();
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (static_cast<std::size_t>(n) < table.size()) return table[n];
  return std::lgamma(double(n) + 1.0);
}

}  // namespace detail

/// The 3j symbol (k l m; 0 0 0). Zero unless k+l+m is even and the triangle
/// condition holds. Evaluated in log space, so large arguments do not overflow.
template <typename Scalar = double>
Scalar wigner3j_zero(int k, int l, int m) {
  if (k < 0 || l < 0 || m < 0) throw std::invalid_argument("wigner3j_zero: negative argument");
  const int two_s = k + l + m;
  if (two_s % 2 != 0) return Scalar(0);
  if (m < std::abs(k - l) || m > k + l) return Scalar(0);
  const int s = two_s / 2;
  using detail::log_factorial;
  const double log_value =
      0.5 * (log_factorial(2 * s - 2 * k) + log_factorial(2 * s - 2 * l) +
             log_factorial(2 * s - 2 * m) - log_factorial(2 * s + 1)) +
      log_factorial(s) - log_factorial(s - k) - log_factorial(s - l) - log_factorial(s - m);
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  return Scalar(sign * std::exp(log_value));
}

/// Integral over [-1, 1] of P_k P_l P_m, which equals 2 (k l m; 0 0 0)^2.
template <typename Scalar = double>
Scalar triple_legendre_integral(int k, int l, int m) {
  const Scalar w = wigner3j_zero<Scalar>(k, l, m);
  return Scalar(2) * w * w;
}

}  // namespace kr
