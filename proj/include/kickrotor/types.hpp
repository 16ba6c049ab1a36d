#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kr {

using Real = double;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CMatrix3 = Eigen::Matrix3cd;
using CMatrix2 = Eigen::Matrix2cd;

inline constexpr Real kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// alpha = exp(2 pi i / 3), the kinetic phase of the l = 1 (mod 3) sites at tau = 4 pi / 3.
inline const Complex kAlpha = std::polar(1.0, 2.0 * kPi / 3.0);

/// Invalid user configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not meet its contract (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational a/b with b > 0, kept in lowest terms.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 3;

  Rational() = default;
  Rational(std::int64_t a, std::int64_t b);

  /// Parses "a/b" or a bare integer "a".
  static Rational parse(const std::string& text);

  double value() const { return double(num) / double(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class BuildMode { exact, perturbative };

const char* to_string(BuildMode mode);
BuildMode parse_build_mode(const std::string& text);

}  // namespace kr
