#include "kickrotor/types.hpp"

#include <charconv>
#include <numeric>

namespace kr {

Rational::Rational(std::int64_t a, std::int64_t b) {
  if (b == 0) throw ConfigError("rational with zero denominator");
  if (b < 0) {
    a = -a;
    b = -b;
  }
  const std::int64_t g = std::gcd(a, b);
  num = g ? a / g : a;
  den = g ? b / g : b;
}

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw ConfigError("cannot parse rational '" + whole + "' (expected a/b)");
  return v;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text, text), 1);
  const std::string_view sv(text);
  return Rational(parse_int(sv.substr(0, slash), text), parse_int(sv.substr(slash + 1), text));
}

const char* to_string(BuildMode mode) {
  return mode == BuildMode::exact ? "exact" : "perturbative";
}

BuildMode parse_build_mode(const std::string& text) {
  if (text == "exact") return BuildMode::exact;
  if (text == "perturbative") return BuildMode::perturbative;
  throw ConfigError("unknown mode '" + text + "' (expected exact|perturbative)");
}

}  // namespace kr
