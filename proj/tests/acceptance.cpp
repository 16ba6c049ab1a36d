// One line per acceptance criterion at the default truncation (l_max = 150).
#include "kickrotor/verify.hpp"

#include <iostream>

int main() {
  const auto results = kr::acceptance_checks({});
  kr::print_results(std::cout, results);
  int failed = 0;
  for (const auto& r : results) failed += r.status == kr::CheckStatus::fail;
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
