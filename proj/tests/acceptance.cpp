// Runs the full acceptance suite; one line per criterion, nonzero exit on
// any failure.

#include <iostream>

#include "malcev/selftest.hpp"

int main() {
  const auto results = malcev::run_acceptance(&std::cout);
  int failures = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failures;
  }
  if (failures != 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all " << results.size() << " criteria passed\n";
  return 0;
}
