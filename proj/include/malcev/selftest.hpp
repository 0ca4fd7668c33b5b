/*! \file selftest.hpp
 *  \brief The acceptance suite: nine exact desk-scale criteria, runnable from
 *         the CLI (`malcev selftest`) and from the test harness.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace malcev {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // populated on failure or for notable counts
};

/// Runs all criteria in order; prints one pass/fail line per criterion to
/// `out` when given.
std::vector<CriterionResult> run_acceptance(std::ostream* out = nullptr);

}  // namespace malcev
