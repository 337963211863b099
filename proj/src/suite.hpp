#pragma once

#include <iosfwd>

#include "criteria.hpp"

namespace bergman {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double achieved = 0.0;   // worst constant/error observed
  double threshold = 0.0;  // what it must stay within
  std::string detail;
};

struct SuiteConfig {
  uint64_t seed = 42;
  bool quick = false;  // reduced sizes for smoke testing; the acceptance
                       // preset is the default (quick = false)
};

// Runs the twelve desk-scale checks; one result per criterion.
std::vector<CheckResult> run_acceptance_suite(const SuiteConfig& cfg = {},
                                              std::ostream* progress = nullptr);

void print_suite_lines(const std::vector<CheckResult>& results, std::ostream& os);
std::string suite_to_json(const std::vector<CheckResult>& results);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bergman
