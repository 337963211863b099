// Acceptance harness: runs the twelve desk-scale checks and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.
#include <cstring>
#include <iostream>

#include "suite.hpp"

int main(int argc, char** argv) {
  bergman::SuiteConfig cfg;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) cfg.quick = true;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) cfg.seed = std::strtoull(argv[++i], nullptr, 10);
  }
  const auto results = bergman::run_acceptance_suite(cfg, &std::cerr);
  bergman::print_suite_lines(results, std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILING") << " (" << failures
            << " failing)\n";
  return failures;
}
