// Acceptance suite: runs every criterion and prints one pass/fail line each.
#include <iostream>

#include "blockline/bench.hpp"

int main() {
  std::vector<blockline::bench::CriterionResult> results = blockline::bench::run_acceptance();
  bool ok = blockline::bench::report(std::cout, results);
  return ok ? 0 : 1;
}
