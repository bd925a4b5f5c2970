#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qot/transcript.h"

namespace qot {

struct CheckLine {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool passed = false;
};

struct OracleReport {
  int n = 0;
  std::vector<CheckLine> checks;

  bool all_passed() const;
  Json to_json() const;
  std::string to_text() const;
};

// Dense identities for ρ±, P±, R_π and C_sgn, each compared at 1e-9. Only
// n = 6 satisfies both n = 2(2m+1) and n! <= 5040.
OracleReport oracle_report(int n, std::uint64_t seed);

// Correct-key and wrong-key distinguishing over `trials` samples of each
// branch, by circuit and by measurement.
Json distinguish_report(int n, std::uint64_t trials, std::uint64_t seed);

// Brute-force count of fixed-point-free involutions in S_n (n <= 10).
Json enumerate_k_report(int n);

// (n-1)!! for even n; 0 for odd n.
std::uint64_t double_factorial_odd(int n);

}  // namespace qot
