#pragma once

#include <string>
#include <vector>

#include "slowwalk/characterization.hpp"

namespace slowwalk::cli {

struct SelftestOptions {
  bool quick = false;  // n-caps reduced tenfold
  // Predicate used by the characterization suites; replaceable so that a
  // deliberately broken predicate can prove the suites detect it.
  DivisibilityTest divisible = is_t_divisible;
};

struct SelftestRow {
  std::string label;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

std::vector<SelftestRow> run_selftest(const SelftestOptions& options);

// is_t_divisible with the zero boundary mishandled: a - alpha*b - l*g_{t+1}
// equal to zero is treated as a positive multiple of beta.
bool off_by_one_divisibility(const Params& params, const BigInt& a, const BigInt& b, long t);

}  // namespace slowwalk::cli
