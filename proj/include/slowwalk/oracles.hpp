#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slowwalk/characterization.hpp"
#include "slowwalk/core_sequences.hpp"

namespace slowwalk {

/// Result of an independent s(n) computation. Pairs are (w_1, w_2) sorted by
/// w_1. When s = 2 the good pairs are (x, n) for every x; the Diophantine
/// oracle then returns no pairs and the brute force returns (x, n) for x up
/// to its cap.
struct OracleResult {
  long s = 2;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
};

// Descends s from floor(log_gamma(n)) + 3 and solves n = a*g_{s-1} + beta*b*g_{s-2}
// over b directly. Uses its own 64-bit g table; n must fit in 62 bits.
OracleResult s_oracle_diophantine(const Params& params, std::int64_t n);

inline constexpr std::int64_t kBruteForceCap = 500;

// Walks every seed (a1, a2) in [1, n]^2 and records the latest index at which
// n appears. Refuses n > cap.
OracleResult s_oracle_bruteforce(const Params& params, std::int64_t n, std::int64_t cap = kBruteForceCap);

// First disagreement between a certificate with its good-pair family and an
// oracle result, or nullopt when s and the pair sets match. For s = 2 only s
// is compared, since the family (x, n) is infinite.
std::optional<std::string> oracle_mismatch(const Certificate& cert, const OracleResult& oracle);

}  // namespace slowwalk
