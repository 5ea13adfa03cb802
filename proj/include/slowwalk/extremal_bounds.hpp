#pragma once

#include <cstdint>
#include <vector>

#include "slowwalk/bigint.hpp"
#include "slowwalk/characterization.hpp"
#include "slowwalk/core_sequences.hpp"

namespace slowwalk {

/// n_t = beta*g_t*g_{t+1}, whose certificate is
/// (a_t, b_t, t) = ((beta-1)*g_{t+1} + alpha*g_t, g_t, t).
struct ExtremalWitness {
  Params params;
  long t;
  BigInt n;
  BigInt a;
  BigInt b;
};

// Builds the witness and checks it against characterize(); throws
// ConsistencyError on mismatch.
ExtremalWitness extremal_witness(const Params& params, long t);

// alpha^2 + 2*beta - 1: the largest p(n) over all n with s(n) > 2.
std::int64_t max_p_bound(const Params& params);

// ceil(gamma^2) - 1, computed as beta + ceil(alpha*gamma) - 1 and as
// alpha^2 + beta + ceil(alpha*beta/gamma) - 1; throws if they differ.
std::int64_t recurrent_p_value(const Params& params);

/// k_t = the largest integer with alpha*beta*g_{t-2} > k_t*g_{t-1}; then
/// p(n_t) = alpha^2 + beta + k_t.
struct KtStabilization {
  long t_lo;
  long t_hi;
  std::vector<std::int64_t> k;  // k[i] = k_{t_lo + i}
  std::int64_t limit;           // ceil(alpha*beta/gamma) - 1
  bool stable;                  // k_t == limit on the whole window
  long onset;                   // first t from which k_t == limit through t_hi; 0 if none
};

std::int64_t k_t(const Params& params, long t);
KtStabilization k_t_stabilization(const Params& params, long t_lo = 5, long t_hi = 30);

// alpha >= beta.
bool infinitely_max_iff(const Params& params);

/// Empirical frequency of p(n) = alpha^2 + 2*beta - 1 over [1, n_max], split
/// into equal windows.
struct MaxAttainmentScan {
  std::int64_t n_max;
  std::int64_t bound;
  std::vector<std::int64_t> window_counts;
  std::vector<std::int64_t> hits;  // first few attaining n
};

MaxAttainmentScan scan_max_attainment(const Params& params, std::int64_t n_max, int windows = 10);

// Largest s >= 2 with n > beta*g_{s-1}*g_{s-2}; a lower bound for s(n).
long s_lower_chicken(const Params& params, const BigInt& n);

struct SBounds {
  double lower;  // (1/2)log_gamma(n) - 1, or (1/2)log_phi(n) + 2 for (1,1)
  double upper;  // log_gamma(n) + 2
};

// Reporting envelope for s(n); requires s(n) > 2.
SBounds s_bounds(const Params& params, const BigInt& n);

/// Exact evaluation of the envelope for a given s, via the equivalent power
/// comparisons gamma^{s-2} <= n and n <= gamma^{2s+2} (n <= phi^{2s-4} for
/// the Fibonacci refinement). No logarithms are rounded.
struct SBoundCheck {
  bool upper_ok;
  bool lower_ok;
  bool fibonacci_ok;  // vacuously true unless (alpha, beta) = (1, 1)
  bool ok() const { return upper_ok && lower_ok && fibonacci_ok; }
};

SBoundCheck check_s_bounds(const Params& params, const BigInt& n, long s);

}  // namespace slowwalk
