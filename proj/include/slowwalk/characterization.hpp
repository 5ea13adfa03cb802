#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slowwalk/bigint.hpp"
#include "slowwalk/core_sequences.hpp"
#include "slowwalk/real.hpp"

namespace slowwalk {

/// The unique triple (a, b, t) with n = a*g_t + beta*b*g_{t-1}, 1 <= b <= g_t,
/// a <= (beta-1)*g_{t+1} + alpha*b and (a, b) t-divisible. Then s(n) = t + 1
/// and (b, a) is the n-good pair with the smallest first term.
///
/// When s(n) = 2 every (x, n) is n-good; such certificates are `degenerate`
/// and carry t = 0, a = b = 0.
struct Certificate {
  Params params;
  BigInt n;
  long s = 2;
  bool degenerate = true;
  long t = 0;
  BigInt a;
  BigInt b;
};

struct GoodPair {
  BigInt b;  // w_1
  BigInt a;  // w_2
  friend bool operator==(const GoodPair&, const GoodPair&) = default;
};

struct GoodPairFamily {
  Certificate cert;
  std::vector<GoodPair> pairs;  // pairs[k] = (b + k*g_t, a - k*beta*g_{t-1})
};

/// Number of n-good pairs; unbounded when s(n) = 2.
class PairCount {
 public:
  static PairCount unbounded() { return PairCount(); }
  static PairCount finite(std::int64_t value) { return PairCount(value); }

  bool is_unbounded() const { return !value_.has_value(); }
  std::int64_t value() const { return value_.value(); }
  // p(n) > p, with an unbounded count exceeding every p.
  bool exceeds(std::int64_t p) const { return is_unbounded() || *value_ > p; }

  friend bool operator==(const PairCount&, const PairCount&) = default;

 private:
  PairCount() = default;
  explicit PairCount(std::int64_t v) : value_(v) {}
  std::optional<std::int64_t> value_;
};

using DivisibilityTest = bool (*)(const Params&, const BigInt& a, const BigInt& b, long t);

// True iff a - alpha*b - l*g_{t+1} is not a positive multiple of beta for any
// l >= 0.
bool is_t_divisible(const Params& params, const BigInt& a, const BigInt& b, long t);

struct Triple {
  long t;
  BigInt a;
  BigInt b;
};

// The candidate at index t: the unique (a, b) with n = a*g_t + beta*b*g_{t-1}
// and 1 <= b <= g_t. `a` may be nonpositive.
Triple candidate_at(const Params& params, const BigInt& n, long t);

// Whether a candidate satisfies every condition of the characterization.
bool is_valid_triple(const Params& params, const Triple& triple, DivisibilityTest divisible = is_t_divisible);

// Every valid triple for n, scanning all t with g_t + beta*g_{t-1} <= n.
std::vector<Triple> find_triples(const Params& params, const BigInt& n,
                                 DivisibilityTest divisible = is_t_divisible);

// Throws ConsistencyError if more than one triple is valid, or none is valid
// although n > alpha*beta.
Certificate characterize(const Params& params, const BigInt& n);
Certificate characterize(const Params& params, const BigInt& n, DivisibilityTest divisible);

GoodPairFamily enumerate_good_pairs(const Certificate& cert);

PairCount pair_count(const Certificate& cert);
PairCount p_of_n(const Params& params, const BigInt& n);

// Beta = 1 path: walk backwards from (floor(gamma*n), n) and (ceil(gamma*n), n)
// and keep the longer positive run. Requires beta = 1 and n > alpha.
Certificate reverse_walk_beta1(const Params& params, const BigInt& n);

struct NextValue {
  std::int64_t k;
  BigInt value;  // w_{s+1}(b + k*g_t, a - k*beta*g_{t-1})
};

// w_{s+1} for every good pair, checked against the shift law
// w_{s+1}(k) - w_{s+1}(0) = -k*(-beta)^t (b grows with k, so the signed
// shift b' = b - j*g_t has j = -k) and, for beta = 1, against
// floor(gamma*n) - k (t even) / ceil(gamma*n) + k (t odd).
// Throws ConsistencyError on any mismatch.
std::vector<NextValue> w_next_values(const Certificate& cert);

struct DriftCheck {
  Real drift;            // |w_{s+1}(b, a) - gamma*n|
  Real closed_form;      // |lambda^t (gamma*b - a)|
  BigInt bound;          // 2*beta^{t+1}
  bool matches = false;  // drift == closed_form to relative 1e-6
  bool within_bound = false;
  bool ok() const { return matches && within_bound; }
};

DriftCheck drift_bound_check(const Certificate& cert);

}  // namespace slowwalk
