#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slowwalk/bigint.hpp"
#include "slowwalk/characterization.hpp"
#include "slowwalk/core_sequences.hpp"
#include "slowwalk/real.hpp"

namespace slowwalk {

// floor(c*beta/(gamma - lambda)^2 * gamma^{2r+1}), escalating precision when
// the value sits within 2^-32 of an integer.
BigInt n_cr(const Params& params, double c, long r);

struct DDelta {
  long d;      // smallest integer with beta*p/gamma - gamma*d <= alpha
  Real delta;  // beta*p/gamma - gamma*d
};

// Throws ConsistencyError if 0 <= d <= beta-1 or alpha-gamma < delta <= alpha
// fails while 1 <= p <= ceil(gamma^2) - 2.
DDelta d_delta(const Params& params, std::int64_t p);

// ceil(gamma^2), exact.
std::int64_t ceil_gamma_squared(const Params& params);

// beta <= p <= ceil(gamma^2) - 2 and 1 <= c <= (p - beta + 1)*gamma/alpha.
bool theory_applies(const Params& params, std::int64_t p, double c);

// Main term of the S_p density at scale n_{c,r}. Throws RegimeError outside
// theory_applies(). Cross-checks the simplified forms wherever they apply.
double theory_density(const Params& params, std::int64_t p, double c);

// Simplified main term for max(beta, floor((1 - 1/beta)*gamma^2)) <= p.
double theory_density_plarge(const Params& params, std::int64_t p, double c);

// beta = 1 form (1/2)c^{-1}(1 - p/(alpha*gamma))^2 for 1 <= p <= alpha^2.
double theory_density_beta1(const Params& params, std::int64_t p, double c);

/// Exact sizes of the (q, t) stratum of S_p below n: T counts every integer
/// pair in the box, S only the t-divisible ones.
struct StrataCount {
  std::int64_t q;
  long t;
  BigInt s_count;
  BigInt t_count;
};

StrataCount strata_counts(const Params& params, std::int64_t p, const BigInt& n, std::int64_t q, long t);

// |beta*S - (beta - q)*T| <= beta^2 * min(g_t, n/g_{t-1}), in exact arithmetic.
bool within_stratum_bound(const Params& params, const BigInt& n, const StrataCount& stratum);

// Every stratum with t >= 2 and beta*g_{t-1} <= n.
std::vector<StrataCount> all_strata(const Params& params, std::int64_t p, const BigInt& n);

enum class CountMethod { kDirect, kStratified };

// |S_p ∩ [1, n]|. kDirect characterizes every m <= n; kStratified sums the
// strata and adds the m with s(m) = 2, which lie in S_p for every p.
BigInt empirical_Sp_count(const Params& params, std::int64_t p, const BigInt& n, CountMethod method);

/// p(m) for m = 1..n_max, cached for repeated DIRECT counts.
class PairCountScan {
 public:
  PairCountScan(const Params& params, std::int64_t n_max);

  std::int64_t n_max() const { return static_cast<std::int64_t>(counts_.size()); }
  const PairCount& at(std::int64_t m) const { return counts_[static_cast<std::size_t>(m - 1)]; }
  // |{m <= n : p(m) > p}|
  std::int64_t count_exceeding(std::int64_t p, std::int64_t n) const;

 private:
  std::vector<PairCount> counts_;
};

struct DensityJob {
  Params params;
  std::int64_t p;
  long r;
  std::vector<double> c_grid;
};

// n evenly spaced points from 1 to gamma^2.
std::vector<double> default_c_grid(const Params& params, int points = 17);

struct DensityRow {
  double c;
  BigInt n_cr;
  BigInt count;
  double empirical_density;
  std::optional<double> theory_density;
  std::vector<StrataCount> strata;
};

// Rows in ascending c. Counts are computed both ways; a mismatch throws
// ConsistencyError.
std::vector<DensityRow> density_curve(const DensityJob& job);

// Members of [1, beta*g_r*g_{r+1}] with p(m) > beta finite and t(m) > r.
std::vector<std::int64_t> lpairs_violations(const Params& params, long r);

}  // namespace slowwalk
