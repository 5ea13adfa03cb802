#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "slowwalk/bigint.hpp"
#include "slowwalk/real.hpp"

namespace slowwalk {

/// Cached generalized Fibonacci numbers g_0 = 0, g_1 = 1, g_2 = alpha,
/// g_{k+2} = alpha*g_{k+1} + beta*g_k.
///
/// Append-only. Extension happens under a lock and published entries are
/// never moved, so references returned by at() stay valid and the table can
/// be shared between threads.
class GenFibTable {
 public:
  GenFibTable(std::int64_t alpha, std::int64_t beta);

  const BigInt& at(std::size_t k);
  std::size_t cached() const;

 private:
  std::int64_t alpha_;
  std::int64_t beta_;
  std::deque<BigInt> g_;
  mutable std::mutex mutex_;
};

/// A validated coprime pair (alpha, beta) with the roots gamma > 0 > lambda
/// of x^2 = alpha*x + beta.
class Params {
 public:
  Params(std::int64_t alpha, std::int64_t beta);

  std::int64_t alpha() const { return alpha_; }
  std::int64_t beta() const { return beta_; }
  const BigInt& disc() const { return disc_; }
  // True when alpha^2 + 4*beta is a perfect square (gamma is an integer).
  bool gamma_is_rational() const { return rational_gamma_; }

  const Real& gamma() const { return gamma_; }
  const Real& lambda() const { return lambda_; }
  Real gamma(mpfr_prec_t precision) const;
  Real lambda(mpfr_prec_t precision) const;

  // Upper bound on ceil(log2(gamma)), used to size working precision.
  long log2_gamma_ceil() const { return log2_gamma_ceil_; }

  // g_k, k >= 0. The reference stays valid for the lifetime of the table.
  const BigInt& g(long k) const;

  std::string label() const;  // "alpha:beta"

  friend bool operator==(const Params& a, const Params& b) {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }
  friend bool operator<(const Params& a, const Params& b) {
    return a.alpha_ != b.alpha_ ? a.alpha_ < b.alpha_ : a.beta_ < b.beta_;
  }

 private:
  std::int64_t alpha_;
  std::int64_t beta_;
  BigInt disc_;
  bool rational_gamma_;
  long log2_gamma_ceil_;
  Real gamma_;
  Real lambda_;
  std::shared_ptr<GenFibTable> table_;
};

// Throws std::invalid_argument for nonpositive inputs or gcd(alpha, beta) != 1.
Params make_params(std::int64_t alpha, std::int64_t beta);

// g_k for k >= 0; throws std::invalid_argument for k < 0.
BigInt gen_fib(const Params& params, long k);

/// The (alpha, beta)-walk seeded with w_1 = b, w_2 = a. Terms are extended
/// on demand.
class Walk {
 public:
  Walk(Params params, BigInt b, BigInt a);

  const BigInt& term(long k);  // k >= 1
  const Params& params() const { return params_; }

 private:
  Params params_;
  std::vector<BigInt> terms_;  // terms_[i] = w_{i+1}
};

// w_k(b, a). Evaluated by the recurrence and, for k >= 3, by the closed form
// a*g_{k-1} + beta*b*g_{k-2}; throws ConsistencyError if they differ.
BigInt walk_term(const Params& params, const BigInt& b, const BigInt& a, long k);

// Closed form a*g_{k-1} + beta*b*g_{k-2}, k >= 2.
BigInt walk_term_closed_form(const Params& params, const BigInt& b, const BigInt& a, long k);

struct GammaFloor {
  BigInt floor;
  BigInt ceil;
  bool exact = false;  // gamma*n is an integer
};

// Exact floor/ceil of gamma*n via isqrt(n^2 * disc).
GammaFloor floor_gamma_n(const Params& params, const BigInt& n);

// Precision that keeps a quantity of size ~gamma^index accurate to 2^-64,
// plus `extra_bits` of headroom; never below kDefaultPrecision.
mpfr_prec_t working_precision(const Params& params, long index, long extra_bits = 0);

// lambda^{k-1} * (a - gamma*b), the gap w_{k+1} - gamma*w_k.
Real drift_term(const Params& params, const BigInt& b, const BigInt& a, long k);
Real drift_term(const Params& params, const BigInt& b, const BigInt& a, long k, mpfr_prec_t precision);

}  // namespace slowwalk
