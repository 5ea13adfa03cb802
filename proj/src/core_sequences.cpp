#include "slowwalk/core_sequences.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "slowwalk/errors.hpp"

namespace slowwalk {

GenFibTable::GenFibTable(std::int64_t alpha, std::int64_t beta) : alpha_(alpha), beta_(beta) {
  g_.emplace_back(0);
  g_.emplace_back(1);
}

const BigInt& GenFibTable::at(std::size_t k) {
  std::lock_guard<std::mutex> lock(mutex_);
  while (g_.size() <= k) {
    const std::size_t m = g_.size();
    BigInt next = static_cast<long>(alpha_) * g_[m - 1] + static_cast<long>(beta_) * g_[m - 2];
    g_.push_back(std::move(next));
  }
  return g_[k];
}

std::size_t GenFibTable::cached() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return g_.size();
}

namespace {

void validate_pair(std::int64_t alpha, std::int64_t beta) {
  if (alpha < 1 || beta < 1) {
    throw std::invalid_argument("alpha and beta must be positive (got " + std::to_string(alpha) +
                                ", " + std::to_string(beta) + ")");
  }
  if (std::gcd(alpha, beta) != 1) {
    throw std::invalid_argument("alpha and beta must be coprime (got " + std::to_string(alpha) +
                                ", " + std::to_string(beta) + ")");
  }
}

long bit_length(std::int64_t v) {
  long bits = 0;
  while (v > 0) {
    ++bits;
    v >>= 1;
  }
  return bits;
}

}  // namespace

Params::Params(std::int64_t alpha, std::int64_t beta)
    : alpha_((validate_pair(alpha, beta), alpha)),
      beta_(beta),
      disc_(big(alpha) * big(alpha) + 4 * big(beta)),
      rational_gamma_(is_perfect_square(disc_)),
      // gamma < alpha + beta, so its ceil(log2) is at most bit_length(alpha + beta).
      log2_gamma_ceil_(bit_length(alpha + beta)),
      gamma_(gamma(kDefaultPrecision)),
      lambda_(lambda(kDefaultPrecision)),
      table_(std::make_shared<GenFibTable>(alpha, beta)) {}

Real Params::gamma(mpfr_prec_t precision) const {
  const Real root = sqrt(Real(disc_, precision));
  Real out = (Real(static_cast<long>(alpha_), precision) + root) / Real(2L, precision);
  return out;
}

Real Params::lambda(mpfr_prec_t precision) const {
  const Real root = sqrt(Real(disc_, precision));
  return (Real(static_cast<long>(alpha_), precision) - root) / Real(2L, precision);
}

const BigInt& Params::g(long k) const {
  if (k < 0) throw std::invalid_argument("g_k requires k >= 0");
  return table_->at(static_cast<std::size_t>(k));
}

std::string Params::label() const { return std::to_string(alpha_) + ":" + std::to_string(beta_); }

Params make_params(std::int64_t alpha, std::int64_t beta) { return Params(alpha, beta); }

BigInt gen_fib(const Params& params, long k) { return params.g(k); }

Walk::Walk(Params params, BigInt b, BigInt a) : params_(std::move(params)) {
  terms_.push_back(std::move(b));
  terms_.push_back(std::move(a));
}

const BigInt& Walk::term(long k) {
  if (k < 1) throw std::invalid_argument("walk index must be >= 1");
  const long alpha = static_cast<long>(params_.alpha());
  const long beta = static_cast<long>(params_.beta());
  while (static_cast<long>(terms_.size()) < k) {
    const std::size_t m = terms_.size();
    BigInt next = alpha * terms_[m - 1] + beta * terms_[m - 2];
    terms_.push_back(std::move(next));
  }
  return terms_[static_cast<std::size_t>(k - 1)];
}

BigInt walk_term_closed_form(const Params& params, const BigInt& b, const BigInt& a, long k) {
  if (k < 2) throw std::invalid_argument("closed form needs k >= 2");
  return a * params.g(k - 1) + static_cast<long>(params.beta()) * b * params.g(k - 2);
}

BigInt walk_term(const Params& params, const BigInt& b, const BigInt& a, long k) {
  if (sgn(a) <= 0 || sgn(b) <= 0) throw std::invalid_argument("walk seeds must be positive");
  Walk walk(params, b, a);
  BigInt by_recurrence = walk.term(k);
  if (k >= 3) {
    const BigInt by_closed_form = walk_term_closed_form(params, b, a, k);
    if (by_closed_form != by_recurrence) {
      throw ConsistencyError("walk term mismatch at k=" + std::to_string(k) + " for " + params.label());
    }
  }
  return by_recurrence;
}

GammaFloor floor_gamma_n(const Params& params, const BigInt& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("floor_gamma_n requires n >= 1");
  // gamma*n = (n*alpha + sqrt(n^2*disc)) / 2; the floor only depends on the
  // integer part of the square root.
  const BigInt radicand = n * n * params.disc();
  const BigInt root = isqrt(radicand);
  const BigInt numerator = n * static_cast<long>(params.alpha()) + root;
  GammaFloor out;
  mpz_fdiv_q_2exp(out.floor.get_mpz_t(), numerator.get_mpz_t(), 1);
  out.exact = (root * root == radicand) && mpz_even_p(numerator.get_mpz_t());
  out.ceil = out.exact ? out.floor : out.floor + 1;
  return out;
}

mpfr_prec_t working_precision(const Params& params, long index, long extra_bits) {
  const long wanted = 64 + std::max(index, 0L) * params.log2_gamma_ceil() + std::max(extra_bits, 0L);
  return std::max<mpfr_prec_t>(kDefaultPrecision, wanted);
}

Real drift_term(const Params& params, const BigInt& b, const BigInt& a, long k, mpfr_prec_t precision) {
  const Real gamma = params.gamma(precision);
  const Real lambda = params.lambda(precision);
  return pow(lambda, k - 1) * (Real(a, precision) - gamma * Real(b, precision));
}

Real drift_term(const Params& params, const BigInt& b, const BigInt& a, long k) {
  const long magnitude = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2) + mpz_sizeinbase(b.get_mpz_t(), 2));
  return drift_term(params, b, a, k, working_precision(params, k, magnitude));
}

}  // namespace slowwalk
