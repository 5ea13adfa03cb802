#include "slowwalk/extremal_bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "slowwalk/errors.hpp"

namespace slowwalk {

ExtremalWitness extremal_witness(const Params& params, long t) {
  if (t < 2) throw std::invalid_argument("extremal witness needs t >= 2");
  const long alpha = static_cast<long>(params.alpha());
  const long beta = static_cast<long>(params.beta());
  ExtremalWitness w{params, t, beta * params.g(t) * params.g(t + 1),
                    (beta - 1) * params.g(t + 1) + alpha * params.g(t), params.g(t)};
  const Certificate cert = characterize(params, w.n);
  if (cert.degenerate || cert.t != t || cert.a != w.a || cert.b != w.b) {
    throw ConsistencyError("extremal witness mismatch at t=" + std::to_string(t) + " for " + params.label());
  }
  return w;
}

std::int64_t max_p_bound(const Params& params) {
  return params.alpha() * params.alpha() + 2 * params.beta() - 1;
}

std::int64_t recurrent_p_value(const Params& params) {
  const std::int64_t alpha = params.alpha();
  const std::int64_t beta = params.beta();
  // gamma^2 = alpha*gamma + beta, so ceil(gamma^2) = beta + ceil(alpha*gamma).
  const std::int64_t via_square = beta + to_int64(floor_gamma_n(params, big(alpha)).ceil) - 1;

  const mpfr_prec_t prec = working_precision(params, 2, 64);
  const Real ratio = Real(static_cast<long>(alpha * beta), prec) / params.gamma(prec);
  const std::int64_t via_ratio = alpha * alpha + beta + to_int64(ratio.ceil()) - 1;
  if (via_square != via_ratio) {
    throw ConsistencyError("closed forms of the recurrent pair count disagree for " + params.label());
  }
  return via_square;
}

std::int64_t k_t(const Params& params, long t) {
  if (t < 2) throw std::invalid_argument("k_t needs t >= 2");
  const BigInt top = params.alpha() * params.beta() * params.g(t - 2) - 1;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), top.get_mpz_t(), params.g(t - 1).get_mpz_t());
  return to_int64(q);
}

KtStabilization k_t_stabilization(const Params& params, long t_lo, long t_hi) {
  if (t_lo < 2 || t_hi < t_lo) throw std::invalid_argument("bad k_t window");
  KtStabilization out{t_lo, t_hi, {}, 0, true, 0};
  // alpha*beta/gamma = alpha*gamma - alpha^2.
  out.limit = to_int64(floor_gamma_n(params, big(params.alpha())).ceil) - params.alpha() * params.alpha() - 1;
  for (long t = t_lo; t <= t_hi; ++t) out.k.push_back(k_t(params, t));
  out.stable = true;
  for (std::int64_t v : out.k) out.stable = out.stable && v == out.limit;
  for (long t = t_hi; t >= t_lo && out.k[static_cast<std::size_t>(t - t_lo)] == out.limit; --t) out.onset = t;
  return out;
}

bool infinitely_max_iff(const Params& params) { return params.alpha() >= params.beta(); }

MaxAttainmentScan scan_max_attainment(const Params& params, std::int64_t n_max, int windows) {
  if (n_max < 1 || windows < 1) throw std::invalid_argument("bad attainment scan range");
  MaxAttainmentScan out{n_max, max_p_bound(params), std::vector<std::int64_t>(static_cast<std::size_t>(windows), 0), {}};
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const PairCount p = p_of_n(params, big(n));
    if (p.is_unbounded() || p.value() != out.bound) continue;
    const auto w = static_cast<std::size_t>((n - 1) * windows / n_max);
    ++out.window_counts[w];
    if (out.hits.size() < 16) out.hits.push_back(n);
  }
  return out;
}

long s_lower_chicken(const Params& params, const BigInt& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("s_lower_chicken requires n >= 1");
  const long beta = static_cast<long>(params.beta());
  long s = 2;
  while (n > beta * params.g(s) * params.g(s - 1)) ++s;
  return s;
}

SBounds s_bounds(const Params& params, const BigInt& n) {
  if (characterize(params, n).degenerate) throw RegimeError("s bounds need s(n) > 2");
  const mpfr_prec_t prec = working_precision(params, 0, 64);
  const Real log_n = log(Real(n, prec));
  const double log_gamma_n = (log_n / log(params.gamma(prec))).to_double();
  SBounds out{0.5 * log_gamma_n - 1.0, log_gamma_n + 2.0};
  if (params.alpha() == 1 && params.beta() == 1) out.lower = std::max(out.lower, 0.5 * log_gamma_n + 2.0);
  return out;
}

namespace {

// Sign of n - gamma^k, exact for integral gamma.
int compare_to_gamma_power(const Params& params, const BigInt& n, long k) {
  if (k <= 0) {
    // gamma^k <= 1 <= n with equality only at k = 0, n = 1.
    return (k == 0 && n == 1) ? 0 : 1;
  }
  if (params.gamma_is_rational()) {
    const BigInt root = (params.alpha() + isqrt(params.disc())) / 2;
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), root.get_mpz_t(), static_cast<unsigned long>(k));
    return cmp(n, power);
  }
  const long n_bits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const mpfr_prec_t prec = working_precision(params, k, n_bits + 64);
  const Real power = pow(params.gamma(prec), k);
  const Real nr(n, prec);
  return nr < power ? -1 : (nr > power ? 1 : 0);
}

}  // namespace

SBoundCheck check_s_bounds(const Params& params, const BigInt& n, long s) {
  SBoundCheck out{};
  // s <= log_gamma(n) + 2  <=>  gamma^{s-2} <= n
  out.upper_ok = compare_to_gamma_power(params, n, s - 2) >= 0;
  // (1/2)log_gamma(n) - 1 <= s  <=>  n <= gamma^{2s+2}
  out.lower_ok = compare_to_gamma_power(params, n, 2 * s + 2) <= 0;
  // (1/2)log_phi(n) + 2 <= s  <=>  n <= phi^{2s-4}
  out.fibonacci_ok = !(params.alpha() == 1 && params.beta() == 1) || compare_to_gamma_power(params, n, 2 * s - 4) <= 0;
  return out;
}

}  // namespace slowwalk
