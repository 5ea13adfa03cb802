#include "slowwalk/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slowwalk/errors.hpp"

namespace slowwalk {

BigInt n_cr(const Params& params, double c, long r) {
  if (!(c >= 1.0)) throw std::invalid_argument("n_cr needs c >= 1");
  if (r < 2) throw std::invalid_argument("n_cr needs r >= 2");
  const mpfr_prec_t base = working_precision(params, 2 * r + 1, 64);
  const mpfr_prec_t top = 16 * base;
  for (mpfr_prec_t prec = base;; prec *= 2) {
    // (gamma - lambda)^2 = alpha^2 + 4*beta
    const Real value = Real(c, prec) * Real(static_cast<long>(params.beta()), prec) *
                       pow(params.gamma(prec), 2 * r + 1) / Real(params.disc(), prec);
    const Real gap = distance_to_integer(value);
    if (gap > pow2(-32, prec)) return value.floor();
    if (prec >= top) return gap < pow2(-(prec / 2), prec) ? value.round() : value.floor();
  }
}

std::int64_t ceil_gamma_squared(const Params& params) {
  return params.beta() + to_int64(floor_gamma_n(params, big(params.alpha())).ceil);
}

DDelta d_delta(const Params& params, std::int64_t p) {
  if (p < 1) throw std::invalid_argument("d_delta needs p >= 1");
  const mpfr_prec_t prec = working_precision(params, 2, 64);
  const Real gamma = params.gamma(prec);
  const Real alpha(static_cast<long>(params.alpha()), prec);
  const Real head = Real(static_cast<long>(params.beta() * p), prec) / gamma;
  const long d = to_int64(((head - alpha) / gamma).ceil());
  DDelta out{d, head - gamma * Real(d, prec)};

  if (out.delta > alpha || !(head - gamma * Real(d - 1, prec) > alpha)) {
    throw ConsistencyError("d is not minimal for p=" + std::to_string(p));
  }
  if (p <= ceil_gamma_squared(params) - 2) {
    const bool d_ok = 0 <= d && d <= params.beta() - 1;
    const bool delta_ok = alpha - gamma < out.delta && out.delta <= alpha;
    if (!d_ok || !delta_ok) {
      throw ConsistencyError("d/delta range fails for p=" + std::to_string(p) + " with " + params.label());
    }
  }
  return out;
}

bool theory_applies(const Params& params, std::int64_t p, double c) {
  if (p < params.beta() || p > ceil_gamma_squared(params) - 2) return false;
  const double c_max = static_cast<double>(p - params.beta() + 1) * params.gamma().to_double() /
                       static_cast<double>(params.alpha());
  return c >= 1.0 && c <= c_max;
}

namespace {

void require_regime(const Params& params, std::int64_t p, double c) {
  if (!theory_applies(params, p, c)) {
    throw RegimeError("density formula does not apply at p=" + std::to_string(p) + ", c=" + std::to_string(c) +
                      " for " + params.label());
  }
}

bool plarge_applies(const Params& params, std::int64_t p) {
  const mpfr_prec_t prec = working_precision(params, 2, 64);
  const Real gamma = params.gamma(prec);
  const long beta = static_cast<long>(params.beta());
  const Real frac = Real(beta - 1, prec) / Real(beta, prec);
  const std::int64_t threshold = std::max<std::int64_t>(beta, to_int64((frac * gamma * gamma).floor()));
  return threshold <= p && p <= ceil_gamma_squared(params) - 2;
}

bool agree(double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y)); }

// gamma*(alpha - 2*delta + delta^2/alpha) / (2*beta^2*(gamma^2 - 1))
Real boundary_term(const Params& params, const Real& delta, mpfr_prec_t prec) {
  const Real gamma = params.gamma(prec);
  const Real alpha(static_cast<long>(params.alpha()), prec);
  const Real beta(static_cast<long>(params.beta()), prec);
  const Real one(1L, prec);
  const Real two(2L, prec);
  return gamma * (alpha - two * delta + delta * delta / alpha) / (two * beta * beta * (gamma * gamma - one));
}

}  // namespace

double theory_density_plarge(const Params& params, std::int64_t p, double c) {
  require_regime(params, p, c);
  if (!plarge_applies(params, p)) {
    throw RegimeError("simplified density form needs p >= max(beta, floor((1-1/beta)gamma^2))");
  }
  const mpfr_prec_t prec = working_precision(params, 2, 64);
  const Real gamma = params.gamma(prec);
  const long beta = static_cast<long>(params.beta());
  const Real delta = Real(beta * p, prec) / gamma - gamma * Real(beta - 1, prec);
  if (d_delta(params, p).d != beta - 1) {
    throw ConsistencyError("simplified density form applies but d != beta - 1 at p=" + std::to_string(p));
  }
  return (boundary_term(params, delta, prec) / Real(c, prec)).to_double();
}

double theory_density_beta1(const Params& params, std::int64_t p, double c) {
  if (params.beta() != 1) throw RegimeError("beta = 1 density form needs beta = 1");
  if (p < 1 || p > params.alpha() * params.alpha()) throw RegimeError("beta = 1 density form needs 1 <= p <= alpha^2");
  require_regime(params, p, c);
  const mpfr_prec_t prec = working_precision(params, 2, 64);
  const Real one(1L, prec);
  const Real x = one - Real(static_cast<long>(p), prec) / (Real(static_cast<long>(params.alpha()), prec) * params.gamma(prec));
  return (x * x / (Real(2L, prec) * Real(c, prec))).to_double();
}

double theory_density(const Params& params, std::int64_t p, double c) {
  require_regime(params, p, c);
  const mpfr_prec_t prec = working_precision(params, 2, 64);
  const Real gamma = params.gamma(prec);
  const long beta = static_cast<long>(params.beta());
  const DDelta dd = d_delta(params, p);
  const Real one(1L, prec);
  const Real beta_r(beta, prec);

  Real tail(prec);
  for (long q = dd.d + 1; q <= beta - 1; ++q) tail = tail + Real(beta - q, prec) / (beta_r * beta_r);
  const Real main = Real(2 * beta - 2 * dd.d - 1, prec) * boundary_term(params, dd.delta, prec) +
                    gamma * gamma / (gamma * gamma - one) * tail;
  const double value = (main / Real(c, prec)).to_double();

  if (plarge_applies(params, p) && !agree(value, theory_density_plarge(params, p, c))) {
    throw ConsistencyError("general and simplified density forms disagree at p=" + std::to_string(p));
  }
  if (beta == 1 && p <= params.alpha() * params.alpha() && !agree(value, theory_density_beta1(params, p, c))) {
    throw ConsistencyError("general and beta = 1 density forms disagree at p=" + std::to_string(p));
  }
  return value;
}

StrataCount strata_counts(const Params& params, std::int64_t p, const BigInt& n, std::int64_t q, long t) {
  const long alpha = static_cast<long>(params.alpha());
  const long beta = static_cast<long>(params.beta());
  if (q < 0 || q > beta - 1) throw std::invalid_argument("stratum q must lie in [0, beta-1]");
  if (t < 2) throw std::invalid_argument("stratum t must be >= 2");
  StrataCount out{q, t, BigInt(0), BigInt(0)};
  const BigInt& g_prev = params.g(t - 1);
  const BigInt& g_t = params.g(t);
  const BigInt& g_next = params.g(t + 1);
  const BigInt pair_floor = beta * p * g_prev;  // a > beta*p*g_{t-1} <=> p(m) > p
  const BigInt b_step = beta * g_prev;
  BigInt room, by_n, lower, upper, a;
  for (BigInt b = 1; b <= g_t; ++b) {
    room = n - b_step * b;
    if (room < g_t) break;  // no a >= 1 fits below n from here on
    mpz_fdiv_q(by_n.get_mpz_t(), room.get_mpz_t(), g_t.get_mpz_t());
    lower = std::max({BigInt(0), pair_floor, BigInt((q - 1) * g_next + alpha * b)});
    upper = std::min({BigInt((beta - 1) * g_next + alpha * b), BigInt(q * g_next + alpha * b), by_n});
    if (upper <= lower) continue;
    out.t_count += upper - lower;
    for (a = lower + 1; a <= upper; ++a) {
      if (is_t_divisible(params, a, b, t)) ++out.s_count;
    }
  }
  return out;
}

bool within_stratum_bound(const Params& params, const BigInt& n, const StrataCount& stratum) {
  const long beta = static_cast<long>(params.beta());
  const BigInt lhs = abs(beta * stratum.s_count - (beta - stratum.q) * stratum.t_count);
  const BigInt& g_prev = params.g(stratum.t - 1);
  const BigInt& g_t = params.g(stratum.t);
  const long beta_sq = beta * beta;
  if (g_t * g_prev <= n) return lhs <= beta_sq * g_t;
  return lhs * g_prev <= beta_sq * n;
}

std::vector<StrataCount> all_strata(const Params& params, std::int64_t p, const BigInt& n) {
  std::vector<StrataCount> out;
  const long beta = static_cast<long>(params.beta());
  for (long t = 2; beta * params.g(t - 1) <= n; ++t) {
    for (std::int64_t q = 0; q < beta; ++q) out.push_back(strata_counts(params, p, n, q, t));
  }
  return out;
}

namespace {

BigInt degenerate_count(const Params& params, const BigInt& n) {
  BigInt count = 0;
  const BigInt cap = std::min(n, BigInt(big(params.alpha()) * params.beta()));
  for (BigInt m = 1; m <= cap; ++m) {
    if (characterize(params, m).degenerate) ++count;
  }
  return count;
}

BigInt stratified_count(const Params& params, const BigInt& n, const std::vector<StrataCount>& strata) {
  BigInt total = degenerate_count(params, n);
  for (const StrataCount& s : strata) total += s.s_count;
  return total;
}

}  // namespace

BigInt empirical_Sp_count(const Params& params, std::int64_t p, const BigInt& n, CountMethod method) {
  if (sgn(n) <= 0) throw std::invalid_argument("count needs n >= 1");
  if (method == CountMethod::kStratified) return stratified_count(params, n, all_strata(params, p, n));
  BigInt count = 0;
  for (BigInt m = 1; m <= n; ++m) {
    if (p_of_n(params, m).exceeds(p)) ++count;
  }
  return count;
}

PairCountScan::PairCountScan(const Params& params, std::int64_t n_max) {
  counts_.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)));
  for (std::int64_t m = 1; m <= n_max; ++m) counts_.push_back(p_of_n(params, big(m)));
}

std::int64_t PairCountScan::count_exceeding(std::int64_t p, std::int64_t n) const {
  if (n > n_max()) throw std::out_of_range("scan does not reach n=" + std::to_string(n));
  std::int64_t count = 0;
  for (std::int64_t m = 1; m <= n; ++m) count += at(m).exceeds(p) ? 1 : 0;
  return count;
}

std::vector<double> default_c_grid(const Params& params, int points) {
  if (points < 2) throw std::invalid_argument("c grid needs at least two points");
  const mpfr_prec_t prec = kDefaultPrecision;
  const double top = (params.gamma(prec) * params.gamma(prec)).to_double();
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(1.0 + (top - 1.0) * i / (points - 1));
  return grid;
}

std::vector<DensityRow> density_curve(const DensityJob& job) {
  std::vector<double> grid = job.c_grid;
  std::sort(grid.begin(), grid.end());
  std::vector<BigInt> ns;
  std::int64_t n_max = 0;
  for (double c : grid) {
    ns.push_back(n_cr(job.params, c, job.r));
    n_max = std::max(n_max, to_int64(ns.back()));
  }
  const PairCountScan scan(job.params, n_max);

  std::vector<DensityRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BigInt& n = ns[i];
    DensityRow row{grid[i], n, big(scan.count_exceeding(job.p, to_int64(n))), 0.0, std::nullopt,
                   all_strata(job.params, job.p, n)};
    const BigInt stratified = stratified_count(job.params, n, row.strata);
    if (stratified != row.count) {
      throw ConsistencyError("direct and stratified S_p counts differ at n=" + to_decimal(n) + " (" +
                             to_decimal(row.count) + " vs " + to_decimal(stratified) + ")");
    }
    row.empirical_density = row.count.get_d() / n.get_d();
    if (theory_applies(job.params, job.p, row.c)) row.theory_density = theory_density(job.params, job.p, row.c);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::int64_t> lpairs_violations(const Params& params, long r) {
  if (r < 2) throw std::invalid_argument("r must be >= 2");
  const std::int64_t top = to_int64(params.beta() * params.g(r) * params.g(r + 1));
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= top; ++m) {
    const Certificate cert = characterize(params, big(m));
    if (cert.degenerate || cert.t <= r) continue;
    const PairCount p = pair_count(cert);
    if (p.value() > params.beta()) out.push_back(m);
  }
  return out;
}

}  // namespace slowwalk
