#include "slowwalk/characterization.hpp"

#include <stdexcept>
#include <string>

#include "slowwalk/errors.hpp"

namespace slowwalk {

bool is_t_divisible(const Params& params, const BigInt& a, const BigInt& b, long t) {
  if (t < 2) throw std::invalid_argument("t-divisibility needs t >= 2");
  const long beta = static_cast<long>(params.beta());
  const BigInt& step = params.g(t + 1);
  BigInt value = a - static_cast<long>(params.alpha()) * b;
  // gcd(g_{t+1}, beta) = 1, so value - l*g_{t+1} runs through every residue
  // mod beta once per beta consecutive l. The values decrease in l, hence the
  // first beta indices decide the predicate.
  for (long l = 0; l < beta; ++l) {
    if (sgn(value) <= 0) return true;
    if (mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(beta)) != 0) return false;
    value -= step;
  }
  return true;
}

Triple candidate_at(const Params& params, const BigInt& n, long t) {
  if (t < 2) throw std::invalid_argument("candidate index must be >= 2");
  const BigInt& modulus = params.g(t);
  const BigInt coeff = static_cast<long>(params.beta()) * params.g(t - 1);
  // gcd(g_t, beta*g_{t-1}) = 1 for t >= 2.
  BigInt b = floor_mod(n * mod_inverse(coeff, modulus), modulus);
  if (sgn(b) == 0) b = modulus;
  BigInt rest = n - coeff * b;
  if (!mpz_divisible_p(rest.get_mpz_t(), modulus.get_mpz_t())) {
    throw ConsistencyError("modular solve failed at t=" + std::to_string(t));
  }
  BigInt a;
  mpz_divexact(a.get_mpz_t(), rest.get_mpz_t(), modulus.get_mpz_t());
  return {t, std::move(a), std::move(b)};
}

bool is_valid_triple(const Params& params, const Triple& triple, DivisibilityTest divisible) {
  if (triple.t < 2 || sgn(triple.a) <= 0 || sgn(triple.b) <= 0 || triple.b > params.g(triple.t)) return false;
  const BigInt cap = (params.beta() - 1) * params.g(triple.t + 1) + static_cast<long>(params.alpha()) * triple.b;
  const bool below_cap = triple.a <= cap;
  const bool div_ok = divisible(params, triple.a, triple.b, triple.t);
  // t-divisibility already forces a <= cap; both are checked so a broken
  // predicate surfaces here.
  if (div_ok && !below_cap) {
    throw ConsistencyError("t-divisible pair above the a-cap at t=" + std::to_string(triple.t));
  }
  return below_cap && div_ok;
}

std::vector<Triple> find_triples(const Params& params, const BigInt& n, DivisibilityTest divisible) {
  std::vector<Triple> found;
  const long beta = static_cast<long>(params.beta());
  // a, b >= 1 forces g_t + beta*g_{t-1} <= n.
  for (long t = 2; params.g(t) + beta * params.g(t - 1) <= n; ++t) {
    Triple cand = candidate_at(params, n, t);
    if (is_valid_triple(params, cand, divisible)) found.push_back(std::move(cand));
  }
  return found;
}

Certificate characterize(const Params& params, const BigInt& n, DivisibilityTest divisible) {
  if (sgn(n) <= 0) throw std::invalid_argument("characterize requires n >= 1");
  std::vector<Triple> found = find_triples(params, n, divisible);
  Certificate cert{params, n, 2, true, 0, BigInt(0), BigInt(0)};
  if (found.empty()) {
    if (n > big(params.alpha()) * params.beta()) {
      throw ConsistencyError("no characterization triple for n=" + to_decimal(n) + " > alpha*beta with " +
                             params.label());
    }
    return cert;
  }
  if (found.size() > 1) {
    throw ConsistencyError("characterization triple not unique for n=" + to_decimal(n) + " with " +
                           params.label() + " (t=" + std::to_string(found[0].t) + " and t=" +
                           std::to_string(found[1].t) + ")");
  }
  cert.degenerate = false;
  cert.t = found[0].t;
  cert.s = cert.t + 1;
  cert.a = std::move(found[0].a);
  cert.b = std::move(found[0].b);
  return cert;
}

Certificate characterize(const Params& params, const BigInt& n) { return characterize(params, n, is_t_divisible); }

GoodPairFamily enumerate_good_pairs(const Certificate& cert) {
  if (cert.degenerate) throw std::invalid_argument("degenerate certificate has unboundedly many good pairs");
  const Params& params = cert.params;
  GoodPairFamily family{cert, {}};
  const BigInt& b_step = params.g(cert.t);
  const BigInt a_step = static_cast<long>(params.beta()) * params.g(cert.t - 1);
  BigInt b = cert.b;
  BigInt a = cert.a;
  while (sgn(a) > 0) {
    if (walk_term(params, b, a, cert.s) != cert.n) {
      throw ConsistencyError("good pair (" + to_decimal(b) + "," + to_decimal(a) + ") misses n=" + to_decimal(cert.n));
    }
    family.pairs.push_back({b, a});
    b += b_step;
    a -= a_step;
  }
  return family;
}

PairCount pair_count(const Certificate& cert) {
  if (cert.degenerate) return PairCount::unbounded();
  const BigInt step = static_cast<long>(cert.params.beta()) * cert.params.g(cert.t - 1);
  BigInt q;
  const BigInt top = cert.a - 1;
  mpz_fdiv_q(q.get_mpz_t(), top.get_mpz_t(), step.get_mpz_t());
  return PairCount::finite(to_int64(q) + 1);
}

PairCount p_of_n(const Params& params, const BigInt& n) { return pair_count(characterize(params, n)); }

namespace {

// Positive prefix of x_1 = top, x_2 = n, x_{k+2} = x_k - alpha*x_{k+1}.
std::vector<BigInt> reverse_run(const BigInt& top, const BigInt& n, long alpha) {
  std::vector<BigInt> run;
  if (sgn(top) <= 0) return run;
  run.push_back(top);
  run.push_back(n);
  for (;;) {
    const std::size_t m = run.size();
    BigInt next = run[m - 2] - alpha * run[m - 1];
    if (sgn(next) <= 0) break;
    run.push_back(std::move(next));
  }
  return run;
}

}  // namespace

Certificate reverse_walk_beta1(const Params& params, const BigInt& n) {
  if (params.beta() != 1) throw std::invalid_argument("reverse walk requires beta = 1");
  if (n <= params.alpha()) throw std::invalid_argument("reverse walk requires n > alpha");
  const GammaFloor gn = floor_gamma_n(params, n);
  const long alpha = static_cast<long>(params.alpha());
  const std::vector<BigInt> down = reverse_run(gn.floor, n, alpha);
  const std::vector<BigInt> up = reverse_run(gn.ceil, n, alpha);
  if (down.size() == up.size()) {
    throw ConsistencyError("reverse runs tie for n=" + to_decimal(n) + " with " + params.label());
  }
  const std::vector<BigInt>& run = down.size() > up.size() ? down : up;
  // run = w_{s+1}, w_s = n, ..., w_2, w_1.
  Certificate cert{params, n, 2, true, 0, BigInt(0), BigInt(0)};
  cert.degenerate = false;
  cert.s = static_cast<long>(run.size()) - 1;
  cert.t = cert.s - 1;
  cert.b = run[run.size() - 1];
  cert.a = run[run.size() - 2];
  return cert;
}

std::vector<NextValue> w_next_values(const Certificate& cert) {
  const GoodPairFamily family = enumerate_good_pairs(cert);
  const Params& params = cert.params;
  BigInt sign_step;  // (-beta)^t
  mpz_pow_ui(sign_step.get_mpz_t(), big(params.beta()).get_mpz_t(), static_cast<unsigned long>(cert.t));
  if (cert.t % 2 != 0) sign_step = -sign_step;

  std::optional<GammaFloor> gn;
  if (params.beta() == 1) gn = floor_gamma_n(params, cert.n);

  std::vector<NextValue> out;
  std::int64_t k = 0;
  for (const GoodPair& pair : family.pairs) {
    Walk walk(params, pair.b, pair.a);
    BigInt value = walk.term(cert.s + 1);
    // pairs[k] sits k steps along b' = b - j*g_t with j = -k, and the
    // difference is j*(-beta)^t.
    if (!out.empty() && value - out.front().value != -k * sign_step) {
      throw ConsistencyError("shift law fails at k=" + std::to_string(k) + " for n=" + to_decimal(cert.n));
    }
    if (gn) {
      const BigInt expected = (cert.t % 2 == 0) ? BigInt(gn->floor - k) : BigInt(gn->ceil + k);
      if (value != expected) {
        throw ConsistencyError("floor/ceil law fails at k=" + std::to_string(k) + " for n=" + to_decimal(cert.n));
      }
    }
    out.push_back({k, std::move(value)});
    ++k;
  }
  return out;
}

DriftCheck drift_bound_check(const Certificate& cert) {
  if (cert.degenerate) throw std::invalid_argument("drift check needs a non-degenerate certificate");
  const Params& params = cert.params;
  const long n_bits = static_cast<long>(mpz_sizeinbase(cert.n.get_mpz_t(), 2));
  const mpfr_prec_t prec = working_precision(params, cert.t + 1, 2 * n_bits + 64);
  const Real gamma = params.gamma(prec);
  const Real lambda = params.lambda(prec);

  Walk walk(params, cert.b, cert.a);
  const BigInt& next = walk.term(cert.s + 1);

  DriftCheck out{abs(Real(next, prec) - gamma * Real(cert.n, prec)),
                 abs(pow(lambda, cert.t) * (gamma * Real(cert.b, prec) - Real(cert.a, prec))),
                 BigInt(0)};
  mpz_pow_ui(out.bound.get_mpz_t(), big(params.beta()).get_mpz_t(), static_cast<unsigned long>(cert.t + 1));
  out.bound *= 2;
  out.matches = close_relative(out.drift, out.closed_form, 1e-6, pow2(-(prec / 2), prec));
  out.within_bound = out.drift <= Real(out.bound, prec);
  return out;
}

}  // namespace slowwalk
