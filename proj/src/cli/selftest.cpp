#include "slowwalk/cli/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "slowwalk/density.hpp"
#include "slowwalk/extremal_bounds.hpp"
#include "slowwalk/oracles.hpp"
#include "slowwalk/slowest.hpp"

namespace slowwalk::cli {

bool off_by_one_divisibility(const Params& params, const BigInt& a, const BigInt& b, long t) {
  const long beta = static_cast<long>(params.beta());
  const BigInt& step = params.g(t + 1);
  BigInt value = a - static_cast<long>(params.alpha()) * b;
  for (long l = 0; l < beta; ++l) {
    if (sgn(value) < 0) return true;
    if (mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(beta)) != 0) return false;
    value -= step;
  }
  return true;
}

namespace {

// Empty string means pass; anything else describes the first failure.
using Suite = std::function<std::string()>;

const std::vector<std::pair<std::int64_t, std::int64_t>> kPairs = {{1, 1}, {2, 1}, {3, 1}, {1, 2},
                                                                   {1, 3}, {2, 3}, {1, 5}};

std::vector<Params> random_pairs(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(1, 20);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<Params> out;
  while (static_cast<int>(out.size()) < count) {
    const std::int64_t a = dist(rng);
    const std::int64_t b = dist(rng);
    if (std::gcd(a, b) != 1 || !seen.insert({a, b}).second) continue;
    out.push_back(make_params(a, b));
  }
  return out;
}

std::string fib_identities() {
  for (const Params& params : random_pairs(10, 20240601u)) {
    const BigInt beta = big(params.beta());
    BigInt sign = 1;  // (-beta)^k
    for (long k = 0; k <= 300; ++k) {
      const std::string at = " at k=" + std::to_string(k) + " for " + params.label();
      const BigInt& gk = params.g(k);
      if (k >= 1 && gcd(gk, beta) != 1) return "gcd(g_k, beta) != 1" + at;
      if (gcd(params.g(k + 1), BigInt(beta * gk)) != 1) return "gcd(g_{k+1}, beta*g_k) != 1" + at;
      if (params.g(k + 1) * params.g(k + 1) - gk * params.g(k + 2) != sign) return "Cassini-type identity fails" + at;
      sign *= -beta;
      if (k >= 1) {
        const mpfr_prec_t prec = working_precision(params, k, 64);
        const Real gamma = params.gamma(prec);
        const Real lambda = params.lambda(prec);
        const Real binet = (pow(gamma, k) - pow(lambda, k)) / (gamma - lambda);
        const Real g_real(gk, prec);
        if (!(abs(g_real - binet) / g_real < Real(1e-9, prec))) return "Binet form off" + at;
      }
    }
  }
  return {};
}

std::string walk_closed_form() {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (long b = 1; b <= 5; ++b) {
      for (long a = 1; a <= 5; ++a) {
        Walk walk(params, big(b), big(a));
        for (long k = 3; k <= 200; ++k) {
          if (walk.term(k) != walk_term_closed_form(params, big(b), big(a), k)) {
            return "closed form differs at k=" + std::to_string(k) + " for " + params.label();
          }
        }
      }
    }
  }
  return {};
}

std::string floor_gamma(std::int64_t cap) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= cap; ++n) {
      const GammaFloor gf = floor_gamma_n(params, big(n));
      const Real x = params.gamma() * Real(big(n), kDefaultPrecision);
      const bool ok = Real(gf.floor, kDefaultPrecision) <= x && x < Real(BigInt(gf.floor + 1), kDefaultPrecision) &&
                      gf.ceil == (gf.exact ? gf.floor : BigInt(gf.floor + 1)) && gf.exact == x.is_integer();
      if (!ok) return "floor(gamma*n) wrong at n=" + std::to_string(n) + " for " + params.label();
    }
  }
  return {};
}

std::string oracle_equivalence(std::int64_t cap, std::int64_t brute_cap, DivisibilityTest divisible) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 2; n <= cap; ++n) {
      const Certificate cert = characterize(params, big(n), divisible);
      if (auto diff = oracle_mismatch(cert, s_oracle_diophantine(params, n))) return "diophantine: " + *diff;
      if (n <= brute_cap) {
        if (auto diff = oracle_mismatch(cert, s_oracle_bruteforce(params, n))) return "brute force: " + *diff;
      }
    }
  }
  return {};
}

std::string uniqueness(std::int64_t cap, DivisibilityTest divisible) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= cap; ++n) {
      const std::vector<Triple> found = find_triples(params, big(n), divisible);
      if (found.size() > 1) return "two triples for n=" + std::to_string(n) + " with " + params.label();
      if (found.empty() && n > alpha * beta) return "no triple for n=" + std::to_string(n) + " with " + params.label();
    }
  }
  return {};
}

std::string good_pairs(std::int64_t cap) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= cap; ++n) {
      const Certificate cert = characterize(params, big(n));
      if (cert.degenerate) continue;
      const PairCount p = pair_count(cert);
      if (p.value() < 1 || enumerate_good_pairs(cert).pairs.size() != static_cast<std::size_t>(p.value())) {
        return "pair count disagrees with family at n=" + std::to_string(n) + " for " + params.label();
      }
    }
  }
  return {};
}

std::string drift(std::int64_t cap) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= cap; ++n) {
      const Certificate cert = characterize(params, big(n));
      if (cert.degenerate) continue;
      if (!drift_bound_check(cert).ok()) return "drift check fails at n=" + std::to_string(n) + " for " + params.label();
      w_next_values(cert);  // throws on a shift-law violation
    }
  }
  return {};
}

std::string beta1(std::int64_t cap) {
  for (std::int64_t alpha = 1; alpha <= 3; ++alpha) {
    const Params params = make_params(alpha, 1);
    for (std::int64_t n = alpha + 1; n <= cap; ++n) {
      const Certificate fast = reverse_walk_beta1(params, big(n));
      const Certificate cert = characterize(params, big(n));
      if (fast.s != cert.s || fast.a != cert.a || fast.b != cert.b) {
        return "reverse walk differs at n=" + std::to_string(n) + " for " + params.label();
      }
      if (!(1 <= cert.a && cert.a <= alpha * cert.b && cert.b <= params.g(cert.t))) {
        return "bound chain 1 <= a <= alpha*b <= alpha*g_t fails at n=" + std::to_string(n);
      }
    }
  }
  return {};
}

std::string extremal() {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (long t = 2; t <= 20; ++t) extremal_witness(params, t);  // throws on mismatch
    const ExtremalWitness w3 = extremal_witness(params, 3);
    if (p_of_n(params, w3.n) != PairCount::finite(max_p_bound(params))) {
      return "p(n_3) misses alpha^2 + 2*beta - 1 for " + params.label();
    }
  }
  return {};
}

std::string pair_bounds(std::int64_t cap) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    recurrent_p_value(params);  // throws if the two closed forms differ
    const std::int64_t bound = max_p_bound(params);
    for (std::int64_t n = 1; n <= cap; ++n) {
      const PairCount p = p_of_n(params, big(n));
      if (!p.is_unbounded() && p.value() > bound) {
        return "p(n) above alpha^2 + 2*beta - 1 at n=" + std::to_string(n) + " for " + params.label();
      }
    }
    // Constancy is asserted from the observed onset, which is 8 for (1,5).
    if (!params.gamma_is_rational() && k_t_stabilization(params).onset == 0) {
      return "k_t does not settle at its limit by t=30 for " + params.label();
    }
  }
  return {};
}

std::string s_envelope(std::int64_t cap) {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= cap; ++n) {
      const Certificate cert = characterize(params, big(n));
      if (s_lower_chicken(params, big(n)) > cert.s) return "chicken bound exceeds s at n=" + std::to_string(n);
      if (!cert.degenerate && !check_s_bounds(params, big(n), cert.s).ok()) {
        return "s outside envelope at n=" + std::to_string(n) + " for " + params.label();
      }
    }
  }
  return {};
}

std::string density_parameters() {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    const std::int64_t top = ceil_gamma_squared(params) - 2;
    for (std::int64_t p = 1; p <= top; ++p) {
      d_delta(params, p);  // throws on a range violation
      if (p < beta) continue;
      const double at_one = theory_density(params, p, 1.0);  // cross-checks the simplified forms
      if (!(at_one > 0)) return "density main term not positive at p=" + std::to_string(p);
      const double c_max = static_cast<double>(p - beta + 1) * params.gamma().to_double() / alpha;
      if (c_max >= 2.0 && std::fabs(2 * theory_density(params, p, 2.0) - at_one) > 1e-12 * at_one) {
        return "density main term does not scale as 1/c at p=" + std::to_string(p);
      }
    }
  }
  return {};
}

std::string density_counts(bool quick) {
  const std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t, long>> jobs = {
      {1, 1, 1, quick ? 6 : 8}, {2, 1, 3, quick ? 3 : 4}, {1, 2, 2, quick ? 3 : 5}, {1, 5, 5, quick ? 2 : 3}};
  for (const auto& [alpha, beta, p, r] : jobs) {
    const Params params = make_params(alpha, beta);
    const DensityJob job{params, p, r, default_c_grid(params, 5)};
    for (const DensityRow& row : density_curve(job)) {  // throws on a DIRECT/STRATIFIED mismatch
      for (const StrataCount& s : row.strata) {
        if (!within_stratum_bound(params, row.n_cr, s)) {
          return "stratum bound fails at q=" + std::to_string(s.q) + ", t=" + std::to_string(s.t);
        }
      }
    }
  }
  return {};
}

std::string stratum_pairs(long r_max) {
  for (const auto& [alpha, beta] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {2, 1}, {1, 2}, {2, 3}}) {
    const Params params = make_params(alpha, beta);
    for (long r = 3; r <= r_max; ++r) {
      const auto bad = lpairs_violations(params, r);
      if (!bad.empty()) return "m=" + std::to_string(bad.front()) + " has p(m) > beta and t(m) > r=" + std::to_string(r);
    }
  }
  return {};
}

std::string slowest_witnesses() {
  for (const WitnessCheck& w : shared_witnesses()) {
    if (!w.ok) return "S(" + to_decimal(w.n) + ") = {" + w.report.achievers_label() + "}";
  }
  for (const WitnessCheck& w : exclusive_witnesses()) {
    if (w.n > BigInt("1000000000000000000000000000000")) continue;  // see the acceptance suite
    if (!w.ok) return "S(" + to_decimal(w.n) + ") = {" + w.report.achievers_label() + "}";
  }
  // A (1,4)-exclusive witness of the form g_t + 4*g_{t-1}, t = 82.
  const SlowestReport r = ss_and_S(BigInt("1952318330933765624209630653650309"), default_R());
  if (!r.exclusively(1, 4)) return "g_82 + 4*g_81 has achievers {" + r.achievers_label() + "}";
  return {};
}

std::string slowest_subset(std::int64_t cap) {
  const ValidSet extended{{1, 1}, {2, 1}, {1, 2}, {1, 3}, {1, 4}, {3, 1}, {1, 5}, {2, 3}, {3, 2}, {1, 6}};
  const ValidSet R = default_R();
  for (const SlowestReport& report : slowest_scan(extended, cap)) {
    for (const Params& p : report.achievers) {
      if (!R.contains(p)) return "S(" + to_decimal(report.n) + ") contains " + p.label();
    }
  }
  return {};
}

}  // namespace

std::vector<SelftestRow> run_selftest(const SelftestOptions& options) {
  const std::int64_t scale = options.quick ? 10 : 1;
  const DivisibilityTest divisible = options.divisible;
  const std::vector<std::pair<std::string, Suite>> suites = {
      {"fib-identities", fib_identities},
      {"walk-closed-form", walk_closed_form},
      {"floor-gamma-n", [=] { return floor_gamma(10000 / scale); }},
      {"oracle-equivalence", [=] { return oracle_equivalence(2000 / scale, 200 / scale, divisible); }},
      {"characterization-uniqueness", [=] { return uniqueness(10000 / scale, divisible); }},
      {"good-pair-family", [=] { return good_pairs(10000 / scale); }},
      {"drift-and-shift-laws", [=] { return drift(10000 / scale); }},
      {"beta1-reverse-walk", [=] { return beta1(10000 / scale); }},
      {"extremal-witnesses", extremal},
      {"pair-count-bounds", [=] { return pair_bounds(10000 / scale); }},
      {"s-envelope", [=] { return s_envelope(10000 / scale); }},
      {"density-parameters", density_parameters},
      {"density-strata", [=] { return density_counts(options.quick); }},
      {"stratum-pair-bound", [=] { return stratum_pairs(options.quick ? 4 : 6); }},
      {"slowest-witnesses", slowest_witnesses},
      {"slowest-subset", [=] { return slowest_subset(10000 / scale); }},
  };
  std::vector<SelftestRow> rows;
  for (const auto& [label, suite] : suites) {
    const auto start = std::chrono::steady_clock::now();
    SelftestRow row{label, false, {}, 0};
    try {
      row.detail = suite();
      row.pass = row.detail.empty();
    } catch (const std::exception& e) {
      row.detail = e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace slowwalk::cli
