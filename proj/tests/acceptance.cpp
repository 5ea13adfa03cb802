// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or when the only failures are
// listed as known unattainable (a stated value that is provably not what the
// definitions produce). Any other failure exits 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slowwalk/cli/csv.hpp"
#include "slowwalk/density.hpp"
#include "slowwalk/extremal_bounds.hpp"
#include "slowwalk/oracles.hpp"
#include "slowwalk/slowest.hpp"

using namespace slowwalk;

namespace {

using Clock = std::chrono::steady_clock;
using PairList = std::vector<std::pair<std::int64_t, std::int64_t>>;

const PairList kPairs = {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 5}};

// The stated singleton S(5000966512101628011743180761388223) = {(1,4)}.
// s^{1,4} = 84 needs n >= g_83 + 4*g_82 = 5000966512101628081145532850320585,
// which exceeds this n, while s^{1,1}(n) = 83, so (1,4) cannot be the sole
// achiever. The check is run as stated and its failure is tolerated.
const char* const kLiteral34 = "5000966512101628011743180761388223";

struct Outcome {
  bool pass = false;
  std::string detail;
  bool known_unattainable = false;
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

Outcome fail(std::string detail) { return {false, std::move(detail), false}; }

Outcome oracle_equivalence() {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 2; n <= 2000; ++n) {
      const Certificate cert = characterize(params, big(n));
      if (auto diff = oracle_mismatch(cert, s_oracle_diophantine(params, n))) {
        return fail(params.label() + " n=" + std::to_string(n) + ": " + *diff);
      }
      if (n <= 200) {
        if (auto diff = oracle_mismatch(cert, s_oracle_bruteforce(params, n))) {
          return fail(params.label() + " n=" + std::to_string(n) + " (brute force): " + *diff);
        }
      }
    }
  }
  return {true, "7 pairs, n in [2,2000] vs Diophantine oracle, n <= 200 vs brute force"};
}

Outcome point_values() {
  const Params fib = make_params(1, 1);
  const Certificate c6 = characterize(fib, BigInt(6));
  const std::vector<GoodPair> expected = {{2, 2}, {4, 1}};
  std::vector<GoodPair> got = enumerate_good_pairs(c6).pairs;
  std::sort(got.begin(), got.end(), [](const GoodPair& x, const GoodPair& y) { return x.b < y.b; });
  if (c6.s != 4 || got != expected) return fail("(1,1): s(6) or its good pairs differ");
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    if (characterize(params, BigInt(1)).s != 2) return fail(params.label() + ": s(1) != 2");
    const ExtremalWitness w = extremal_witness(params, 3);
    if (p_of_n(params, w.n) != PairCount::finite(alpha * alpha + 2 * beta - 1)) {
      return fail(params.label() + ": p(n_3) != alpha^2 + 2*beta - 1");
    }
  }
  if (extremal_witness(fib, 3).n != 6 || p_of_n(fib, BigInt(6)) != PairCount::finite(2)) return fail("(1,1) at n=6");
  const Params p21 = make_params(2, 1);
  if (extremal_witness(p21, 3).n != 60 || p_of_n(p21, BigInt(60)) != PairCount::finite(5)) return fail("(2,1) at n=60");
  return {true, "s(6)=4 with {(2,2),(4,1)}; s(1)=2 and p(n_3)=alpha^2+2*beta-1 for 7 pairs"};
}

Outcome certificate_laws() {
  std::int64_t checked = 0;
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= 100000; ++n) {
      const Certificate cert = characterize(params, big(n));
      if (cert.degenerate) continue;
      const DriftCheck d = drift_bound_check(cert);
      if (!d.matches) return fail(params.label() + " n=" + std::to_string(n) + ": drift != |lambda^t (gamma b - a)|");
      if (!d.within_bound) return fail(params.label() + " n=" + std::to_string(n) + ": drift > 2 beta^{t+1}");
      w_next_values(cert);  // throws on a shift-law violation
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " certificates: drift closed form (rel 1e-6), bound, shift law"};
}

Outcome beta_one_path() {
  for (std::int64_t alpha = 1; alpha <= 3; ++alpha) {
    const Params params = make_params(alpha, 1);
    for (std::int64_t n = alpha + 1; n <= 100000; ++n) {
      const Certificate fast = reverse_walk_beta1(params, big(n));
      const Certificate cert = characterize(params, big(n));
      if (fast.s != cert.s || fast.t != cert.t || fast.a != cert.a || fast.b != cert.b) {
        return fail(params.label() + " n=" + std::to_string(n) + ": reverse walk differs");
      }
      if (!cert.degenerate) w_next_values(cert);  // checks floor/ceil law for beta = 1
    }
  }
  return {true, "alpha in {1,2,3}, n <= 1e5: reverse walk == characterize, floor/ceil law exact"};
}

Outcome identities() {
  std::mt19937 rng(20240601u);
  std::uniform_int_distribution<std::int64_t> dist(1, 20);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  while (seen.size() < 10) {
    const std::int64_t alpha = dist(rng), beta = dist(rng);
    if (std::gcd(alpha, beta) != 1 || !seen.insert({alpha, beta}).second) continue;
    const Params params = make_params(alpha, beta);
    BigInt sign = 1;
    for (long k = 0; k <= 300; ++k) {
      const std::string at = params.label() + " k=" + std::to_string(k);
      const BigInt gk = gen_fib(params, k);
      if (gk != params.g(k)) return fail(at + ": table and direct recurrence differ");
      if (k >= 1 && gcd(gk, big(beta)) != 1) return fail(at + ": gcd(g_k, beta) != 1");
      if (gcd(params.g(k + 1), BigInt(big(beta) * gk)) != 1) return fail(at + ": gcd(g_{k+1}, beta g_k) != 1");
      if (params.g(k + 1) * params.g(k + 1) - gk * params.g(k + 2) != sign) return fail(at + ": Cassini form");
      sign *= -beta;
      if (k >= 1) {
        const mpfr_prec_t prec = working_precision(params, k, 64);
        const Real gamma = params.gamma(prec), lambda = params.lambda(prec);
        const Real binet = (pow(gamma, k) - pow(lambda, k)) / (gamma - lambda);
        const Real g(gk, prec);
        if (!(abs(g - binet) / g < Real(1e-9, prec))) return fail(at + ": Binet form off by more than 1e-9");
      }
    }
  }
  return {true, "10 random coprime pairs, k <= 300: coprimality and Cassini exact, Binet rel 1e-9"};
}

Outcome bounds() {
  for (const auto& [alpha, beta] : kPairs) {
    const Params params = make_params(alpha, beta);
    for (std::int64_t n = 1; n <= 100000; ++n) {
      const Certificate cert = characterize(params, big(n));
      if (s_lower_chicken(params, big(n)) > cert.s) return fail(params.label() + " n=" + std::to_string(n) + ": chicken");
      if (cert.degenerate) continue;
      const SBoundCheck c = check_s_bounds(params, big(n), cert.s);
      if (!c.ok()) return fail(params.label() + " n=" + std::to_string(n) + ": envelope");
    }
  }
  return {true, "7 pairs, n <= 1e5: envelope, chicken bound and Fibonacci refinement exact"};
}

struct DensityCase {
  std::int64_t alpha, beta, p;
  long r;
  std::vector<double> grid;
};

struct DensityResult {
  double max_dev = 0;
  int compared = 0;
  std::vector<DensityRow> rows;
};

DensityResult run_density(const DensityCase& dc) {
  const Params params = make_params(dc.alpha, dc.beta);
  DensityResult out;
  out.rows = density_curve(DensityJob{params, dc.p, dc.r, dc.grid});  // throws if DIRECT != STRATIFIED
  for (const DensityRow& row : out.rows) {
    if (!row.theory_density) continue;
    out.max_dev = std::max(out.max_dev, std::fabs(row.empirical_density - *row.theory_density));
    ++out.compared;
  }
  return out;
}

// Everything criterion 7 generates, kept for criterion 8.
struct DensityLog {
  std::vector<std::pair<Params, DensityRow>> rows;
  std::vector<std::pair<Params, long>> scales;
};

Outcome density(DensityLog& log) {
  std::vector<double> fib_grid;
  for (int i = 10; i <= 26; ++i) fib_grid.push_back(i / 10.0);
  const Params p21 = make_params(2, 1), p15 = make_params(1, 5);
  struct Check {
    DensityCase dc;
    double tol;
  };
  std::vector<Check> checks = {{{1, 1, 1, 10, fib_grid}, 0.02}};
  for (std::int64_t p = 1; p <= 4; ++p) checks.push_back({{2, 1, p, 6, default_c_grid(p21)}, 0.03});
  for (std::int64_t p = 5; p <= 6; ++p) {
    checks.push_back({{1, 5, p, 4, default_c_grid(p15)}, 0.10});
    checks.push_back({{1, 5, p, 2, default_c_grid(p15)}, -1});  // decay reference only
  }

  std::ostringstream detail;
  bool ok = true;
  double dev15_r4 = 0, dev15_r2 = 0;
  for (const Check& c : checks) {
    const DensityResult res = run_density(c.dc);
    const Params params = make_params(c.dc.alpha, c.dc.beta);
    for (const DensityRow& row : res.rows) log.rows.push_back({params, row});
    log.scales.push_back({params, c.dc.r});
    if (c.dc.alpha == 1 && c.dc.beta == 5) (c.dc.r == 4 ? dev15_r4 : dev15_r2) = std::max(c.dc.r == 4 ? dev15_r4 : dev15_r2, res.max_dev);
    if (c.tol < 0) continue;
    if (res.compared == 0 || res.max_dev > c.tol) ok = false;
    detail << params.label() << " p=" << c.dc.p << " r=" << c.dc.r << ": " << fmt(res.max_dev) << " over "
           << res.compared << " pts; ";
  }
  if (!(dev15_r4 < dev15_r2)) ok = false;
  detail << "(1,5) decay r=2 " << fmt(dev15_r2) << " -> r=4 " << fmt(dev15_r4) << "; DIRECT == STRATIFIED";
  return {ok, detail.str()};
}

Outcome strata(const DensityLog& log) {
  std::size_t strata_checked = 0;
  for (const auto& [params, row] : log.rows) {
    for (const StrataCount& s : row.strata) {
      if (!within_stratum_bound(params, row.n_cr, s)) {
        return fail(params.label() + " n=" + to_decimal(row.n_cr) + ": stratum (q=" + std::to_string(s.q) +
                    ", t=" + std::to_string(s.t) + ") over its bound");
      }
      ++strata_checked;
    }
  }
  std::vector<std::pair<Params, long>> scales = log.scales;
  for (const auto& [alpha, beta] : PairList{{1, 1}, {2, 1}, {1, 2}, {2, 3}}) {
    for (long r = 3; r <= 7; ++r) scales.push_back({make_params(alpha, beta), r});
  }
  for (const auto& [params, r] : scales) {
    const auto bad = lpairs_violations(params, r);
    if (!bad.empty()) {
      return fail(params.label() + " r=" + std::to_string(r) + ": m=" + std::to_string(bad.front()) +
                  " has p(m) > beta and t(m) > r");
    }
  }
  return {true, std::to_string(strata_checked) + " strata within bound; no pair-count violations at " +
                    std::to_string(scales.size()) + " scales"};
}

Outcome slowest_sets() {
  std::ostringstream detail;
  bool ok = true;
  std::vector<std::string> failed;
  for (const WitnessCheck& w : shared_witnesses()) {
    if (!w.ok) failed.push_back(to_decimal(w.n));
  }
  double literal_seconds = 0;
  for (const WitnessCheck& w : exclusive_witnesses()) {
    const bool literal = to_decimal(w.n) == kLiteral34;
    if (literal) {
      const auto start = Clock::now();
      ss_and_S(w.n, default_R());
      literal_seconds = seconds_since(start);
    }
    if (!w.ok) failed.push_back(to_decimal(w.n) + " -> {" + w.report.achievers_label() + "}");
  }
  ok = failed.empty() && literal_seconds < 5.0;
  detail << "8 stated sets, 34-digit case " << fmt(literal_seconds, 2) << " s";
  for (const std::string& f : failed) detail << "; mismatch " << f;
  Outcome out{ok, detail.str()};
  out.known_unattainable = !ok && literal_seconds < 5.0 && failed.size() == 1 &&
                           failed.front().rfind(kLiteral34, 0) == 0;
  if (out.known_unattainable) {
    const SlowestReport alt = ss_and_S(BigInt("1952318330933765624209630653650309"), default_R());
    out.detail += "; known unattainable (s^{1,1}=83 > s^{1,4}); g_82+4g_81 gives {" + alt.achievers_label() + "}";
  }
  return out;
}

// Round-trips rows through CSV and checks the value column.
std::string series_csv_problem(const std::vector<SeriesRow>& rows, bool normalized) {
  cli::Table table{{"n", "value"}, {}};
  for (const SeriesRow& r : rows) table.rows.push_back({std::to_string(r.n), cli::format_density(r.value)});
  const cli::Table back = cli::parse_csv(cli::to_csv(table));
  if (back.header != table.header || back.rows != table.rows) return "CSV round-trip differs";
  double prev_count = -1;
  std::int64_t prev_n = 0;
  for (const SeriesRow& r : rows) {
    if (r.n <= prev_n) return "n not increasing at " + std::to_string(r.n);
    const double count = normalized ? r.value * static_cast<double>(r.n) : r.value;
    if (normalized && (r.value < 0 || r.value > 1)) return "value outside [0,1] at n=" + std::to_string(r.n);
    if (count + 1e-6 < prev_count) return "count decreases at n=" + std::to_string(r.n);
    prev_count = count;
    prev_n = r.n;
  }
  return {};
}

Outcome series() {
  std::ostringstream detail;
  const std::vector<SeriesRow> i12 = i_series(default_R(), make_params(1, 2), 50000, 100);
  if (auto p = series_csv_problem(i12, false); !p.empty()) return fail("i_{1,2}: " + p);
  detail << "i_{1,2}(5e4)=" << i12.back().value << " slope " << fmt(loglog_slope_top_decade(i12), 3);

  const ValidSet T{{1, 6}, {2, 3}};
  const std::vector<SlowestReport> scan = slowest_scan(T, 100000);
  for (const Params& target : T.members()) {
    const std::vector<SeriesRow> e = e_series_from(scan, target, 100);
    if (auto p = series_csv_problem(e, true); !p.empty()) return fail("e_" + target.label() + ": " + p);
    detail << "; e_" << target.label() << "(1e5)=" << fmt(e.back().value);
  }

  const std::vector<SeriesRow> e11 = e_series(default_R(), make_params(1, 1), 10000, 100);
  if (auto p = series_csv_problem(e11, true); !p.empty()) return fail("e_{1,1}: " + p);
  detail << "; e_(1,1)(1e4)=" << fmt(e11.back().value);
  return {e11.back().value > 0.9, detail.str()};
}

}  // namespace

int main() {
  DensityLog log;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"point values", point_values},
      {"certificate drift and shift laws", certificate_laws},
      {"beta = 1 fast path", beta_one_path},
      {"sequence identities", identities},
      {"s(n) bounds", bounds},
      {"density reproduction", [&] { return density(log); }},
      {"stratum and pair-count bounds", [&] { return strata(log); }},
      {"slowest-walk achiever sets", slowest_sets},
      {"slowest-walk series", series},
  };
  int unexpected = 0;
  int tolerated = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu [PRIMARY] %s: %s — %s (%.1f s)\n", i + 1, out.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), out.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    if (!out.pass) (out.known_unattainable ? tolerated : unexpected) += 1;
  }
  std::printf("summary: %d unexpected failure(s), %d known-unattainable failure(s)\n", unexpected, tolerated);
  return unexpected == 0 ? 0 : 1;
}
