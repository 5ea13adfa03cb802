#include "slowwalk/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slowwalk {

namespace {

// g_0..g_count in 64 bits, saturating at INT64_MAX.
std::vector<std::int64_t> small_fib(std::int64_t alpha, std::int64_t beta, long count) {
  std::vector<std::int64_t> g{0, 1};
  constexpr __int128 kMax = INT64_MAX;
  while (static_cast<long>(g.size()) <= count) {
    const std::size_t m = g.size();
    const __int128 next = static_cast<__int128>(alpha) * g[m - 1] + static_cast<__int128>(beta) * g[m - 2];
    g.push_back(static_cast<std::int64_t>(std::min(next, kMax)));
  }
  return g;
}

}  // namespace

OracleResult s_oracle_diophantine(const Params& params, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("oracle requires n >= 1");
  if (n > (std::int64_t{1} << 62)) throw std::invalid_argument("oracle limited to 62-bit n");
  const std::int64_t alpha = params.alpha();
  const std::int64_t beta = params.beta();
  const double gamma = (static_cast<double>(alpha) + std::sqrt(static_cast<double>(alpha * alpha + 4 * beta))) / 2.0;
  // s(n) <= log_gamma(n) + 2; one index of slack against rounding.
  const long s_top = static_cast<long>(std::floor(std::log(static_cast<double>(n)) / std::log(gamma))) + 3;
  const std::vector<std::int64_t> g = small_fib(alpha, beta, s_top + 1);

  OracleResult out;
  for (long s = s_top; s >= 3; --s) {
    const std::int64_t lead = g[static_cast<std::size_t>(s - 1)];
    const __int128 tail = static_cast<__int128>(beta) * g[static_cast<std::size_t>(s - 2)];
    for (std::int64_t b = 1; static_cast<__int128>(b) * tail < n; ++b) {
      const __int128 rest = static_cast<__int128>(n) - static_cast<__int128>(b) * tail;
      if (rest % lead == 0) out.pairs.emplace_back(b, static_cast<std::int64_t>(rest / lead));
    }
    if (!out.pairs.empty()) {
      out.s = s;
      return out;
    }
  }
  out.s = 2;
  return out;
}

OracleResult s_oracle_bruteforce(const Params& params, std::int64_t n, std::int64_t cap) {
  if (n < 1) throw std::invalid_argument("oracle requires n >= 1");
  if (n > cap) throw std::invalid_argument("brute force refuses n above its cap");
  const std::int64_t alpha = params.alpha();
  const std::int64_t beta = params.beta();
  OracleResult out;
  out.s = 0;
  for (std::int64_t a1 = 1; a1 <= n; ++a1) {
    for (std::int64_t a2 = 1; a2 <= n; ++a2) {
      // Terms from index 2 on strictly increase, so stop once past n.
      std::int64_t prev = a1;
      std::int64_t cur = a2;
      long index = 2;
      long hit = (a1 == n) ? 1 : 0;
      while (cur <= n) {
        if (cur == n) hit = index;
        const std::int64_t next = alpha * cur + beta * prev;
        prev = cur;
        cur = next;
        ++index;
      }
      if (hit == 0) continue;
      if (hit > out.s) {
        out.s = hit;
        out.pairs.clear();
      }
      if (hit == out.s) out.pairs.emplace_back(a1, a2);
    }
  }
  if (out.s == 2) {
    // Every (x, n) is good; report the family up to the cap.
    out.pairs.clear();
    for (std::int64_t x = 1; x <= cap; ++x) out.pairs.emplace_back(x, n);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

std::optional<std::string> oracle_mismatch(const Certificate& cert, const OracleResult& oracle) {
  const std::string where = " for n=" + to_decimal(cert.n) + " with " + cert.params.label();
  if (cert.s != oracle.s) {
    return "s=" + std::to_string(cert.s) + " but oracle s=" + std::to_string(oracle.s) + where;
  }
  if (cert.degenerate) return std::nullopt;
  std::vector<std::pair<std::int64_t, std::int64_t>> engine;
  for (const GoodPair& pair : enumerate_good_pairs(cert).pairs) engine.emplace_back(to_int64(pair.b), to_int64(pair.a));
  std::sort(engine.begin(), engine.end());
  if (engine != oracle.pairs) {
    return std::to_string(engine.size()) + " good pairs but oracle has " + std::to_string(oracle.pairs.size()) + where;
  }
  return std::nullopt;
}

}  // namespace slowwalk
