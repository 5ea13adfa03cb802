#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "slowwalk/core_sequences.hpp"
#include "slowwalk/errors.hpp"
#include "support.hpp"

using namespace slowwalk;

namespace {

std::vector<Params> random_coprime_pairs(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(1, 20);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<Params> out;
  while (static_cast<int>(out.size()) < count) {
    const std::int64_t a = dist(rng);
    const std::int64_t b = dist(rng);
    if (std::gcd(a, b) == 1 && seen.insert({a, b}).second) out.push_back(make_params(a, b));
  }
  return out;
}

bool near(const Real& x, double expected, double tol) { return std::abs(x.to_double() - expected) < tol; }

}  // namespace

TEST_SUITE("bigint") {
  TEST_CASE("decimal parsing is strict and exact") {
    const std::string forty = "1234567890123456789012345678901234567890";
    CHECK(to_decimal(parse_decimal(forty)) == forty);
    CHECK(to_decimal(parse_decimal("-17")) == "-17");
    CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal("-"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal("12a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal(" 12"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal("+12"), std::invalid_argument);
  }

  TEST_CASE("integer square root has floor semantics") {
    CHECK(isqrt(BigInt(500)) == 22);
    CHECK(isqrt(BigInt(0)) == 0);
    CHECK(isqrt(BigInt(99)) == 9);
    CHECK(isqrt(BigInt(100)) == 10);
    const BigInt big_square = BigInt("123456789012345678901234567890") * BigInt("123456789012345678901234567890");
    CHECK(isqrt(big_square) == BigInt("123456789012345678901234567890"));
    CHECK(isqrt(BigInt(big_square - 1)) == BigInt("123456789012345678901234567889"));
    CHECK(is_perfect_square(BigInt(9)));
    CHECK_FALSE(is_perfect_square(BigInt(5)));
    CHECK_THROWS_AS(isqrt(BigInt(-1)), std::domain_error);
  }

  TEST_CASE("modular inverse agrees with extended Euclid") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> dist(1, 1000000);
    for (int i = 0; i < 2000; ++i) {
      const BigInt m = dist(rng) + 1;
      const BigInt v = dist(rng);
      const ExtendedGcd e = extended_gcd(v, m);
      CHECK(e.gcd == e.x * v + e.y * m);
      if (e.gcd == 1) {
        const BigInt inv = mod_inverse(v, m);
        CHECK(floor_mod(BigInt(inv * v), m) == (m == 1 ? 0 : 1));
        CHECK(inv == floor_mod(e.x, m));
      } else {
        CHECK_THROWS_AS(mod_inverse(v, m), std::domain_error);
      }
    }
    CHECK(mod_inverse(BigInt(5), BigInt(1)) == 0);
  }

  TEST_CASE("floor_mod and 64-bit conversion") {
    CHECK(floor_mod(BigInt(-7), BigInt(3)) == 2);
    CHECK(to_int64(BigInt("9223372036854775807")) == INT64_MAX);
    CHECK_THROWS_AS(to_int64(BigInt("9223372036854775808")), std::overflow_error);
  }
}

TEST_SUITE("params") {
  TEST_CASE("golden ratio for (1,1)") {
    const Params p = make_params(1, 1);
    CHECK(near(p.gamma(), 1.6180339887, 1e-10));
    CHECK(near(p.lambda(), -0.6180339887, 1e-10));
    CHECK_FALSE(p.gamma_is_rational());
  }

  TEST_CASE("(1,2) has integer roots") {
    const Params p = make_params(1, 2);
    CHECK(p.gamma_is_rational());
    CHECK(p.gamma() == Real(2L, kDefaultPrecision));
    CHECK(p.lambda() == Real(-1L, kDefaultPrecision));
    CHECK(p.disc() == 9);
  }

  TEST_CASE("invalid pairs are rejected") {
    CHECK_THROWS_AS(make_params(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_params(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, -3), std::invalid_argument);
  }

  TEST_CASE("root identities hold for random pairs") {
    for (const Params& p : random_coprime_pairs(25, 11)) {
      const Real tol = pow2(-200, kDefaultPrecision);
      const Real alpha(static_cast<long>(p.alpha()), kDefaultPrecision);
      const Real beta(static_cast<long>(p.beta()), kDefaultPrecision);
      CHECK(abs(p.gamma() * p.lambda() + beta) < tol);
      CHECK(abs(p.gamma() + p.lambda() - alpha) < tol);
      CHECK(abs(p.gamma() * p.gamma() - alpha * p.gamma() - beta) < tol);
      CHECK(p.lambda().sign() < 0);
      CHECK(p.gamma() > alpha);
      CHECK(p.gamma() > sqrt(beta));
      CHECK(p.gamma() > abs(p.lambda()));
    }
  }

  TEST_CASE("label and ordering") {
    CHECK(make_params(2, 3).label() == "2:3");
    CHECK(make_params(1, 5) < make_params(2, 1));
    CHECK(make_params(1, 2) == make_params(1, 2));
  }
}

TEST_SUITE("gen_fib") {
  TEST_CASE("small tables") {
    const Params fib = make_params(1, 1);
    const std::vector<long> f = {1, 1, 2, 3, 5, 8, 13};
    for (long k = 1; k <= 7; ++k) CHECK(gen_fib(fib, k) == f[k - 1]);
    const Params pell = make_params(2, 1);
    const std::vector<long> g21 = {1, 2, 5, 12, 29};
    for (long k = 1; k <= 5; ++k) CHECK(gen_fib(pell, k) == g21[k - 1]);
    const Params p13 = make_params(1, 3);
    const std::vector<long> g13 = {1, 1, 4, 7, 19, 40};
    for (long k = 1; k <= 6; ++k) CHECK(gen_fib(p13, k) == g13[k - 1]);
    CHECK(gen_fib(fib, 0) == 0);
    CHECK_THROWS_AS(gen_fib(fib, -1), std::invalid_argument);
  }

  TEST_CASE("recurrence and monotonicity") {
    for (const Params& p : random_coprime_pairs(10, 3)) {
      CHECK(p.g(2) == p.alpha());
      for (long k = 0; k <= 150; ++k) {
        CHECK(p.g(k + 2) == p.alpha() * p.g(k + 1) + p.beta() * p.g(k));
        if (k >= 2) CHECK(p.g(k + 1) > p.g(k));
      }
    }
  }

  TEST_CASE("identity suite for k <= 300 on 10 random pairs") {
    for (const Params& p : random_coprime_pairs(10, 20240601u)) {
      CAPTURE(p.label());
      const BigInt beta = big(p.beta());
      BigInt sign = 1;
      for (long k = 0; k <= 300; ++k) {
        if (k >= 1) REQUIRE(gcd(p.g(k), beta) == 1);
        REQUIRE(gcd(p.g(k + 1), BigInt(beta * p.g(k))) == 1);
        REQUIRE(p.g(k + 1) * p.g(k + 1) - p.g(k) * p.g(k + 2) == sign);
        sign *= -beta;
        if (k >= 1) {
          const mpfr_prec_t prec = working_precision(p, k, 64);
          const Real gamma = p.gamma(prec);
          const Real lambda = p.lambda(prec);
          const Real binet = (pow(gamma, k) - pow(lambda, k)) / (gamma - lambda);
          const Real gk(p.g(k), prec);
          REQUIRE(abs(gk - binet) / gk < Real(1e-9, prec));
        }
      }
    }
  }

  TEST_CASE("shared tables stay consistent across copies") {
    const Params a = make_params(3, 2);
    const Params b = a;
    const BigInt& far = b.g(400);
    CHECK(a.g(400) == far);
    CHECK(a.g(399) * 3 + a.g(398) * 2 == far);
  }
}

TEST_SUITE("walk") {
  TEST_CASE("6-slow walks") {
    const Params p = make_params(1, 1);
    CHECK(walk_term(p, BigInt(2), BigInt(2), 4) == 6);
    CHECK(walk_term(p, BigInt(4), BigInt(1), 4) == 6);
    Walk w(p, BigInt(2), BigInt(2));
    CHECK(w.term(1) == 2);
    CHECK(w.term(2) == 2);
    CHECK(w.term(3) == 4);
    CHECK(w.term(5) == 10);
  }

  TEST_CASE("first two terms are the seeds") {
    for (const auto& [alpha, beta] : testing::kTestPairs) {
      const Params p = make_params(alpha, beta);
      CHECK(walk_term(p, BigInt(7), BigInt(3), 1) == 7);
      CHECK(walk_term(p, BigInt(7), BigInt(3), 2) == 3);
    }
  }

  TEST_CASE("recurrence equals closed form up to k = 200") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> seed(1, 1000);
    for (const Params& p : random_coprime_pairs(6, 9)) {
      const BigInt b = seed(rng);
      const BigInt a = seed(rng);
      Walk w(p, b, a);
      for (long k = 3; k <= 200; ++k) REQUIRE(w.term(k) == walk_term_closed_form(p, b, a, k));
    }
  }

  TEST_CASE("invalid indices") {
    const Params p = make_params(1, 1);
    CHECK_THROWS(walk_term(p, BigInt(1), BigInt(1), 0));
    CHECK_THROWS(walk_term(p, BigInt(0), BigInt(1), 3));
  }
}

TEST_SUITE("floor_gamma_n") {
  TEST_CASE("examples") {
    const GammaFloor f10 = floor_gamma_n(make_params(1, 1), BigInt(10));
    CHECK(f10.floor == 16);
    CHECK(f10.ceil == 17);
    CHECK_FALSE(f10.exact);
    const GammaFloor f7 = floor_gamma_n(make_params(1, 2), BigInt(7));
    CHECK(f7.floor == 14);
    CHECK(f7.ceil == 14);
    CHECK(f7.exact);
    const GammaFloor f6 = floor_gamma_n(make_params(1, 1), BigInt(6));
    CHECK(f6.floor == 9);
    CHECK(f6.ceil == 10);
  }

  TEST_CASE("bracketing in high precision") {
    for (const auto& [alpha, beta] : testing::kTestPairs) {
      const Params p = make_params(alpha, beta);
      for (long n = 1; n <= 3000; ++n) {
        const GammaFloor f = floor_gamma_n(p, BigInt(n));
        const Real x = p.gamma() * Real(BigInt(n), kDefaultPrecision);
        REQUIRE(Real(f.floor, kDefaultPrecision) <= x);
        REQUIRE(x < Real(BigInt(f.floor + 1), kDefaultPrecision));
        if (p.gamma_is_rational()) REQUIRE(f.exact);
      }
    }
    const Params p12 = make_params(1, 2);
    for (long n = 1; n <= 500; ++n) CHECK(floor_gamma_n(p12, BigInt(n)).floor == 2 * n);
  }

  TEST_CASE("rational gamma with odd alpha: (2,3) gives gamma = 3") {
    const GammaFloor f = floor_gamma_n(make_params(2, 3), BigInt(11));
    CHECK(f.floor == 33);
    CHECK(f.exact);
  }

  TEST_CASE("huge n stays exact") {
    const BigInt n("5000966512101628011743180761388223");
    const Params p = make_params(1, 1);
    const GammaFloor f = floor_gamma_n(p, n);
    const mpfr_prec_t prec = 512;
    const Real x = p.gamma(prec) * Real(n, prec);
    CHECK(x.floor() == f.floor);
  }
}

TEST_SUITE("drift_term") {
  TEST_CASE("examples") {
    const Params fib = make_params(1, 1);
    const Real d = drift_term(fib, BigInt(2), BigInt(2), 4);
    CHECK(near(d, 10 - 6 * 1.6180339887498949, 1e-12));
    CHECK(near(d, 0.2917960675, 1e-9));
    const Params p12 = make_params(1, 2);
    CHECK(drift_term(p12, BigInt(1), BigInt(1), 2) == Real(1L, kDefaultPrecision));
  }

  TEST_CASE("gap w_{k+1} - gamma*w_k equals the drift") {
    for (const auto& [alpha, beta] : testing::kTestPairs) {
      const Params p = make_params(alpha, beta);
      for (long k = 1; k <= 60; ++k) {
        const mpfr_prec_t prec = working_precision(p, k + 1, 64);
        const BigInt b = 17;
        const BigInt a = 5;
        const Real gap = Real(walk_term(p, b, a, k + 1), prec) - p.gamma(prec) * Real(walk_term(p, b, a, k), prec);
        REQUIRE(close_relative(gap, drift_term(p, b, a, k, prec), 1e-30, pow2(-(prec / 2), prec)));
      }
    }
  }

  TEST_CASE("nearly balanced seeds decay") {
    const Params p = make_params(1, 1);
    const BigInt b("1000000000000000000000");
    const BigInt a = floor_gamma_n(p, b).floor;
    for (long k = 1; k <= 20; ++k) {
      const Real bound = pow(abs(p.lambda()), k - 1);
      CHECK(abs(drift_term(p, b, a, k)) < bound);
    }
  }
}

TEST_SUITE("real") {
  TEST_CASE("rounding helpers") {
    const Real x(2.5, 128);
    CHECK(x.floor() == 2);
    CHECK(x.ceil() == 3);
    CHECK_FALSE(x.is_integer());
    CHECK(Real(4L, 128).is_integer());
    CHECK(distance_to_integer(Real(2.75, 128)).to_double() == doctest::Approx(0.25));
    CHECK(pow2(-3, 64).to_double() == 0.125);
  }

  TEST_CASE("relative closeness") {
    const Real floor = pow2(-100, 128);
    CHECK(close_relative(Real(1.0, 128), Real(1.0 + 1e-9, 128), 1e-6, floor));
    CHECK_FALSE(close_relative(Real(1.0, 128), Real(1.1, 128), 1e-6, floor));
    CHECK(close_relative(Real(0L, 128), Real(0L, 128), 1e-6, floor));
  }

  TEST_CASE("mixed precision takes the larger") {
    const Real a(1L, 64);
    const Real b(1L, 300);
    CHECK((a + b).precision() == 300);
  }
}
