#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slowwalk/core_sequences.hpp"

namespace slowwalk::testing {

inline const std::vector<std::pair<std::int64_t, std::int64_t>> kTestPairs = {{1, 1}, {2, 1}, {3, 1}, {1, 2},
                                                                              {1, 3}, {2, 3}, {1, 5}};

// The divisibility condition exactly as stated: no l >= 0 makes
// a - alpha*b - l*g_{t+1} a positive multiple of beta. Runs over every l
// until the value stops being positive.
inline bool literal_t_divisible(const Params& params, const BigInt& a, const BigInt& b, long t) {
  BigInt value = a - static_cast<long>(params.alpha()) * b;
  const BigInt& step = params.g(t + 1);
  for (; sgn(value) > 0; value -= step) {
    if (mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(params.beta())) != 0) return false;
  }
  return true;
}

}  // namespace slowwalk::testing
