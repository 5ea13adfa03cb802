#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace slowwalk {

using BigInt = mpz_class;

// Strict decimal parse: optional leading '-', digits only. Throws
// std::invalid_argument on anything else.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& value);

// floor(sqrt(value)) for value >= 0.
BigInt isqrt(const BigInt& value);

bool is_perfect_square(const BigInt& value);

struct ExtendedGcd {
  BigInt gcd;
  BigInt x;  // gcd == x*a + y*b
  BigInt y;
};

// Iterative extended Euclid on non-negative inputs.
ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b);

// Inverse of value modulo modulus in [0, modulus). modulus == 1 yields 0.
// Throws std::domain_error when gcd(value, modulus) != 1.
BigInt mod_inverse(const BigInt& value, const BigInt& modulus);

// Floor-semantics modulo: result in [0, modulus) for modulus > 0.
BigInt floor_mod(const BigInt& value, const BigInt& modulus);

// Exact conversion; throws std::overflow_error when value does not fit.
std::int64_t to_int64(const BigInt& value);

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace slowwalk
