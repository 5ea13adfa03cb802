#include "slowwalk/bigint.hpp"

#include <stdexcept>

namespace slowwalk {

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (text.front() == '-') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("bare sign is not an integer");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw std::invalid_argument("not a decimal integer: " + std::string(text));
    }
  }
  BigInt out;
  if (out.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a decimal integer: " + std::string(text));
  }
  return out;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

BigInt isqrt(const BigInt& value) {
  if (sgn(value) < 0) throw std::domain_error("isqrt of negative value");
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
  return root;
}

bool is_perfect_square(const BigInt& value) {
  return sgn(value) >= 0 && mpz_perfect_square_p(value.get_mpz_t()) != 0;
}

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_x = 1, x = 0;
  BigInt old_y = 0, y = 1;
  BigInt q, tmp;
  while (sgn(r) != 0) {
    mpz_fdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_x - q * x;
    old_x = x;
    x = tmp;
    tmp = old_y - q * y;
    old_y = y;
    y = tmp;
  }
  return {old_r, old_x, old_y};
}

BigInt floor_mod(const BigInt& value, const BigInt& modulus) {
  BigInt out;
  mpz_fdiv_r(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

BigInt mod_inverse(const BigInt& value, const BigInt& modulus) {
  if (sgn(modulus) <= 0) throw std::domain_error("modulus must be positive");
  if (modulus == 1) return 0;
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw std::domain_error("value is not invertible modulo " + to_decimal(modulus));
  }
  return out;
}

std::int64_t to_int64(const BigInt& value) {
  if (!value.fits_slong_p()) throw std::overflow_error("integer exceeds 64 bits: " + to_decimal(value));
  return value.get_si();
}

}  // namespace slowwalk
