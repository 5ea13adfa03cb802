#pragma once

#include <mpfr.h>

#include <string>

#include "slowwalk/bigint.hpp"

namespace slowwalk {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Owning MPFR value with an explicit binary precision.
///
/// Binary operations produce a result at the larger of the two operand
/// precisions, rounded to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = kDefaultPrecision);
  Real(long value, mpfr_prec_t precision);
  Real(const BigInt& value, mpfr_prec_t precision);
  Real(double value, mpfr_prec_t precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const;
  BigInt floor() const;
  BigInt ceil() const;
  BigInt round() const;
  bool is_integer() const;
  int sign() const;
  std::string to_string(int digits = 20) const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real pow(const Real& x, long exponent);
Real log(const Real& x);
// |a - b| <= rel * max(|a|, |b|), or both within abs_floor of zero.
bool close_relative(const Real& a, const Real& b, double rel, const Real& abs_floor);

// Distance from x to the nearest integer.
Real distance_to_integer(const Real& x);

// 2^exponent at the given precision.
Real pow2(long exponent, mpfr_prec_t precision);

}  // namespace slowwalk
