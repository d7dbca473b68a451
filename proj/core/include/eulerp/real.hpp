#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "eulerp/rational.hpp"

namespace eulerp {

/// Binary precision needed to carry `digits` decimal digits, plus a few spare bits.
unsigned digits_to_bits(int digits);

/// Owning wrapper around an MPFR number.
///
/// Every value carries its own precision; binary operations round to the larger
/// of the two operand precisions, so results never depend on global state.
class Real {
 public:
  static constexpr unsigned kDefaultBits = 64;

  Real();
  explicit Real(unsigned bits);
  Real(long value, unsigned bits);
  Real(int value, unsigned bits) : Real(static_cast<long>(value), bits) {}
  Real(double value, unsigned bits);
  Real(const Rational& value, unsigned bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal literal such as "1.159e-3" or a fraction "p/q".
  static Real parse(std::string_view text, unsigned bits);
  static Real pi(unsigned bits);
  static Real ln2(unsigned bits);

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  /// Same value rounded to a different precision.
  Real with_bits(unsigned bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Decimal exponent e with 10^e <= |x| < 10^(e+1); 0 for x == 0.
  long decimal_exponent() const;

  /// Shortest round-trip-free rendering with `sig` significant digits,
  /// positional for moderate magnitudes and scientific otherwise.
  std::string str(int sig) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator/(long lhs, const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  void promote_to(unsigned bits);

  mpfr_t v_;
};

Real abs(Real x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real cos(const Real& x);
Real sin(const Real& x);
Real tan(const Real& x);
/// Euler Gamma function (MPFR).
Real tgamma(const Real& x);
/// k^-s for integer k >= 1.
Real inverse_power(long k, const Real& s);
Real inverse_power(long k, long s, unsigned bits);
Real round_to_integer(const Real& x);

/// 10^e as a double, saturating instead of overflowing.
double pow10(int e);

}  // namespace eulerp
