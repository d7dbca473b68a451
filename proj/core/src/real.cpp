#include "eulerp/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eulerp/errors.hpp"

namespace eulerp {

unsigned digits_to_bits(int digits) {
  return static_cast<unsigned>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 8;
}

Real::Real() : Real(kDefaultBits) {}

Real::Real(unsigned bits) {
  mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max(bits, unsigned{MPFR_PREC_MIN})));
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, unsigned bits) : Real(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }

Real::Real(double value, unsigned bits) : Real(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }

Real::Real(const Rational& value, unsigned bits) : Real(bits) {
  mpfr_set_q(v_, value.get().get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept : Real(MPFR_PREC_MIN) { mpfr_swap(v_, other.v_); }

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(std::string_view text, unsigned bits) {
  const std::string s(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return Real(Rational::parse(s), bits);
  }
  Real r(bits);
  char* end = nullptr;
  if (!s.empty()) {
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  }
  if (s.empty() || end != s.c_str() + s.size() || !r.is_finite()) {
    throw InputError("not a decimal number: '" + s + "'");
  }
  return r;
}

Real Real::pi(unsigned bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::ln2(unsigned bits) {
  Real r(bits);
  mpfr_const_log2(r.v_, MPFR_RNDN);
  return r;
}

Real Real::with_bits(unsigned bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

void Real::promote_to(unsigned bits) {
  if (bits > this->bits()) {
    mpfr_prec_round(v_, static_cast<mpfr_prec_t>(bits), MPFR_RNDN);
  }
}

long Real::decimal_exponent() const {
  if (is_zero() || !is_finite()) {
    return 0;
  }
  mpfr_exp_t e = 0;
  char* digits = mpfr_get_str(nullptr, &e, 10, 3, v_, MPFR_RNDN);
  mpfr_free_str(digits);
  return static_cast<long>(e) - 1;
}

std::string Real::str(int sig) const {
  if (!is_finite()) {
    return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  }
  if (is_zero()) {
    return "0";
  }
  sig = std::max(sig, 1);
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(sig), v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string out;
  if (digits.front() == '-') {
    out.push_back('-');
    digits.erase(0, 1);
  }
  const long e = static_cast<long>(e10) - 1;
  if (e >= -2 && e < 16) {
    if (e >= 0) {
      const auto int_len = static_cast<std::size_t>(e + 1);
      if (digits.size() <= int_len) {
        out += digits + std::string(int_len - digits.size(), '0');
      } else {
        out += digits.substr(0, int_len) + "." + digits.substr(int_len);
      }
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    }
    return out;
  }
  out.push_back(digits.front());
  if (digits.size() > 1) {
    out += "." + digits.substr(1);
  }
  out += "e" + std::to_string(e);
  return out;
}

#define EULERP_REAL_BINOP(op, fn)                        \
  Real& Real::operator op(const Real& rhs) {             \
    promote_to(rhs.bits());                              \
    fn(v_, v_, rhs.v_, MPFR_RNDN);                       \
    return *this;                                        \
  }

EULERP_REAL_BINOP(+=, mpfr_add)
EULERP_REAL_BINOP(-=, mpfr_sub)
EULERP_REAL_BINOP(*=, mpfr_mul)
EULERP_REAL_BINOP(/=, mpfr_div)
#undef EULERP_REAL_BINOP

Real& Real::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

Real operator-(long lhs, const Real& rhs) {
  Real r(rhs.bits());
  mpfr_si_sub(r.v_, lhs, rhs.v_, MPFR_RNDN);
  return r;
}

Real operator/(long lhs, const Real& rhs) {
  Real r(rhs.bits());
  mpfr_si_div(r.v_, lhs, rhs.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

template <class F>
Real unary(const Real& x, F fn) {
  Real r(x.bits());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(Real x) {
  mpfr_abs(x.get(), x.get(), MPFR_RNDN);
  return x;
}
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real tgamma(const Real& x) { return unary(x, mpfr_gamma); }

Real pow(const Real& base, const Real& exponent) {
  Real r(std::max(base.bits(), exponent.bits()));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r(base.bits());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

Real inverse_power(long k, const Real& s) {
  Real r(s.bits());
  if (s.is_integer() && mpfr_fits_slong_p(s.get(), MPFR_RNDN)) {
    mpfr_set_si(r.get(), k, MPFR_RNDN);
    mpfr_pow_si(r.get(), r.get(), -s.to_long(), MPFR_RNDN);
    return r;
  }
  mpfr_set_si(r.get(), k, MPFR_RNDN);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  mpfr_mul(r.get(), r.get(), s.get(), MPFR_RNDN);
  mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real inverse_power(long k, long s, unsigned bits) {
  Real r(k, bits);
  mpfr_pow_si(r.get(), r.get(), -s, MPFR_RNDN);
  return r;
}

Real round_to_integer(const Real& x) { return unary(x, mpfr_rint); }

double pow10(int e) {
  if (e > 308) {
    return std::numeric_limits<double>::infinity();
  }
  if (e < -323) {
    return 0.0;
  }
  return std::pow(10.0, e);
}

}  // namespace eulerp
