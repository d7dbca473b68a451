#pragma once

#include <functional>
#include <string>

#include "eulerp/rational.hpp"
#include "eulerp/real.hpp"

namespace eulerp {

/// Guard digits carried internally beyond the requested precision.
inline constexpr int kGuardDigits = 10;

/// Binary precision used for a computation requested at `prec` decimal digits.
inline unsigned working_bits(int prec) { return digits_to_bits(prec + kGuardDigits); }

/// 10^-prec.
inline double tolerance(int prec) { return pow10(-prec); }

/// A high-precision value together with an absolute error bound.
///
/// Bounds are heuristic (first omitted term plus a rounding allowance), not
/// interval-certified.
struct BigReal {
  Real value;
  double err = 0.0;
  int prec = 0;

  /// Value rounded to `prec` significant digits.
  std::string str() const { return value.str(prec); }
  /// err <= 10^-prec.
  bool certified() const { return err <= tolerance(prec); }
};

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a);
/// Exact rational scaling; the bound scales with |r|.
BigReal operator*(const Rational& r, const BigReal& a);
BigReal operator+(const BigReal& a, const Rational& r);

/// An exact quantity wrapped as a BigReal (err from rounding only).
BigReal exact(const Rational& r, int prec);
BigReal exact(const Real& r, int prec);

/// Throws PrecisionNotMet unless x.err <= 10^-x.prec.
const BigReal& certify(const BigReal& x, const std::string& what);

/// Bernoulli number B_n with B_1 = -1/2.
Rational bernoulli(unsigned n);

enum class SeriesShape { Alternating, Monotone };

/// Input contract for the two summation engines.
///
/// `term(k, bits)` returns the signed k-th term (k >= 1). Euler-Maclaurin
/// additionally needs `tail_integral(n, bits)`, the integral of the term
/// function from n to infinity (or minus the integral from 1 to n when the
/// engine is used to extract the constant of a divergent sum), and
/// `odd_derivative(j, n, bits)`, the (2j-1)-th derivative at n.
struct SeriesInput {
  std::function<Real(long k, unsigned bits)> term;
  SeriesShape shape = SeriesShape::Monotone;
  std::function<Real(long n, unsigned bits)> tail_integral;
  std::function<Real(int j, long n, unsigned bits)> odd_derivative;
};

/// Sum of an alternating series with decreasing term magnitudes.
///
/// The first term is added directly; the remainder goes through the
/// Cohen-Rodriguez Villegas-Zagier acceleration, whose error for a
/// totally monotone magnitude sequence a_k is at most 2 a_2 / (3 + sqrt 8)^n
/// after n terms. About 1.31 terms per requested digit.
BigReal accel_alt_sum(const SeriesInput& series, int prec);

/// Euler-Maclaurin summation split at `n_split`:
/// sum_{k<=n} f(k) + tail_integral(n) - f(n)/2 - sum_{j<=p} B_2j/(2j)! f^(2j-1)(n).
/// The error bound is the magnitude of the first omitted correction.
BigReal em_sum(const SeriesInput& series, long n_split, int bernoulli_terms, int prec);

/// em_sum with n_split and the number of corrections chosen automatically.
BigReal em_sum_auto(const SeriesInput& series, int prec);

}  // namespace eulerp
