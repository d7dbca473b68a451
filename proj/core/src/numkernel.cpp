#include "eulerp/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include "eulerp/errors.hpp"

namespace eulerp {

namespace {

/// Relative rounding allowance for a value held at `bits`.
double ulp_allowance(const Real& v, unsigned bits) {
  return std::fabs(v.to_double()) * std::ldexp(1.0, -static_cast<int>(bits) + 4);
}

double magnitude(const Real& v) { return std::fabs(v.to_double()); }

}  // namespace

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r{a.value + b.value, a.err + b.err, std::min(a.prec, b.prec)};
  r.err += ulp_allowance(r.value, r.value.bits());
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r{a.value - b.value, a.err + b.err, std::min(a.prec, b.prec)};
  r.err += ulp_allowance(r.value, r.value.bits());
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r{a.value * b.value, magnitude(a.value) * b.err + magnitude(b.value) * a.err + a.err * b.err,
            std::min(a.prec, b.prec)};
  r.err += ulp_allowance(r.value, r.value.bits());
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  const double mb = magnitude(b.value);
  if (b.value.is_zero() || mb <= b.err) {
    throw DomainError("division by a value not bounded away from zero");
  }
  BigReal r{a.value / b.value, 0.0, std::min(a.prec, b.prec)};
  r.err = (a.err + magnitude(r.value) * b.err) / (mb - b.err) + ulp_allowance(r.value, r.value.bits());
  return r;
}

BigReal operator-(const BigReal& a) { return BigReal{-a.value, a.err, a.prec}; }

BigReal operator*(const Rational& r, const BigReal& a) {
  BigReal out{Real(r, a.value.bits()) * a.value, std::fabs(r.to_double()) * a.err, a.prec};
  out.err += ulp_allowance(out.value, out.value.bits());
  return out;
}

BigReal operator+(const BigReal& a, const Rational& r) {
  BigReal out{a.value + Real(r, a.value.bits()), a.err, a.prec};
  out.err += ulp_allowance(out.value, out.value.bits());
  return out;
}

BigReal exact(const Rational& r, int prec) {
  Real v(r, working_bits(prec));
  return BigReal{v, ulp_allowance(v, v.bits()), prec};
}

BigReal exact(const Real& r, int prec) {
  return BigReal{r, ulp_allowance(r, r.bits()), prec};
}

const BigReal& certify(const BigReal& x, const std::string& what) {
  if (!x.value.is_finite() || !(x.err <= tolerance(x.prec))) {
    char bound[32];
    std::snprintf(bound, sizeof bound, "%.3g", x.err);
    throw PrecisionNotMet(what + ": error bound " + bound + " exceeds 1e-" + std::to_string(x.prec));
  }
  return x;
}

Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mu);
  while (table.size() <= n) {
    const auto m = static_cast<unsigned>(table.size());
    if (m >= 3 && m % 2 == 1) {
      table.emplace_back(0);
      continue;
    }
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    Rational acc;
    mpz_class c = 1;  // C(m+1, 0)
    for (unsigned k = 0; k < m; ++k) {
      if (!table[k].is_zero()) {
        acc += Rational(c, mpz_class(1)) * table[k];
      }
      c = c * (m + 1 - k) / (k + 1);
    }
    table.push_back(-acc / Rational(static_cast<long>(m) + 1));
  }
  return table[n];
}

namespace {

constexpr double kCvzRate = 5.828427124746190;  // 3 + sqrt(8)

struct CvzResult {
  Real sum;
  double max_term;
};

/// Cohen-Rodriguez Villegas-Zagier weights applied to a_0 .. a_{n-1}.
CvzResult cvz(const std::function<Real(long)>& magnitude_at, long n, unsigned bits) {
  Real d = pow(Real(3, bits) + sqrt(Real(8, bits)), n);
  d = (d + 1 / d) / 2;
  Real b(-1, bits);
  Real c = -d;
  Real s(bits);
  double max_term = 0.0;
  for (long k = 0; k < n; ++k) {
    c = b - c;
    const Real a = magnitude_at(k);
    max_term = std::max(max_term, std::fabs(a.to_double()));
    s += c * a;
    b = b * ((k + n) * (k - n));
    b /= Real(2 * k + 1, bits) * (k + 1);
    b *= 2;
  }
  s /= d;
  return {s, max_term};
}

}  // namespace

BigReal accel_alt_sum(const SeriesInput& series, int prec) {
  if (series.shape != SeriesShape::Alternating) {
    throw InputError("accel_alt_sum requires an alternating series");
  }
  const unsigned bits = working_bits(prec);
  const Real head = series.term(1, bits);

  // Magnitudes a_k of the remainder, k = 0, 1, ... correspond to terms 2, 3, ...
  std::vector<Real> cache;
  auto magnitude_at = [&](long k) -> Real {
    while (static_cast<long>(cache.size()) <= k) {
      const long i = static_cast<long>(cache.size());
      Real t = series.term(i + 2, bits);
      cache.push_back(i % 2 == 0 ? t : -t);
    }
    return cache[static_cast<std::size_t>(k)];
  };
  const double lead = std::max(std::fabs(magnitude_at(0).to_double()), 1e-300);
  const double target = tolerance(prec + 2);
  long n = std::max<long>(
      1, static_cast<long>(std::ceil((std::log(2.0 * lead) - std::log(target)) / std::log(kCvzRate))));
  constexpr long kMaxTerms = 20000;
  const double eps = std::ldexp(1.0, -static_cast<int>(bits) + 4);

  // The a priori rate holds for totally monotone magnitudes; a second run with
  // more terms guards the general decreasing case.
  CvzResult coarse = cvz(magnitude_at, n, bits);
  while (true) {
    const long n2 = n + n / 4 + 2;
    if (n2 > kMaxTerms) {
      throw PrecisionNotMet("accel_alt_sum: more than " + std::to_string(kMaxTerms) + " terms needed");
    }
    CvzResult fine = cvz(magnitude_at, n2, bits);
    const double gap = std::fabs((fine.sum - coarse.sum).to_double());
    const double rounding = static_cast<double>(n2) * std::max(fine.max_term, lead) * eps;
    if (gap <= target || gap <= 4 * rounding) {
      BigReal out{head + fine.sum, 0.0, prec};
      const double truncation = 2.0 * lead / std::pow(kCvzRate, static_cast<double>(n2));
      out.err = std::max(truncation, gap) + rounding;
      return certify(out, "accel_alt_sum");
    }
    n = 2 * n2;
    coarse = cvz(magnitude_at, n, bits);
  }
}

namespace {

/// The Euler-Maclaurin correction B_2j/(2j)! * f^(2j-1)(n).
Real em_correction(const SeriesInput& series, int j, long n, unsigned bits) {
  const Rational coeff = bernoulli(static_cast<unsigned>(2 * j)) / factorial(static_cast<unsigned>(2 * j));
  return Real(coeff, bits) * series.odd_derivative(j, n, bits);
}

BigReal em_assemble(const SeriesInput& series, long n, const std::vector<Real>& corrections,
                    const Real& first_omitted, int prec, unsigned bits) {
  Real sum(bits);
  double max_term = 0.0;
  for (long k = 1; k <= n; ++k) {
    const Real t = series.term(k, bits);
    max_term = std::max(max_term, std::fabs(t.to_double()));
    sum += t;
  }
  sum += series.tail_integral(n, bits);
  sum -= series.term(n, bits) / 2;
  for (const Real& c : corrections) {
    sum -= c;
  }
  BigReal out{sum, 0.0, prec};
  out.err = std::fabs(first_omitted.to_double()) +
            static_cast<double>(n + 4) * std::max(max_term, std::fabs(sum.to_double())) *
                std::ldexp(1.0, -static_cast<int>(bits) + 4);
  return out;
}

}  // namespace

BigReal em_sum(const SeriesInput& series, long n_split, int bernoulli_terms, int prec) {
  if (n_split < 1 || bernoulli_terms < 0) {
    throw InputError("em_sum: n_split must be >= 1 and bernoulli_terms >= 0");
  }
  if (!series.tail_integral || !series.odd_derivative) {
    throw InputError("em_sum: series lacks tail information");
  }
  const unsigned bits = working_bits(prec);
  std::vector<Real> corrections;
  corrections.reserve(static_cast<std::size_t>(bernoulli_terms));
  for (int j = 1; j <= bernoulli_terms; ++j) {
    corrections.push_back(em_correction(series, j, n_split, bits));
  }
  const Real first_omitted = em_correction(series, bernoulli_terms + 1, n_split, bits);
  return certify(em_assemble(series, n_split, corrections, first_omitted, prec, bits), "em_sum");
}

BigReal em_sum_auto(const SeriesInput& series, int prec) {
  if (!series.tail_integral || !series.odd_derivative) {
    throw InputError("em_sum: series lacks tail information");
  }
  const unsigned bits = working_bits(prec);
  const double target = tolerance(prec + 2);
  long n = std::max<long>(4, static_cast<long>(std::ceil(0.4 * (prec + kGuardDigits))));
  constexpr long kMaxSplit = 1L << 22;
  constexpr int kMaxCorrections = 400;
  for (; n <= kMaxSplit; n *= 2) {
    std::vector<Real> corrections;
    double previous = HUGE_VAL;
    for (int j = 1; j <= kMaxCorrections; ++j) {
      Real c = em_correction(series, j, n, bits);
      const double mag = std::fabs(c.to_double());
      if (mag < target) {
        return certify(em_assemble(series, n, corrections, c, prec, bits), "em_sum");
      }
      if (mag > previous) {
        break;  // past the optimal truncation point; enlarge n
      }
      previous = mag;
      corrections.push_back(std::move(c));
    }
  }
  throw PrecisionNotMet("em_sum: no split point reaches 1e-" + std::to_string(prec));
}

}  // namespace eulerp
