#include "eulerp/eulerfun.hpp"

#include <algorithm>
#include <cmath>

#include "eulerp/errors.hpp"

namespace eulerp {

namespace {

double rounding(const Real& v, unsigned bits, double count = 1.0) {
  return count * std::fabs(v.to_double()) * std::ldexp(1.0, -static_cast<int>(bits) + 4);
}

/// (s)_m = s (s+1) ... (s+m-1)
Real rising(const Real& s, long m) {
  Real r(1, s.bits());
  for (long i = 0; i < m; ++i) {
    r *= s + i;
  }
  return r;
}

/// sum_{k>=1} x^k / k^n for |x| <= 1/2, or for any |x| < 1 when convergence is fast enough.
BigReal power_series(unsigned n, const Real& x, int prec) {
  const unsigned bits = working_bits(prec);
  const Real z = x.with_bits(bits);
  const double ax = std::fabs(z.to_double());
  const double target = tolerance(prec + 2);
  Real sum(bits);
  Real zk(1, bits);
  for (long k = 1;; ++k) {
    zk *= z;
    const Real t = zk * inverse_power(k, static_cast<long>(n), bits);
    sum += t;
    const double next = std::pow(ax, static_cast<double>(k + 1)) / std::pow(static_cast<double>(k + 1), n);
    const double tail = next / (1.0 - ax);
    if (tail < target) {
      return BigReal{sum, tail + rounding(sum, bits, static_cast<double>(k)), prec};
    }
    if (k > 200000) {
      throw PrecisionNotMet("polylog: power series did not converge");
    }
  }
}

/// sum (-1)^(k-1) a^k / k^n with 0 < a <= 1, through the alternating accelerator.
BigReal alternating_power_series(unsigned n, const Real& a, int prec) {
  const Real base = a.with_bits(working_bits(prec));
  SeriesInput series;
  series.shape = SeriesShape::Alternating;
  series.term = [&](long k, unsigned bits) {
    Real t = pow(base.with_bits(bits), k) * inverse_power(k, static_cast<long>(n), bits);
    return (k % 2 == 1) ? t : -t;
  };
  return accel_alt_sum(series, prec);
}

}  // namespace

BigReal zeta(const Real& s, int prec) {
  if (!(s > 1)) {
    throw DomainError("zeta(s) diverges for s <= 1");
  }
  const Real sw = s.with_bits(working_bits(prec));
  SeriesInput series;
  series.shape = SeriesShape::Monotone;
  series.term = [&](long k, unsigned bits) { return inverse_power(k, sw.with_bits(bits)); };
  series.tail_integral = [&](long n, unsigned bits) {
    const Real e = sw.with_bits(bits);
    return inverse_power(n, e - 1) / (e - 1);
  };
  series.odd_derivative = [&](int j, long n, unsigned bits) {
    const Real e = sw.with_bits(bits);
    return -(rising(e, 2 * j - 1) * inverse_power(n, e + (2 * j - 1)));
  };
  return em_sum_auto(series, prec);
}

BigReal zeta(long s, int prec) { return zeta(Real(s, working_bits(prec)), prec); }

Rational zeta_even_closed(unsigned n) {
  if (n == 0) {
    throw DomainError("zeta_even_closed requires n >= 1");
  }
  // zeta(2n) = (-1)^(n+1) B_2n (2 pi)^2n / (2 (2n)!)
  Rational r = bernoulli(2 * n) * pow(Rational(2), 2 * n - 1) / factorial(2 * n);
  return (n % 2 == 1) ? r : -r;
}

BigReal phi(const Real& s, int prec) {
  if (!(s > 0)) {
    throw DomainError("phi(s) requires s > 0");
  }
  const Real sw = s.with_bits(working_bits(prec));
  SeriesInput series;
  series.shape = SeriesShape::Alternating;
  series.term = [&](long k, unsigned bits) {
    Real t = inverse_power(k, sw.with_bits(bits));
    return (k % 2 == 1) ? t : -t;
  };
  return accel_alt_sum(series, prec);
}

BigReal phi(long s, int prec) { return phi(Real(s, working_bits(prec)), prec); }

BigReal polylog(unsigned n, const Real& z, int prec) {
  if (n == 0) {
    throw DomainError("polylog order must be >= 1");
  }
  if (!z.is_finite() || z > 1 || z < -1) {
    throw DomainError("polylog argument must lie in [-1, 1]");
  }
  const unsigned bits = working_bits(prec);
  if (z.is_zero()) {
    return exact(Rational(0), prec);
  }
  if (n == 1) {
    if (z == 1) {
      throw DomainError("Li_1 diverges at z = 1");
    }
    const Real v = -log1p(-z.with_bits(bits));
    return certify(BigReal{v, rounding(v, bits, 4.0), prec}, "polylog");
  }
  if (z == 1) {
    return zeta(static_cast<long>(n), prec);
  }
  if (z == -1) {
    return -phi(static_cast<long>(n), prec);
  }
  const Real half(Rational(1, 2), bits);
  if (abs(z) <= half) {
    return certify(power_series(n, z, prec), "polylog");
  }
  if (z < 0) {
    return -alternating_power_series(n, -z, prec);
  }
  if (n != 2) {
    throw DomainError("polylog of order >= 3 is implemented on [-1, 1/2] and at z = 1");
  }
  // Li2(z) = zeta(2) - ln z ln(1-z) - Li2(1-z)
  const Real zw = z.with_bits(bits);
  const Real w = 1 - zw;
  const Real pi = Real::pi(bits);
  const Real zeta2 = pi * pi / 6;
  const BigReal rest = power_series(2, w, prec + 2);
  const Real logs = log(zw) * log(w);
  BigReal out{zeta2 - logs - rest.value, rest.err + rounding(logs, bits, 4.0) + rounding(zeta2, bits, 4.0), prec};
  return certify(out, "polylog");
}

BigReal dilog_bernoulli_series(const Real& z, int prec) {
  const unsigned bits = working_bits(prec);
  const Real u = -log1p(-z.with_bits(bits));
  const double au = std::fabs(u.to_double());
  constexpr double kTwoPi = 6.283185307179586;
  if (!(au < kTwoPi * 0.9)) {
    throw DomainError("dilog Bernoulli series: argument too close to 1");
  }
  const double target = tolerance(prec + 2);
  Real sum(bits);
  Real uk = u;  // u^(k+1)
  for (unsigned k = 0;; ++k) {
    const Rational b = bernoulli(k);
    if (!b.is_zero()) {
      sum += Real(b / factorial(k + 1), bits) * uk;
    }
    uk *= u;
    // |B_k| / k! < 4 / (2 pi)^k for even k >= 2, so the tail is geometric
    const double ratio = au / kTwoPi;
    const double tail = 4.0 * au * std::pow(ratio, static_cast<double>(k + 1)) / (1.0 - ratio);
    if (k >= 2 && tail < target) {
      return certify(BigReal{sum, tail + rounding(sum, bits, static_cast<double>(k)), prec},
                     "dilog_bernoulli_series");
    }
    if (k > 4000) {
      throw PrecisionNotMet("dilog Bernoulli series did not converge");
    }
  }
}

BigReal gamma_const(int prec, GammaMethod method) {
  if (method == GammaMethod::EulerMaclaurin) {
    // gamma = lim (sum_{k<=n} 1/k - ln n)
    SeriesInput series;
    series.shape = SeriesShape::Monotone;
    series.term = [](long k, unsigned bits) { return Real(Rational(1, k), bits); };
    series.tail_integral = [](long n, unsigned bits) { return -log(Real(n, bits)); };
    series.odd_derivative = [](int j, long n, unsigned bits) {
      Real d(factorial(static_cast<unsigned>(2 * j - 1)), bits);
      return -(d * inverse_power(n, static_cast<long>(2 * j), bits));
    };
    return em_sum_auto(series, prec);
  }
  // gamma = sum_{k>=2} (-1)^k zeta(k) / k
  const int inner = prec + 4;
  SeriesInput series;
  series.shape = SeriesShape::Alternating;
  double zeta_err = 0.0;
  series.term = [&](long k, unsigned bits) {
    const BigReal z = zeta(k + 1, inner);
    zeta_err += z.err / static_cast<double>(k + 1);
    Real t = z.value.with_bits(bits) / (k + 1);
    return (k % 2 == 1) ? t : -t;
  };
  BigReal out = accel_alt_sum(series, prec);
  out.err += zeta_err;
  return certify(out, "gamma_const");
}

std::vector<long> primes_up_to(long limit) {
  if (limit > 10'000'000) {
    throw TooLarge("prime bound above 10^7");
  }
  std::vector<long> primes;
  if (limit < 2) {
    return primes;
  }
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (long p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) {
      continue;
    }
    primes.push_back(p);
    for (long m = p * p; m <= limit; m += p) {
      composite[static_cast<std::size_t>(m)] = true;
    }
  }
  return primes;
}

BigReal identity_residual(IdentityKind kind, const IdentityParams& params, int prec) {
  const unsigned bits = working_bits(prec);
  const Real x = params.point.with_bits(bits);
  switch (kind) {
    case IdentityKind::DilogReflection: {
      if (!(x > 0 && x < 1)) {
        throw DomainError("dilogarithm reflection requires 0 < x < 1");
      }
      const Real half(Rational(1, 2), bits);
      auto li2 = [&](const Real& t) {
        return t <= half ? power_series(2, t, prec) : dilog_bernoulli_series(t, prec);
      };
      const Real y = 1 - x;
      const Real logs = log(x) * log(y);
      BigReal lhs = li2(x) + li2(y);
      lhs = lhs + BigReal{logs, rounding(logs, bits, 4.0), prec};
      return lhs - zeta(2, prec);
    }
    case IdentityKind::Cotangent: {
      if (!(x > 0 && x < Real::pi(bits))) {
        throw DomainError("cotangent expansion requires 0 < x < pi");
      }
      if (params.truncation < 1) {
        throw InputError("cotangent truncation must be >= 1");
      }
      const Real r = x / Real::pi(bits);
      const Real r2 = r * r;
      Real rk(1, bits);
      BigReal acc{x / tan(x) - 1, 0.0, prec};
      acc.err = rounding(x / tan(x), bits, 4.0);
      for (long n = 1; n <= params.truncation; ++n) {
        rk *= r2;
        const BigReal z = zeta(2 * n, prec);
        acc = acc + BigReal{2 * (z.value * rk), 2.0 * z.err * rk.to_double(), prec};
      }
      return acc;
    }
    case IdentityKind::EulerProduct: {
      if (!(x > 1)) {
        throw DomainError("Euler product requires s > 1");
      }
      if (params.prime_bound < 2) {
        throw InputError("prime bound must be >= 2");
      }
      const auto primes = primes_up_to(params.prime_bound);
      Real prod(1, bits);
      for (long p : primes) {
        prod *= 1 - inverse_power(p, x);
      }
      const BigReal z = zeta(x, prec);
      BigReal out{z.value * prod - 1, z.err * prod.to_double(), prec};
      out.err += rounding(z.value, bits, static_cast<double>(primes.size() + 4));
      return out;
    }
    case IdentityKind::PhiFuncEq: {
      if (!(x > 0 && x < 1)) {
        throw DomainError("phi functional equation is checked for 0 < s < 1");
      }
      // phi(1-s) = -Gamma(s) (2^s - 1) cos(pi s / 2) / ((2^(s-1) - 1) pi^s) * phi(s)
      const Real pi = Real::pi(bits);
      const Real two(2, bits);
      const Real factor = -(tgamma(x) * (pow(two, x) - 1) * cos(pi * x / 2)) /
                          ((pow(two, x - 1) - 1) * pow(pi, x));
      const BigReal lhs = phi(1 - x, prec);
      const BigReal rhs = BigReal{factor, rounding(factor, bits, 16.0), prec} * phi(x, prec);
      const BigReal ratio = lhs / rhs;
      return ratio + Rational(-1);
    }
  }
  throw InputError("unknown identity");
}

}  // namespace eulerp
