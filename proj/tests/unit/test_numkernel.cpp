#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "eulerp/errors.hpp"
#include "eulerp/numkernel.hpp"
#include "oracle.hpp"

using namespace eulerp;

namespace {

SeriesInput alternating(std::function<Real(long, unsigned)> magnitude) {
  SeriesInput s;
  s.shape = SeriesShape::Alternating;
  s.term = [magnitude](long k, unsigned bits) {
    Real t = magnitude(k, bits);
    return (k % 2 == 1) ? t : -t;
  };
  return s;
}

SeriesInput inverse_powers(long p) {
  SeriesInput s;
  s.term = [p](long k, unsigned bits) { return inverse_power(k, p, bits); };
  s.tail_integral = [p](long n, unsigned bits) { return inverse_power(n, p - 1, bits) / (p - 1); };
  s.odd_derivative = [p](int j, long n, unsigned bits) {
    Real c(1, bits);
    for (long i = 0; i < 2 * j - 1; ++i) {
      c *= p + i;
    }
    return -(c * inverse_power(n, p + 2 * j - 1, bits));
  };
  return s;
}

}  // namespace

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(bernoulli(0), Rational(1));
  EXPECT_EQ(bernoulli(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(4), Rational(-1, 30));
  EXPECT_EQ(bernoulli(6), Rational(1, 42));
  EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
}

TEST(Bernoulli, OddVanishAndEvenSignsAlternate) {
  for (unsigned k = 1; k < 30; ++k) {
    EXPECT_TRUE(bernoulli(2 * k + 1).is_zero());
    const int expected = (k % 2 == 1) ? 1 : -1;
    EXPECT_EQ(bernoulli(2 * k).sign(), expected) << "B_" << 2 * k;
  }
}

TEST(Bernoulli, SatisfiesDefiningRecurrence) {
  for (unsigned n = 1; n < 40; ++n) {
    Rational acc;
    for (unsigned k = 0; k <= n; ++k) {
      acc += binomial(n + 1, k) * bernoulli(k);
    }
    EXPECT_TRUE(acc.is_zero()) << n;
  }
}

TEST(Rational, AlwaysReduced) {
  const Rational r(6, -4);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational::parse("10/4").str(), "5/2");
  EXPECT_THROW(Rational(1, 0), DomainError);
  EXPECT_THROW(Rational::parse("1/x"), InputError);
}

TEST(AccelAltSum, LogTwo) {
  const auto s = alternating([](long k, unsigned bits) { return Real(Rational(1, k), bits); });
  const BigReal r = accel_alt_sum(s, 15);
  EXPECT_EQ(r.str(), "0.693147180559945");
  EXPECT_LE(oracle::diff(r.value, Real::ln2(256)), r.err);
}

TEST(AccelAltSum, HalfZetaTwo) {
  const auto s = alternating([](long k, unsigned bits) { return inverse_power(k, 2, bits); });
  const BigReal r = accel_alt_sum(s, 15);
  const Real pi = Real::pi(256);
  EXPECT_LE(oracle::diff(r.value, pi * pi / 12), r.err);
  EXPECT_LE(r.err, 1e-15);
}

TEST(AccelAltSum, SingleTermIsExact) {
  SeriesInput s;
  s.shape = SeriesShape::Alternating;
  s.term = [](long k, unsigned bits) { return Real(k == 1 ? 1L : 0L, bits); };
  const BigReal r = accel_alt_sum(s, 20);
  EXPECT_TRUE(r.value == 1);
}

TEST(AccelAltSum, ThirtyDigitsNeedFewTerms) {
  long calls = 0;
  SeriesInput s = alternating([&calls](long k, unsigned bits) {
    ++calls;
    return Real(Rational(1, k), bits);
  });
  const BigReal r = accel_alt_sum(s, 30);
  EXPECT_LE(r.err, 1e-30);
  EXPECT_LT(calls, 100);
  EXPECT_LE(oracle::diff(r.value, Real::ln2(256)), 1e-30);
}

TEST(AccelAltSum, RejectsMonotoneSeries) {
  SeriesInput s = inverse_powers(2);
  EXPECT_THROW(accel_alt_sum(s, 10), InputError);
}

TEST(AccelAltSum, OracleSuite) {
  struct Case {
    std::function<Real(long, unsigned)> magnitude;
    Real expected;
  };
  const unsigned ob = 256;
  const Real pi = Real::pi(ob);
  std::vector<Case> cases;
  for (long p = 2; p <= 6; ++p) {
    cases.push_back({[p](long k, unsigned bits) { return inverse_power(k, p, bits); },
                     oracle::phi(Real(p, ob))});
  }
  cases.push_back({[](long k, unsigned bits) { return Real(Rational(1, 2 * k - 1), bits); }, pi / 4});
  cases.push_back({[](long k, unsigned bits) { return inverse_power(2 * k - 1, 3, bits); },
                   pi * pi * pi / 32});
  cases.push_back({[](long k, unsigned bits) { return Real(Rational(1, k * (k + 1)), bits); },
                   2 * Real::ln2(ob) - 1});
  cases.push_back({[](long k, unsigned bits) { return 1 / Real(factorial(static_cast<unsigned>(k)), bits); },
                   1 - exp(Real(-1, ob))});
  cases.push_back({[](long k, unsigned bits) { return inverse_power(k, Real(Rational(1, 2), bits)); },
                   oracle::phi(Real(Rational(1, 2), ob))});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const BigReal r = accel_alt_sum(alternating(cases[i].magnitude), 25);
    EXPECT_LE(oracle::diff(r.value, cases[i].expected), r.err) << "case " << i;
    EXPECT_LE(r.err, 1e-25) << "case " << i;
  }
}

TEST(EmSum, ZetaTwoTenTermsFourCorrections) {
  const BigReal r = em_sum(inverse_powers(2), 10, 4, 7);
  EXPECT_EQ(r.value.str(7), "1.644934");
  // 1/n - 1/2n^2 + 1/6n^3 - 1/30n^5 + 1/42n^7 - 1/30n^9 written out by hand
  Rational hand;
  for (long k = 1; k <= 10; ++k) {
    hand += Rational(1, k * k);
  }
  hand += Rational(1, 10) - Rational(1, 200) + Rational(1, 6000) - Rational(1, 3000000) +
          Rational(1, 420000000) - Rational(1, 30000000000L);
  EXPECT_LE(oracle::diff(r.value, Real(hand, 256)), 1e-15);
  EXPECT_LE(oracle::diff(r.value, oracle::zeta(2)), r.err);
}

TEST(EmSum, EulerGammaInstance) {
  SeriesInput s;
  s.term = [](long k, unsigned bits) { return Real(Rational(1, k), bits); };
  s.tail_integral = [](long n, unsigned bits) { return -log(Real(n, bits)); };
  s.odd_derivative = [](int j, long n, unsigned bits) {
    return -(Real(factorial(static_cast<unsigned>(2 * j - 1)), bits) * inverse_power(n, 2L * j, bits));
  };
  const BigReal r = em_sum(s, 10, 6, 8);
  EXPECT_EQ(r.value.str(8), "0.57721566");
  EXPECT_LE(oracle::diff(r.value, oracle::euler_gamma()), r.err);
}

TEST(EmSum, SplitAtOneDiverges) {
  EXPECT_THROW(em_sum(inverse_powers(2), 1, 30, 10), PrecisionNotMet);
}

TEST(EmSum, OracleSuite) {
  for (long p = 2; p <= 8; ++p) {
    const BigReal r = em_sum_auto(inverse_powers(p), 30);
    EXPECT_LE(oracle::diff(r.value, oracle::zeta(p)), r.err) << p;
    EXPECT_LE(r.err, 1e-30);
  }
  // sum 1/(k(k+1)) = 1
  SeriesInput telescoping;
  telescoping.term = [](long k, unsigned bits) { return Real(Rational(1, k * (k + 1)), bits); };
  telescoping.tail_integral = [](long n, unsigned bits) { return log(Real(Rational(n + 1, n), bits)); };
  telescoping.odd_derivative = [](int j, long n, unsigned bits) {
    const long m = 2 * j - 1;
    const Real f(factorial(static_cast<unsigned>(m)), bits);
    return -(f * (inverse_power(n, m + 1, bits) - inverse_power(n + 1, m + 1, bits)));
  };
  const BigReal t = em_sum_auto(telescoping, 25);
  EXPECT_LE(oracle::diff(t.value, Real(1, 256)), t.err);
  // sum 1/k^(3/2) and 1/k^(5/2)
  for (const Rational& q : {Rational(3, 2), Rational(5, 2)}) {
    SeriesInput s;
    s.term = [q](long k, unsigned bits) { return inverse_power(k, Real(q, bits)); };
    s.tail_integral = [q](long n, unsigned bits) {
      const Real e(q, bits);
      return inverse_power(n, e - 1) / (e - 1);
    };
    s.odd_derivative = [q](int j, long n, unsigned bits) {
      const Real e(q, bits);
      Real c(1, bits);
      for (long i = 0; i < 2 * j - 1; ++i) {
        c *= e + i;
      }
      return -(c * inverse_power(n, e + (2 * j - 1)));
    };
    const BigReal r = em_sum_auto(s, 25);
    EXPECT_LE(oracle::diff(r.value, oracle::zeta(Real(q, 256))), r.err) << q.str();
  }
}

TEST(EmSum, Deterministic) {
  const BigReal a = em_sum_auto(inverse_powers(3), 40);
  const BigReal b = em_sum_auto(inverse_powers(3), 40);
  EXPECT_TRUE(a.value == b.value);
  EXPECT_EQ(a.value.bits(), b.value.bits());
  EXPECT_EQ(a.err, b.err);
}

TEST(BigRealArithmetic, ErrorsPropagate) {
  const BigReal a{Real(2, 200), 1e-20, 15};
  const BigReal b{Real(3, 200), 2e-20, 15};
  EXPECT_GE((a + b).err, 2.99e-20);
  EXPECT_GE((a * b).err, 6.99e-20);
  const BigReal zero{Real(0, 200), 0.0, 15};
  EXPECT_THROW(a / zero, DomainError);
  const BigReal loose{Real(1, 200), 1e-3, 5};
  EXPECT_THROW(certify(loose, "x"), PrecisionNotMet);
}

TEST(RealFormat, SignificantDigits) {
  const Real pi = Real::pi(256);
  EXPECT_EQ(pi.str(5), "3.1416");
  EXPECT_EQ((pi / 1000).str(3), "3.14e-3");
  EXPECT_EQ((pi / 100).str(3), "0.0314");
  EXPECT_EQ(Real(0, 64).str(4), "0");
  EXPECT_EQ(Real::parse("1.159652181664e-3", 128).str(13), "1.159652181664e-3");
  EXPECT_THROW(Real::parse("1.5x", 64), InputError);
}
