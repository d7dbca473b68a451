#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eulerp/errors.hpp"
#include "eulerp/eulerfun.hpp"
#include "eulerp/symbolic.hpp"
#include "oracle.hpp"

using namespace eulerp;

namespace {

const Point kZ = Point::symbol("z");

TensorSum pairs(std::initializer_list<std::pair<Expr, Expr>> items) {
  TensorSum t;
  for (const auto& [l, r] : items) {
    for (const auto& [ml, cl] : l.terms) {
      for (const auto& [mr, cr] : r.terms) {
        t.add(ml, mr, cl * cr);
      }
    }
  }
  return t;
}

const Expr kOne(Rational(1));

}  // namespace

TEST(Parse, ProductHasWeightFive) {
  const Expr e = parse_expr("zeta_m(3)*zeta_m(2)");
  EXPECT_EQ(e.terms.size(), 1u);
  EXPECT_EQ(e.weights(), std::vector<int>{5});
  EXPECT_EQ(e, zm(2) * zm(3));
}

TEST(Parse, TwoMonomials) {
  const Expr e = parse_expr("2/5*zeta_m(8) - 9*zeta_m(5)*zeta_m(3)");
  EXPECT_EQ(e.terms.size(), 2u);
  EXPECT_EQ(e, Rational(2, 5) * zm(8) - Rational(9) * (zm(5) * zm(3)));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_expr("zeta_m(1)"), DomainError);
  EXPECT_THROW(parse_expr("zeta_m(3"), ParseError);
  EXPECT_THROW(parse_expr("zeta_m(3) +"), ParseError);
  EXPECT_THROW(parse_expr("zeta_x(3)"), ParseError);
  EXPECT_THROW(parse_expr("1/0*zeta_m(2)"), ParseError);
  try {
    parse_expr("zeta_m(2) $ 1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
  }
}

TEST(Parse, PointsAndNormalization) {
  EXPECT_EQ(parse_expr("Li_m(2; 1)"), zm(2));
  EXPECT_TRUE(parse_expr("Li_m(3; 0)").is_zero());
  EXPECT_EQ(parse_expr("Li_m(2; -1/2)"), lim(2, Point::number(Rational(-1, 2))));
  EXPECT_EQ(parse_expr("Li_m(2; z)"), lim(2, kZ));
  EXPECT_EQ(parse_expr("-(zeta_m(3) - zeta_m(5))"), zm(5) - zm(3));
  EXPECT_EQ(parse_expr("twopi_i*twopi_i"), tpim() * tpim());
}

TEST(Parse, RoundTrip) {
  for (const char* text : {"zeta_m(3)*zeta_m(2)", "2/5*zeta_m(8) - 9*zeta_m(5)*zeta_m(3)",
                           "Li_m(4; z) - 1/2*Li_m(2; -1/3)*zeta_m(2) + 7", "-twopi_i*twopi_i + 3/4",
                           "(zeta_m(3) + Li_m(1; w))*(zeta_m(3) - 2)"}) {
    const Expr e = parse_expr(text);
    EXPECT_EQ(parse_expr(e.str()), e) << text << " -> " << e.str();
    EXPECT_EQ(parse_expr(e.str()).str(), e.str());
  }
  EXPECT_EQ((zm(2) * zm(2)).str(), "zeta_m(2)*zeta_m(2)");
  EXPECT_EQ(Expr().str(), "0");
}

TEST(Coact, ZetaTwo) { EXPECT_EQ(coact(zm(2)), pairs({{kOne, zm(2)}})); }

TEST(Coact, ZetaThree) { EXPECT_EQ(coact(zm(3)), pairs({{kOne, zm(3)}, {zu(3), kOne}})); }

TEST(Coact, Dilog) {
  EXPECT_EQ(coact(lim(2, kZ)), pairs({{kOne, lim(2, kZ)}, {lnu(kZ), lim(1, kZ)}, {liu(2, kZ), kOne}}));
}

TEST(Coact, ProductRule) {
  EXPECT_EQ(coact(zm(2) * zm(3)), pairs({{kOne, zm(2) * zm(3)}, {zu(3), zm(2)}}));
  EXPECT_EQ(coact(zm(2) * zm(3)).str(), "1 (x) zeta_m(2)*zeta_m(3) + zeta_u(3) (x) zeta_m(2)");
}

TEST(Coact, HigherPolylog) {
  const TensorSum t = coact(lim(3, kZ));
  const TensorSum expected = pairs({{kOne, lim(3, kZ)},
                                    {lnu(kZ), lim(2, kZ)},
                                    {Rational(1, 2) * (lnu(kZ) * lnu(kZ)), lim(1, kZ)},
                                    {liu(3, kZ), kOne}});
  EXPECT_EQ(t, expected);
}

TEST(Coact, TwoPiI) { EXPECT_EQ(coact(tpim()), pairs({{kOne, tpim()}})); }

namespace {

std::vector<Expr> generator_pool() {
  return {zm(2), zm(3), zm(4), zm(5), zm(7), tpim(), lim(1, kZ), lim(2, kZ), lim(3, Point::number(Rational(1, 2))),
          lim(2, Point::symbol("w"))};
}

Expr random_monomial(std::mt19937_64& rng, int max_weight) {
  const auto pool = generator_pool();
  Expr e(Rational(1));
  int w = 0;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int tries = 0; tries < 6; ++tries) {
    const Expr& g = pool[pick(rng)];
    const int gw = g.weights().front();
    if (w + gw > max_weight) {
      continue;
    }
    e = e * g;
    w += gw;
  }
  return e;
}

}  // namespace

TEST(Coact, GradingAndCounit) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const Expr e = random_monomial(rng, 10);
    const int w = e.weights().front();
    Expr left_unit;
    for (const auto& [lr, c] : coact(e).terms) {
      EXPECT_EQ(weight(lr.first) + weight(lr.second), w);
      if (lr.first.empty()) {
        left_unit += Expr(lr.second, c);
      }
    }
    EXPECT_EQ(left_unit, e) << e.str();
  }
}

TEST(Coact, Multiplicative) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const Expr a = random_monomial(rng, 5);
    const Expr b = random_monomial(rng, 5);
    EXPECT_EQ(coact(a * b), coact(a) * coact(b)) << a.str() << " | " << b.str();
  }
}

TEST(Coassociativity, Generators) {
  EXPECT_TRUE(coassoc_residual(zm(3)));
  EXPECT_TRUE(coassoc_residual(lim(4, kZ)));
  EXPECT_TRUE(coassoc_residual(zm(2)));
  for (int n = 2; n <= 8; ++n) {
    EXPECT_TRUE(coassoc_residual(zm(n))) << n;
    EXPECT_TRUE(coassoc_residual(lim(n, kZ))) << n;
  }
  EXPECT_TRUE(coassoc_residual(lim(1, kZ)));
  EXPECT_TRUE(coassoc_residual(tpim()));
  EXPECT_TRUE(coassoc_residual(zm(3) * lim(3, kZ) - Rational(2) * zm(5) * tpim()));
}

TEST(Conjugates, Examples) {
  const Conjugates c2 = galois_conjugates(zm(2));
  EXPECT_EQ(c2.elements, std::vector<Expr>{zm(2)});
  EXPECT_EQ(c2.dimension, 1);
  const Conjugates c3 = galois_conjugates(zm(3));
  EXPECT_EQ(c3.dimension, 2);
  EXPECT_EQ(c3.elements.size(), 2u);
  const Conjugates c23 = galois_conjugates(zm(2) * zm(3));
  EXPECT_EQ(c23.dimension, 2);
  EXPECT_NE(std::find(c23.elements.begin(), c23.elements.end(), zm(2)), c23.elements.end());
  EXPECT_NE(std::find(c23.elements.begin(), c23.elements.end(), zm(2) * zm(3)), c23.elements.end());
  for (int n = 2; n <= 5; ++n) {
    EXPECT_EQ(galois_conjugates(zm(2 * n)).dimension, 1);
    EXPECT_EQ(galois_conjugates(zm(2 * n + 1)).dimension, 2);
  }
}

TEST(Span, EvenZetaRelation) {
  EXPECT_EQ(span_dimension({zm(4), zm(2) * zm(2)}), 1);
  EXPECT_EQ(span_dimension({zm(3), zm(5), Expr(Rational(1))}), 3);
  EXPECT_EQ(reduce_even_zetas(zm(4)), Rational(2, 5) * (zm(2) * zm(2)));
}

TEST(Stability, Examples) {
  const StabilityReport a = stability_report({Expr(Rational(1)), zm(3), zm(5)});
  EXPECT_TRUE(a.stable);
  const StabilityReport b = stability_report({zm(2) * zm(3)});
  EXPECT_FALSE(b.stable);
  ASSERT_EQ(b.members.size(), 1u);
  EXPECT_EQ(b.members[0].missing, std::vector<Expr>{zm(2)});
  EXPECT_THROW(stability_report({}), InputError);
  EXPECT_TRUE(stability_report({zm(2) * zm(3), zm(2)}).stable);
}

TEST(PeriodMap, Values) {
  const BigReal z2 = period_map(zm(2), 20);
  EXPECT_LE(oracle::diff(z2.value, oracle::zeta(2)), z2.err);
  EXPECT_EQ(period_map(zm(2), 11).str(), "1.6449340668");
  const BigReal li = period_map(lim(2, Point::number(Rational(1, 2))), 20);
  EXPECT_LE(oracle::diff(li.value, polylog(2, Real(Rational(1, 2), 128), 25).value), 1e-20);
  const BigReal rel = period_map(Rational(5) * zm(4) - Rational(2) * (zm(2) * zm(2)), 25);
  EXPECT_LE(std::fabs(rel.value.to_double()), rel.err);
  EXPECT_LE(rel.err, 1e-25);
  const BigReal tp = period_map(tpim(), 20);
  EXPECT_LE(oracle::diff(tp.value, 2 * Real::pi(256)), 1e-20);
  EXPECT_THROW(period_map(lim(2, kZ), 10), DomainError);
  EXPECT_THROW(period_map(zu(3), 10), DomainError);
}

TEST(PeriodMap, RingMap) {
  std::mt19937_64 rng(3);
  const Point half = Point::number(Rational(1, 2));
  const std::vector<Expr> pool{zm(2), zm(3), zm(5), tpim(), lim(2, half), lim(3, Point::number(Rational(-1, 3)))};
  for (int i = 0; i < 20; ++i) {
    const Expr& a = pool[rng() % pool.size()];
    const Expr& b = pool[rng() % pool.size()];
    const BigReal pa = period_map(a, 25);
    const BigReal pb = period_map(b, 25);
    const BigReal pab = period_map(a * b, 25);
    EXPECT_LE(oracle::diff(pab.value, pa.value * pb.value), 1e-24);
    const BigReal psum = period_map(a + Rational(3) * b, 25);
    EXPECT_LE(oracle::diff(psum.value, pa.value + 3 * pb.value), 1e-24);
  }
}
