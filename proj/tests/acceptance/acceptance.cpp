// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "eulerp/errors.hpp"
#include "eulerp/eulerfun.hpp"
#include "eulerp/feynper.hpp"
#include "eulerp/g2.hpp"
#include "eulerp/mzv.hpp"
#include "eulerp/symbolic.hpp"

using namespace eulerp;

namespace {

constexpr unsigned kRefBits = 256;

double gap(const Real& a, const Real& b) { return abs(a - b).to_double(); }

Real num(const char* s) { return Real::parse(s, kRefBits); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

struct Criterion {
  int id;
  std::string title;
  double seconds;
  std::function<void(Outcome&)> body;
};

std::string cli_out(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = cli::run(args, out, err);
  return out.str();
}

Monomial mono(const Expr& e) { return e.terms.begin()->first; }

const Monomial kOne{};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "zeta(2) = pi^2/6", 1.0,
       [](Outcome& o) {
         const BigReal z = zeta(2L, 20);
         const Real pi = Real::pi(kRefBits);
         const double d = gap(z.value, pi * pi / 6L);
         o.require(d <= 1e-20, "|zeta(2) - pi^2/6| <= 1e-20");
         int code = 0;
         const std::string line = cli_out({"zeta", "2", "--prec", "7"}, code);
         o.require(code == 0 && line.rfind("1.644934", 0) == 0, "CLI prints 1.644934");
         o.note("gap " + sci(d) + ", CLI '" + line.substr(0, line.size() - 1) + "'");
       }},
      {2, "even zeta closed forms, n = 1..4", 1.0,
       [](Outcome& o) {
         double worst = 0;
         for (unsigned n = 1; n <= 4; ++n) {
           const Real closed = Real(zeta_even_closed(n), kRefBits) * pow(Real::pi(kRefBits), 2L * n);
           worst = std::max(worst, gap(zeta(2L * n, 18).value, closed));
         }
         o.require(worst <= 1e-15, "agreement to 1e-15");
         o.note("max gap " + sci(worst));
       }},
      {3, "Euler-Mascheroni constant, two methods", 5.0,
       [](Outcome& o) {
         const BigReal em = gamma_const(15, GammaMethod::EulerMaclaurin);
         const BigReal zs = gamma_const(15, GammaMethod::ZetaSeries);
         const double d = gap(em.value, zs.value);
         o.require(d <= 1e-12, "methods agree to 1e-12");
         o.require(em.value.str(4) == "0.5772", "leading digits 0.5772");
         o.note(em.value.str(12) + ", methods differ by " + sci(d));
       }},
      {4, "identity residual suite", 30.0,
       [](Outcome& o) {
         double worst = 0;
         for (int i = 1; i <= 9; ++i) {
           const Real x = Real(Rational(i, 10), kRefBits);
           worst = std::max(worst, std::fabs(identity_residual(IdentityKind::DilogReflection, {x}, 15).value.to_double()));
           worst = std::max(worst, std::fabs(identity_residual(IdentityKind::PhiFuncEq, {x}, 15).value.to_double()));
         }
         for (const char* x : {"0.3", "0.5", "1.0"}) {
           worst = std::max(worst, std::fabs(identity_residual(IdentityKind::Cotangent, {num(x)}, 15).value.to_double()));
         }
         const double product =
             std::fabs(identity_residual(IdentityKind::EulerProduct, {Real(2L, kRefBits), 20, 100000}, 15).value.to_double());
         o.require(worst <= 1e-12, "reflection/functional-equation/cotangent residuals <= 1e-12");
         o.require(product < 1e-4, "Euler product residual < 1e-4");
         o.note("max residual " + sci(worst) + ", Euler product " + sci(product));
       }},
      {5, "stuffle and brute-force agreement", 60.0,
       [](Outcome& o) {
         int checked = 0;
         for (int m = 2; m <= 4; ++m) {
           for (int n = 2; n <= 4; ++n) {
             const BigReal r = stuffle_residual(m, n, 20);
             o.require(r.value.to_double() <= r.err, "stuffle (" + std::to_string(m) + "," + std::to_string(n) + ")");
             ++checked;
           }
         }
         for (int w = 3; w <= 8; ++w) {
           for (int a = 1; a <= w - 2; ++a) {
             const MzvIndex idx{{a, w - a}};
             const BigReal v = mzv(idx, 20);
             const BigReal b = mzv_bruteforce(idx, 20000);
             o.require(gap(v.value, b.value) <= v.err + b.err, "brute force " + idx.str());
             ++checked;
           }
         }
         o.note(std::to_string(checked) + " checks");
       }},
      {6, "alternating double sums negative and cutoff-stable", 30.0,
       [](Outcome& o) {
         double worst = 0;
         for (int m = 1; m <= 3; ++m) {
           for (int n = 1; n <= 3; ++n) {
             const BigReal v = multiphi({m, n}, 12);
             const BigReal v2 = multiphi({m, n}, 12, 2.0);
             o.require(v.value < 0L, "phi(" + std::to_string(m) + "," + std::to_string(n) + ") < 0");
             worst = std::max(worst, gap(v.value, v2.value));
           }
         }
         o.require(worst <= 1e-8, "stable to 1e-8 under doubled cutoff");
         o.note("max change " + sci(worst));
       }},
      {7, "graph polynomials", 1.0,
       [](Outcome& o) {
         o.require(kirchhoff_polynomial(graphs::bubble()).str() == "a1 + a2", "bubble a1 + a2");
         // complements of the two-edge trees are single edges
         o.require(kirchhoff_polynomial(graphs::triangle()).str() == "a1 + a2 + a3", "triangle a1 + a2 + a3");
         const GraphPolynomial k4 = kirchhoff_polynomial(graphs::k4());
         o.require(k4.terms.size() == 16 && k4.degree() == 3, "K4: 16 monomials of degree 3");
         for (const auto& [e, c] : k4.terms) {
           o.require(c == 1 && *std::max_element(e.begin(), e.end()) == 1, "K4 squarefree unit coefficients");
         }
         for (const MultiGraph& g : {graphs::bubble(), graphs::triangle(), graphs::k4()}) {
           o.require(static_cast<long>(kirchhoff_polynomial(g).terms.size()) == matrix_tree_count(g),
                     "monomial count = matrix-tree count");
           for (int e = 0; e < g.edge_count(); ++e) {
             o.require(deletion_contraction_holds(g, e), "deletion-contraction");
           }
         }
         o.note("triangle polynomial has degree h = 1");
       }},
      {8, "period integrator on the bubble and self-test", 60.0,
       [](Outcome& o) {
         const PeriodEstimate a = period_mc(graphs::bubble(), {.samples = 100'000});
         const PeriodEstimate b = period_mc(graphs::bubble(), {.samples = 1'000'000});
         o.require(std::fabs(a.estimate - 1) <= 3 * a.std_error, "1e5 samples within 3 sigma");
         o.require(std::fabs(b.estimate - 1) <= 3 * b.std_error, "1e6 samples within 3 sigma");
         const double ratio = a.std_error / b.std_error;
         o.require(ratio > std::sqrt(10.0) / 2 && ratio < 2 * std::sqrt(10.0), "stderr ~ N^-1/2");
         for (const SelfTestEntry& e : integrator_selftest(100'000, 42)) {
           o.require(e.pass, e.name + " within 3 sigma");
         }
         o.note("1e6: " + std::to_string(b.estimate) + " +- " + sci(b.std_error) + ", stderr ratio " +
                std::to_string(ratio));
       }},
      {9, "K4 period is 6 zeta(3)", 300.0,
       [](Outcome& o) {
         const PeriodEstimate e = period_mc(graphs::k4(), {.samples = 10'000'000});
         const double z3 = zeta(3L, 17).value.to_double();
         const Snap s = snap_to_multiple(e, z3);
         o.require(std::fabs(e.estimate - 6 * z3) <= 3 * e.std_error, "within 3 sigma of 6 zeta(3)");
         o.require(s.multiple == 6 && s.sigmas <= 3, "snaps to 6");
         o.note(std::to_string(e.estimate) + " +- " + sci(e.std_error) + ", " + std::to_string(s.sigmas) + " sigma");
       }},
      {10, "two-loop a_e", 1.0,
       [](Outcome& o) {
         const double v = assemble(num("137.035999"), {}, 2, 15).value.to_double();
         o.require(std::fabs(v - 1.159638e-3) <= 4e-9, "within 4e-9 of 1.159638e-3");
         o.note("a_e = " + sci(v) + ", off by " + sci(v - 1.159638e-3));
       }},
      {11, "three-loop a_e", 1.0,
       [](Outcome& o) {
         const double v = assemble(num("137.0359991727"), {}, 3, 15).value.to_double();
         o.require(std::fabs(v - 1.159652201e-3) <= 2e-9, "within 2e-9 of 1.159652201e-3");
         o.note("off by " + sci(v - 1.159652201e-3));
       }},
      {12, "four-loop self-consistency", 1.0,
       [](Outcome& o) {
         const double v = assemble(num("137.0359991727"), {}, 4, 20).value.to_double();
         o.require(std::fabs(v - 1.15965218073e-3) <= 3e-12, "within 3e-12 of a_e(exp:2008)");
         o.note("off by " + sci(v - 1.15965218073e-3));
       }},
      {13, "alpha from a_e", 1.0,
       [](Outcome& o) {
         const AlphaInversion r = invert_alpha(num("1.15965218073e-3"), {}, 4, 15);
         const double d = r.alpha_inv.value.to_double() - 137.0359991727;
         o.require(std::fabs(r.alpha_inv.value.to_double() - 137.0359992) <= 5e-7, "137.0359992 +- 5e-7");
         o.require(r.iterations <= 6, "at most 6 Newton steps");
         o.note(r.alpha_inv.value.str(13) + " after " + std::to_string(r.iterations) + " steps, " + sci(d) +
                " from 137.0359991727");
       }},
      {14, "uncertainty arithmetic", 1.0,
       [](Outcome& o) {
         const auto& reg = builtin_registry();
         o.require(display_uncertainty(find_measurement(reg, "th:2012").components(), 1e-14) == 77,
                   "(6)(4)(2)(77) -> 77");
         o.require(display_uncertainty({77, 28}, 1) == 82, "(77),(28) -> 82");
         const std::string s = compare(find_measurement(reg, "exp:2008"), find_measurement(reg, "th:2012")).str();
         o.require(s == "-1.05e-12 ± 0.82e-12", "difference -1.05(82)e-12");
         o.note(s);
       }},
      {15, "coaction suite", 5.0,
       [](Outcome& o) {
         TensorSum d2;
         d2.add(kOne, mono(zm(2)), Rational(1));
         o.require(coact(zm(2)) == d2, "zeta_m(2)");
         TensorSum tp;
         tp.add(kOne, mono(tpim()), Rational(1));
         o.require(coact(tpim()) == tp, "twopi_i");
         for (int n = 3; n <= 7; n += 2) {
           TensorSum z;
           z.add(kOne, mono(zm(n)), Rational(1));
           z.add(mono(zu(n)), kOne, Rational(1));
           o.require(coact(zm(n)) == z, "zeta_m(" + std::to_string(n) + ")");
         }
         const Point x = Point::symbol("x");
         TensorSum dl;
         dl.add(kOne, mono(lim(2, x)), Rational(1));
         dl.add(mono(lnu(x)), mono(lim(1, x)), Rational(1));
         dl.add(mono(liu(2, x)), kOne, Rational(1));
         o.require(coact(lim(2, x)) == dl, "Li_m(2; x)");
         int checked = 0;
         for (int n = 2; n <= 8; ++n) {
           o.require(coassoc_residual(zm(n)), "coassociative zeta_m(" + std::to_string(n) + ")");
           ++checked;
         }
         for (int n = 1; n <= 8; ++n) {
           o.require(coassoc_residual(lim(n, x)), "coassociative Li_m(" + std::to_string(n) + "; x)");
           ++checked;
         }
         o.require(coassoc_residual(tpim()), "coassociative twopi_i");
         const Conjugates c = galois_conjugates(zm(3));
         o.require(c.dimension == 2, "conjugates of zeta_m(3) span dimension 2");
         o.require(!stability_report({zm(2) * zm(3)}).stable, "{zeta_m(2) zeta_m(3)} unstable");
         o.note(std::to_string(checked + 1) + " generators coassociative");
       }},
      {16, "period map respects 2 zeta(2)^2 = 5 zeta(4)", 1.0,
       [](Outcome& o) {
         const BigReal v = period_map(parse_expr("5*zeta_m(4) - 2*zeta_m(2)*zeta_m(2)"), 15);
         o.require(std::fabs(v.value.to_double()) <= 1e-12, "per(...) = 0 within 1e-12");
         o.note("value " + sci(v.value.to_double()));
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.seconds) {
      o.pass = false;
      o.note("took " + std::to_string(secs) + " s, limit " + std::to_string(c.seconds) + " s");
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
