#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "eulerp/numkernel.hpp"

namespace eulerp {

/// A formal argument of a polylogarithm: an identifier or a rational number.
struct Point {
  bool rational = false;
  std::string text;

  static Point symbol(std::string name);
  static Point number(const Rational& value);
  Rational value() const;

  auto operator<=>(const Point&) const = default;
};

enum class Gen {
  Zm,    // zeta_m(n)
  Lim,   // Li_m(n; z)
  Tpim,  // twopi_i
  Zu,    // zeta_u(n)
  Lnu,   // log_u(z)
  Liu,   // Li_u(n; z)
};

struct Generator {
  Gen kind = Gen::Zm;
  int n = 0;
  Point z;

  int weight() const;
  bool motivic() const { return kind == Gen::Zm || kind == Gen::Lim || kind == Gen::Tpim; }
  std::string str() const;

  auto operator<=>(const Generator&) const = default;
};

/// Commutative product of generators with positive exponents.
using Monomial = std::map<Generator, int>;

int weight(const Monomial& m);
std::string to_string(const Monomial& m);

/// Rational linear combination of monomials.
///
/// zeta_m(2k) stays a generator of its own; reduce_even_zetas rewrites it in
/// terms of zeta_m(2) where relations matter.
class Expr {
 public:
  std::map<Monomial, Rational> terms;

  Expr() = default;
  explicit Expr(const Rational& constant);
  explicit Expr(const Monomial& m, const Rational& coeff = Rational(1));

  bool is_zero() const { return terms.empty(); }
  /// Weights of the homogeneous components.
  std::vector<int> weights() const;
  std::string str() const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(const Rational& c, const Expr& a);
  Expr operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const Expr& a, const Expr& b) { return a.terms == b.terms; }
};

Expr zm(int n);
Expr lim(int n, const Point& z);
Expr tpim();
Expr zu(int n);
Expr lnu(const Point& z);
Expr liu(int n, const Point& z);

/// Parses the expression grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | zeta_m(n) | Li_m(n; z) | twopi_i | '(' expr ')' | '-' factor
/// where z is an identifier or a signed rational.
Expr parse_expr(std::string_view text);

/// Sum of c * (left, right) with unipotent factors on the left.
struct TensorSum {
  std::map<std::pair<Monomial, Monomial>, Rational> terms;

  void add(const Monomial& left, const Monomial& right, const Rational& c);
  std::string str() const;
  friend TensorSum operator*(const TensorSum& a, const TensorSum& b);
  friend bool operator==(const TensorSum& a, const TensorSum& b) { return a.terms == b.terms; }
};

/// The coaction into unipotent (x) motivic, extended multiplicatively and linearly.
TensorSum coact(const Expr& e);

/// The coproduct on the unipotent side.
TensorSum coproduct(const Expr& unipotent);

/// Whether (coproduct (x) id) coact(e) equals (id (x) coact) coact(e).
bool coassoc_residual(const Expr& e);

/// zeta_m(2k) -> r_k 6^k zeta_m(2)^k, with zeta(2k) = r_k pi^2k.
Expr reduce_even_zetas(const Expr& e);

/// Dimension of the rational span after reduce_even_zetas.
int span_dimension(const std::vector<Expr>& family);

struct Conjugates {
  std::vector<Expr> elements;
  int dimension = 0;
};

/// Right-hand entries of coact(e), one per distinct left monomial.
Conjugates galois_conjugates(const Expr& e);

struct StabilityReport {
  struct Member {
    Expr expr;
    std::vector<Expr> missing;
  };
  std::vector<Member> members;
  bool stable = true;

  std::string str() const;
};

/// For each member, the conjugates outside the rational span of the family.
StabilityReport stability_report(const std::vector<Expr>& family);

/// zeta_m(n) -> zeta(n), Li_m(n; z) -> Li_n(z), twopi_i -> 2 pi.
BigReal period_map(const Expr& e, int prec);

}  // namespace eulerp
