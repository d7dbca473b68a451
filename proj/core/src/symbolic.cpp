#include "eulerp/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "eulerp/errors.hpp"
#include "eulerp/eulerfun.hpp"

namespace eulerp {

Point Point::symbol(std::string name) { return Point{false, std::move(name)}; }

Point Point::number(const Rational& value) { return Point{true, value.str()}; }

Rational Point::value() const {
  if (!rational) {
    throw DomainError("point '" + text + "' has no numeric value");
  }
  return Rational::parse(text);
}

int Generator::weight() const { return kind == Gen::Tpim || kind == Gen::Lnu ? 1 : n; }

std::string Generator::str() const {
  switch (kind) {
    case Gen::Zm:
      return "zeta_m(" + std::to_string(n) + ")";
    case Gen::Lim:
      return "Li_m(" + std::to_string(n) + "; " + z.text + ")";
    case Gen::Tpim:
      return "twopi_i";
    case Gen::Zu:
      return "zeta_u(" + std::to_string(n) + ")";
    case Gen::Lnu:
      return "log_u(" + z.text + ")";
    case Gen::Liu:
      return "Li_u(" + std::to_string(n) + "; " + z.text + ")";
  }
  return "?";
}

int weight(const Monomial& m) {
  int w = 0;
  for (const auto& [g, e] : m) {
    w += g.weight() * e;
  }
  return w;
}

std::string to_string(const Monomial& m) {
  if (m.empty()) {
    return "1";
  }
  std::string s;
  for (const auto& [g, e] : m) {
    for (int i = 0; i < e; ++i) {
      s += (s.empty() ? "" : "*") + g.str();
    }
  }
  return s;
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (const auto& [g, e] : b) {
    r[g] += e;
  }
  return r;
}

void accumulate(std::map<Monomial, Rational>& terms, const Monomial& m, const Rational& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      terms.erase(it);
    }
  }
}

Expr single(Gen kind, int n, const Point& z = {}) {
  Monomial m;
  m[Generator{kind, n, z}] = 1;
  return Expr(m);
}

bool is_rational_value(const Point& z, long v) { return z.rational && z.value() == Rational(v); }

std::string join_terms(const std::vector<std::pair<std::string, Rational>>& parts) {
  if (parts.empty()) {
    return "0";
  }
  std::string s;
  for (const auto& [body, c] : parts) {
    std::string term;
    const Rational mag = c.sign() < 0 ? -c : c;
    if (body == "1") {
      term = mag.str();
    } else if (mag == Rational(1)) {
      term = body;
    } else {
      term = mag.str() + "*" + body;
    }
    if (s.empty()) {
      s = (c.sign() < 0 ? "-" : "") + term;
    } else {
      s += (c.sign() < 0 ? " - " : " + ") + term;
    }
  }
  return s;
}

}  // namespace

Expr::Expr(const Rational& constant) {
  if (!constant.is_zero()) {
    terms.emplace(Monomial{}, constant);
  }
}

Expr::Expr(const Monomial& m, const Rational& coeff) {
  if (!coeff.is_zero()) {
    terms.emplace(m, coeff);
  }
}

std::vector<int> Expr::weights() const {
  std::set<int> w;
  for (const auto& [m, c] : terms) {
    w.insert(weight(m));
  }
  return {w.begin(), w.end()};
}

std::string Expr::str() const {
  std::vector<std::pair<const Monomial*, Rational>> order;
  for (const auto& [m, c] : terms) {
    order.emplace_back(&m, c);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return weight(*a.first) > weight(*b.first); });
  std::vector<std::pair<std::string, Rational>> parts;
  for (const auto& [m, c] : order) {
    parts.emplace_back(to_string(*m), c);
  }
  return join_terms(parts);
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [m, c] : o.terms) {
    accumulate(terms, m, c);
  }
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& [m, c] : o.terms) {
    accumulate(terms, m, -c);
  }
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr r;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      accumulate(r.terms, multiply(ma, mb), ca * cb);
    }
  }
  return r;
}

Expr operator*(const Rational& c, const Expr& a) {
  Expr r;
  for (const auto& [m, v] : a.terms) {
    accumulate(r.terms, m, c * v);
  }
  return r;
}

Expr zm(int n) {
  if (n == 1) {
    throw DomainError("zeta_m(1) is divergent");
  }
  if (n < 1) {
    throw DomainError("zeta_m(n) needs n >= 2");
  }
  return single(Gen::Zm, n);
}

Expr lim(int n, const Point& z) {
  if (n < 1) {
    throw DomainError("Li_m(n; z) needs n >= 1");
  }
  if (is_rational_value(z, 0)) {
    return Expr();
  }
  if (is_rational_value(z, 1)) {
    return zm(n);
  }
  return single(Gen::Lim, n, z);
}

Expr tpim() { return single(Gen::Tpim, 1); }

Expr zu(int n) {
  if (n < 2) {
    throw DomainError("zeta_u(n) needs n >= 2");
  }
  // even unipotent zeta values vanish
  return n % 2 == 0 ? Expr() : single(Gen::Zu, n);
}

Expr lnu(const Point& z) {
  if (is_rational_value(z, 1)) {
    return Expr();
  }
  if (is_rational_value(z, 0)) {
    throw DomainError("log_u(0) is undefined");
  }
  return single(Gen::Lnu, 1, z);
}

Expr liu(int n, const Point& z) {
  if (n < 1) {
    throw DomainError("Li_u(n; z) needs n >= 1");
  }
  if (is_rational_value(z, 0)) {
    return Expr();
  }
  if (is_rational_value(z, 1)) {
    if (n == 1) {
      throw DomainError("Li_u(1; 1) is divergent");
    }
    return zu(n);
  }
  return single(Gen::Liu, n, z);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) {
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::string digits() {
    if (!at_digit()) {
      fail("expected a number");
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational rational() {
    std::string num = digits();
    skip();
    // a '/' followed by digits continues the literal; otherwise it is left alone
    if (pos_ < s_.size() && s_[pos_] == '/') {
      const std::size_t save = pos_;
      ++pos_;
      if (at_digit()) {
        const std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) {
          fail("zero denominator");
        }
        return Rational::parse(num + "/" + den);
      }
      pos_ = save;
    }
    return Rational::parse(num);
  }

  int small_int() {
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.size() > 4) {
      pos_ = at;
      fail("integer argument too large");
    }
    return std::stoi(d);
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  Point point() {
    skip();
    bool negative = false;
    if (accept('-')) {
      negative = true;
    }
    if (at_digit()) {
      const Rational r = rational();
      return Point::number(negative ? -r : r);
    }
    if (negative) {
      fail("expected a rational after '-'");
    }
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) {
      pos_ = at;
      fail("expected a point");
    }
    return Point::symbol(name);
  }

  Expr expr() {
    Expr e;
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    Expr t = term();
    e = negative ? -t : t;
    while (true) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr t = factor();
    while (accept('*')) {
      t = t * factor();
    }
    return t;
  }

  Expr factor() {
    skip();
    if (pos_ >= s_.size()) {
      fail("unexpected end of input");
    }
    if (accept('-')) {
      return -factor();
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (at_digit()) {
      return Expr(rational());
    }
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name == "zeta_m") {
      expect('(');
      const std::size_t arg_at = pos_;
      const int n = small_int();
      expect(')');
      if (n == 0) {
        pos_ = arg_at;
        fail("zeta_m needs n >= 2");
      }
      return zm(n);
    }
    if (name == "Li_m") {
      expect('(');
      const int n = small_int();
      expect(';');
      const Point z = point();
      expect(')');
      if (n == 0) {
        fail("Li_m needs n >= 1");
      }
      return lim(n, z);
    }
    if (name == "twopi_i") {
      return tpim();
    }
    pos_ = at;
    fail(name.empty() ? "expected a factor" : "unknown symbol '" + name + "'");
  }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

void TensorSum::add(const Monomial& left, const Monomial& right, const Rational& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = terms.emplace(std::make_pair(left, right), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      terms.erase(it);
    }
  }
}

std::string TensorSum::str() const {
  std::vector<std::pair<std::string, Rational>> parts;
  for (const auto& [lr, c] : terms) {
    parts.emplace_back(to_string(lr.first) + " (x) " + to_string(lr.second), c);
  }
  if (parts.empty()) {
    return "0";
  }
  // "1 (x) 1" must keep its body even for coefficient 1
  std::string s;
  for (const auto& [body, c] : parts) {
    const Rational mag = c.sign() < 0 ? -c : c;
    const std::string t = mag == Rational(1) ? body : mag.str() + "*" + body;
    if (s.empty()) {
      s = (c.sign() < 0 ? "-" : "") + t;
    } else {
      s += (c.sign() < 0 ? " - " : " + ") + t;
    }
  }
  return s;
}

TensorSum operator*(const TensorSum& a, const TensorSum& b) {
  TensorSum r;
  for (const auto& [la, ca] : a.terms) {
    for (const auto& [lb, cb] : b.terms) {
      r.add(multiply(la.first, lb.first), multiply(la.second, lb.second), ca * cb);
    }
  }
  return r;
}

namespace {

TensorSum tensor(const Expr& left, const Expr& right) {
  TensorSum t;
  for (const auto& [ml, cl] : left.terms) {
    for (const auto& [mr, cr] : right.terms) {
      t.add(ml, mr, cl * cr);
    }
  }
  return t;
}

TensorSum& operator+=(TensorSum& a, const TensorSum& b) {
  for (const auto& [lr, c] : b.terms) {
    a.add(lr.first, lr.second, c);
  }
  return a;
}

TensorSum unit_tensor() {
  TensorSum t;
  t.add({}, {}, Rational(1));
  return t;
}

/// sum_{k=0}^{n-1} log_u(z)^k / k! (x) slot(n - k) + tail
TensorSum polylog_rule(int n, const Point& z, const std::function<Expr(int)>& slot, const Expr& tail) {
  TensorSum t;
  Expr power(Rational(1));
  const Expr l = lnu(z);
  for (int k = 0; k < n; ++k) {
    t += tensor(Rational(1) / factorial(static_cast<unsigned>(k)) * power, slot(n - k));
    power = power * l;
  }
  t += tensor(tail, Expr(Rational(1)));
  return t;
}

TensorSum coact_generator(const Generator& g) {
  const Expr one(Rational(1));
  switch (g.kind) {
    case Gen::Zm: {
      Expr self = zm(g.n);
      TensorSum t = tensor(one, self);
      if (g.n % 2 == 1) {
        t += tensor(zu(g.n), one);
      }
      return t;
    }
    case Gen::Tpim:
      return tensor(one, tpim());
    case Gen::Lim:
      return polylog_rule(g.n, g.z, [&](int m) { return lim(m, g.z); }, liu(g.n, g.z));
    default:
      throw InputError("coaction applies to motivic symbols only, got " + g.str());
  }
}

TensorSum coproduct_generator(const Generator& g) {
  const Expr one(Rational(1));
  switch (g.kind) {
    case Gen::Zu:
    case Gen::Lnu: {
      Monomial m;
      m[g] = 1;
      TensorSum t = tensor(Expr(m), one);
      return t += tensor(one, Expr(m));
    }
    case Gen::Liu:
      return polylog_rule(g.n, g.z, [&](int m) { return liu(m, g.z); }, liu(g.n, g.z));
    default:
      throw InputError("coproduct applies to unipotent symbols only, got " + g.str());
  }
}

TensorSum extend(const Expr& e, const std::function<TensorSum(const Generator&)>& rule) {
  TensorSum total;
  for (const auto& [m, c] : e.terms) {
    TensorSum t = unit_tensor();
    for (const auto& [g, exp] : m) {
      const TensorSum tg = rule(g);
      for (int i = 0; i < exp; ++i) {
        t = t * tg;
      }
    }
    for (const auto& [lr, v] : t.terms) {
      total.add(lr.first, lr.second, c * v);
    }
  }
  return total;
}

}  // namespace

TensorSum coact(const Expr& e) { return extend(e, coact_generator); }

TensorSum coproduct(const Expr& unipotent) { return extend(unipotent, coproduct_generator); }

bool coassoc_residual(const Expr& e) {
  using Triple = std::tuple<Monomial, Monomial, Monomial>;
  std::map<Triple, Rational> lhs;
  std::map<Triple, Rational> rhs;
  auto add = [](std::map<Triple, Rational>& acc, Triple key, const Rational& c) {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = acc.emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        acc.erase(it);
      }
    }
  };
  const TensorSum d = coact(e);
  for (const auto& [lr, c] : d.terms) {
    const TensorSum left = coproduct(Expr(lr.first));
    for (const auto& [ab, v] : left.terms) {
      add(lhs, {ab.first, ab.second, lr.second}, c * v);
    }
    const TensorSum right = coact(Expr(lr.second));
    for (const auto& [ab, v] : right.terms) {
      add(rhs, {lr.first, ab.first, ab.second}, c * v);
    }
  }
  return lhs == rhs;
}

Expr reduce_even_zetas(const Expr& e) {
  Expr out;
  for (const auto& [m, c] : e.terms) {
    Expr t(Rational(1));
    Monomial rest;
    for (const auto& [g, exp] : m) {
      if (g.kind == Gen::Zm && g.n % 2 == 0 && g.n > 2) {
        const auto k = static_cast<unsigned>(g.n / 2);
        Monomial z2;
        z2[Generator{Gen::Zm, 2, {}}] = static_cast<int>(k);
        const Expr r(z2, zeta_even_closed(k) * pow(Rational(6), k));
        for (int i = 0; i < exp; ++i) {
          t = t * r;
        }
      } else {
        rest[g] = exp;
      }
    }
    out += c * (t * Expr(rest));
  }
  return out;
}

namespace {

/// Row-reduced rank over the rationals.
int rank(const std::vector<Expr>& family) {
  std::map<Monomial, std::size_t> column;
  for (const Expr& e : family) {
    for (const auto& [m, c] : e.terms) {
      column.emplace(m, column.size());
    }
  }
  std::vector<std::vector<Rational>> rows;
  for (const Expr& e : family) {
    std::vector<Rational> row(column.size());
    for (const auto& [m, c] : e.terms) {
      row[column.at(m)] = c;
    }
    rows.push_back(std::move(row));
  }
  int r = 0;
  for (std::size_t col = 0; col < column.size() && r < static_cast<int>(rows.size()); ++col) {
    auto pivot = std::find_if(rows.begin() + r, rows.end(), [&](const auto& row) { return !row[col].is_zero(); });
    if (pivot == rows.end()) {
      continue;
    }
    std::iter_swap(rows.begin() + r, pivot);
    const auto& p = rows[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i) {
      if (rows[i][col].is_zero()) {
        continue;
      }
      const Rational f = rows[i][col] / p[col];
      for (std::size_t j = col; j < column.size(); ++j) {
        rows[i][j] -= f * p[j];
      }
    }
    ++r;
  }
  return r;
}

std::vector<Expr> reduced(const std::vector<Expr>& family) {
  std::vector<Expr> out;
  out.reserve(family.size());
  for (const Expr& e : family) {
    out.push_back(reduce_even_zetas(e));
  }
  return out;
}

}  // namespace

int span_dimension(const std::vector<Expr>& family) { return rank(reduced(family)); }

Conjugates galois_conjugates(const Expr& e) {
  std::map<Monomial, Expr> by_left;
  for (const auto& [lr, c] : coact(e).terms) {
    by_left[lr.first] += Expr(lr.second, c);
  }
  Conjugates out;
  for (auto& [left, right] : by_left) {
    if (!right.is_zero() &&
        std::find(out.elements.begin(), out.elements.end(), right) == out.elements.end()) {
      out.elements.push_back(right);
    }
  }
  out.dimension = span_dimension(out.elements);
  return out;
}

StabilityReport stability_report(const std::vector<Expr>& family) {
  if (family.empty()) {
    throw InputError("stability report needs a non-empty family");
  }
  const std::vector<Expr> base = reduced(family);
  const int base_rank = rank(base);
  StabilityReport report;
  for (const Expr& member : family) {
    StabilityReport::Member m{member, {}};
    for (const Expr& c : galois_conjugates(member).elements) {
      std::vector<Expr> extended = base;
      extended.push_back(reduce_even_zetas(c));
      if (rank(extended) > base_rank) {
        m.missing.push_back(c);
      }
    }
    report.stable = report.stable && m.missing.empty();
    report.members.push_back(std::move(m));
  }
  return report;
}

std::string StabilityReport::str() const {
  std::string s = stable ? "stable\n" : "unstable\n";
  for (const Member& m : members) {
    s += "  " + m.expr.str() + ": ";
    if (m.missing.empty()) {
      s += "closed\n";
      continue;
    }
    s += "missing ";
    for (std::size_t i = 0; i < m.missing.size(); ++i) {
      s += (i ? ", " : "") + m.missing[i].str();
    }
    s += "\n";
  }
  return s;
}

namespace {

BigReal generator_value(const Generator& g, int prec) {
  switch (g.kind) {
    case Gen::Zm:
      return zeta(static_cast<long>(g.n), prec);
    case Gen::Lim: {
      const Rational z = g.z.value();
      return polylog(static_cast<unsigned>(g.n), Real(z, working_bits(prec)), prec);
    }
    case Gen::Tpim: {
      const Real v = 2 * Real::pi(working_bits(prec));
      return exact(v, prec);
    }
    default:
      throw DomainError("no period for unipotent symbol " + g.str());
  }
}

BigReal evaluate(const Expr& e, int prec) {
  BigReal total = exact(Rational(0), prec);
  std::map<Generator, BigReal> cache;
  for (const auto& [m, c] : e.terms) {
    BigReal term = exact(Rational(1), prec);
    for (const auto& [g, exp] : m) {
      auto it = cache.find(g);
      if (it == cache.end()) {
        it = cache.emplace(g, generator_value(g, prec)).first;
      }
      for (int i = 0; i < exp; ++i) {
        term = term * it->second;
      }
    }
    total = total + c * term;
  }
  return total;
}

}  // namespace

BigReal period_map(const Expr& e, int prec) {
  for (int extra : {5, 25, 60}) {
    BigReal v = evaluate(e, prec + extra);
    v.prec = prec;
    if (v.certified()) {
      return v;
    }
  }
  BigReal v = evaluate(e, prec + 60);
  v.prec = prec;
  return certify(v, "period_map");
}

}  // namespace eulerp
