#include "eulerp/g2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eulerp/errors.hpp"
#include "eulerp/eulerfun.hpp"
#include "eulerp/mzv.hpp"

namespace eulerp {

namespace {

constexpr int kMaxOrder = 4;
// constituents carry a few digits more than the result; the a_3 bracket has factors near 300
constexpr int kCoeffGuard = 4;

BigReal with_prec(BigReal x, int prec) {
  x.prec = prec;
  return x;
}

BigReal decimal(std::string_view text, int prec) { return exact(Real::parse(text, working_bits(prec)), prec); }

void check_prec(int prec) {
  if (prec < 1) {
    throw InputError("precision must be at least 1 digit");
  }
}

void check_order(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw InputError("series order must be between 1 and " + std::to_string(kMaxOrder));
  }
}

}  // namespace

std::vector<double> Measurement::components() const {
  std::vector<double> out;
  for (const auto& c : uncertainty_components) {
    out.push_back(Real::parse(c, 64).to_double());
  }
  return out;
}

double Measurement::total_uncertainty() const { return combine_uncertainties(components()); }

BigReal coeff_a2(int prec, A2Form form) {
  check_prec(prec);
  const int p = prec + kCoeffGuard;
  const BigReal p1 = phi(1L, p);
  const BigReal p2 = phi(2L, p);
  const BigReal p3 = phi(3L, p);
  BigReal r = p3 - Rational(6) * (p1 * p2) + Rational(197, 144);
  if (form == A2Form::Bracket) {
    r = r + p2;
  }
  return certify(with_prec(r, prec), "a2");
}

BigReal coeff_a4(A4Source source, int prec) {
  check_prec(prec);
  BigReal r = decimal(source == A4Source::Analytic ? kA4Analytic : kA4Numerical, prec);
  if (source == A4Source::Analytic) {
    // the quoted digits are a truncation
    r.err += 1e-51;
  }
  return r;
}

BigReal coeff_a3(A3Form form, int prec) {
  check_prec(prec);
  const int p = prec + kCoeffGuard;
  if (form == A3Form::AsPrinted) {
    const BigReal p1 = phi(1L, p);
    const BigReal p2 = phi(2L, p);
    const BigReal p3 = phi(3L, p);
    const BigReal p5 = phi(5L, p);
    const BigReal p13 = multiphi({1, 3}, p);
    BigReal r = Rational(2, 9) * (Rational(83) * (p2 * p3) - Rational(43) * p5);
    r = r - Rational(50, 3) * p13;
    r = r + Rational(13, 5) * (p2 * p2);
    r = r + Rational(278, 3) * (Rational(1, 9) * p3 - Rational(12) * (p1 * p2));
    r = r + Rational(34202, 135) * p2;
    r = r + Rational(28259, 2592);
    return certify(with_prec(r, prec), "a3");
  }
  const auto& reg = builtin_registry();
  const unsigned bits = working_bits(p);
  const Real alpha_inv = find_measurement(reg, "alpha-inv:Rb11").value_at(bits);
  const BigReal x = exact(Real(1L, bits) / (Real::pi(bits) * alpha_inv), p);
  const BigReal ae = exact(find_measurement(reg, "th:2017").value_at(bits), p);
  const BigReal x2 = x * x;
  const BigReal x3 = x2 * x;
  const BigReal rest = Rational(1, 2) * x + coeff_a2(p) * x2 + coeff_a4(A4Source::Analytic, p) * (x2 * x2);
  return certify(with_prec((ae - rest) / x3, prec), "a3");
}

std::vector<BigReal> coefficients(const CoefficientSet& set, int order, int prec) {
  check_order(order);
  check_prec(prec);
  std::vector<BigReal> a{exact(Rational(1, 2), prec)};
  if (order >= 2) {
    a.push_back(coeff_a2(prec, set.a2));
  }
  if (order >= 3) {
    a.push_back(coeff_a3(set.a3, prec));
  }
  if (order >= 4) {
    a.push_back(coeff_a4(set.a4, prec));
  }
  return a;
}

namespace {

struct Series {
  std::vector<BigReal> a;
  Real pi;

  /// sum a_n (alpha/pi)^n with the coefficient error carried along.
  BigReal value(const Real& alpha, int prec) const {
    const BigReal x = exact(alpha / pi, prec);
    BigReal power = x;
    BigReal sum = a[0] * power;
    for (std::size_t n = 1; n < a.size(); ++n) {
      power = power * x;
      sum = sum + a[n] * power;
    }
    return sum;
  }

  Real derivative(const Real& alpha) const {
    const Real x = alpha / pi;
    Real power(1L, x.bits());
    Real d(0L, x.bits());
    for (std::size_t n = 0; n < a.size(); ++n) {
      d += static_cast<long>(n + 1) * (a[n].value * power);
      power *= x;
    }
    return d / pi;
  }
};

}  // namespace

BigReal assemble(const Real& alpha_inv, const CoefficientSet& set, int order, int prec) {
  check_prec(prec);
  if (!(alpha_inv > 0L)) {
    throw DomainError("alpha^-1 must be positive");
  }
  const int p = prec + kCoeffGuard;
  const unsigned bits = working_bits(p);
  const Series s{coefficients(set, order, p), Real::pi(bits)};
  return certify(with_prec(s.value(Real(1L, bits) / alpha_inv.with_bits(bits), p), prec), "assemble");
}

AlphaInversion invert_alpha(const Real& target_ae, const CoefficientSet& set, int order, int prec) {
  check_prec(prec);
  if (!(target_ae > 0L) || !(target_ae < Real(0.002, 64))) {
    throw DomainError("target a_e must lie in (0, 2e-3)");
  }
  const int p = prec + kCoeffGuard;
  const unsigned bits = working_bits(p);
  const Series s{coefficients(set, order, p), Real::pi(bits)};
  const Real target = target_ae.with_bits(bits);
  auto residual = [&](const Real& alpha) { return s.value(alpha, p).value - target; };

  Real alpha = 2L * s.pi * target;
  Real f = residual(alpha);
  const Real tol = Real(tolerance(p + 2), bits);
  AlphaInversion out;
  for (out.iterations = 1; out.iterations <= 50; ++out.iterations) {
    Real step = f / s.derivative(alpha);
    Real next = alpha - step;
    Real fn = residual(next);
    for (int halving = 0; halving < 30 && abs(fn) > abs(f); ++halving) {
      step /= 2L;
      next = alpha - step;
      fn = residual(next);
    }
    alpha = next;
    f = fn;
    if (abs(step) <= tol * alpha) {
      BigReal inv = exact(Real(1L, bits) / alpha, p);
      // coefficient errors shift the root by delta_f / f'; alpha^-1 moves by that over alpha^2
      const double coeff_err = s.value(alpha, p).err;
      const double a = alpha.to_double();
      inv.err += coeff_err / s.derivative(alpha).to_double() / (a * a) + 2.0 * tol.to_double() / a;
      out.alpha_inv = certify(with_prec(inv, prec), "invert_alpha");
      return out;
    }
  }
  throw NoConvergence("alpha inversion did not converge in 50 Newton steps");
}

double combine_uncertainties(const std::vector<double>& components) {
  double s = 0.0;
  for (double c : components) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InputError("uncertainty components must be finite and non-negative");
    }
    s += c * c;
  }
  return std::sqrt(s);
}

long display_uncertainty(const std::vector<double>& components, double unit) {
  if (!(unit > 0.0)) {
    throw InputError("display unit must be positive");
  }
  return std::lround(combine_uncertainties(components) / unit);
}

std::string Comparison::str() const {
  if (difference.is_zero() && uncertainty == 0.0) {
    return "0 ± 0";
  }
  long e = difference.is_zero() ? std::numeric_limits<long>::min() : difference.decimal_exponent();
  if (uncertainty > 0.0) {
    e = std::max(e, static_cast<long>(std::floor(std::log10(uncertainty))));
  }
  const double unc = uncertainty / std::pow(10.0, static_cast<double>(e));
  int decimals = 0;
  if (unc > 0.0) {
    decimals = std::max(0, 1 - static_cast<int>(std::floor(std::log10(unc))));
  }
  const unsigned bits = difference.bits() + 64;
  Real scaled = difference.with_bits(bits);
  Real ten(10L, bits);
  Real p10(bits);
  mpfr_pow_si(p10.get(), ten.get(), e, MPFR_RNDN);
  scaled /= p10;
  char head[128];
  mpfr_snprintf(head, sizeof head, "%.*Rf", decimals, scaled.get());
  char tail[64];
  std::snprintf(tail, sizeof tail, "%.*f", decimals, unc);
  std::string h(head);
  if (h.find_first_not_of("-0.") == std::string::npos && h.front() == '-') {
    h.erase(0, 1);
  }
  const std::string exp_part = e == 0 ? "" : "e" + std::to_string(e);
  return h + exp_part + " ± " + tail + exp_part;
}

Comparison compare(const Measurement& a, const Measurement& b) {
  constexpr unsigned bits = 256;
  Comparison c;
  c.difference = a.value_at(bits) - b.value_at(bits);
  c.uncertainty = combine_uncertainties({a.total_uncertainty(), b.total_uncertainty()});
  c.pull = c.uncertainty > 0.0 ? c.difference.to_double() / c.uncertainty : 0.0;
  return c;
}

BigReal g_factor(const BigReal& ae) { return Rational(2) * (ae + Rational(1)); }

const std::vector<Measurement>& builtin_registry() {
  static const std::vector<Measurement> reg = {
      {"exp:1947", "1.159e-3", {"5e-6"}, 1947, "atomic spectroscopy"},
      {"th:1947", "1.161e-3", {}, 1947, "one-loop alpha/2pi"},
      {"exp:1956", "1.1681e-3", {"5e-7"}, 1956, "atomic beam"},
      {"th:1957", "1.159638e-3", {"4e-9"}, 1957, "two-loop total"},
      {"exp:1971", "1.1596577e-3", {"3.5e-9"}, 1971, "spin precession"},
      {"th:1996", "1.159652201e-3", {"2.7e-11"}, 1996, "three-loop total"},
      {"exp:1987:e-", "1.1596521884e-3", {"4.3e-12"}, 1987, "Penning trap, electron"},
      {"exp:1987:e+", "1.1596521879e-3", {"4.3e-12"}, 1987, "Penning trap, positron"},
      {"a4:2012", "-1.9106", {"0.0020"}, 2012, "four-loop coefficient, numerical"},
      {"a4:2017", std::string(kA4Analytic), {}, 2017, "four-loop coefficient, analytic"},
      {"exp:2008", "1.15965218073e-3", {"2.8e-13"}, 2008, "cylindrical Penning trap"},
      {"th:2012", "1.15965218178e-3", {"6e-14", "4e-14", "2e-14", "7.7e-13"}, 2012,
       "theory: 4-loop, 5-loop, hadronic+weak, alpha"},
      {"th:2017", "1.159652181664e-3", {"2.3e-14", "1.6e-14", "7.63e-13"}, 2017,
       "theory: 5-loop, hadronic+weak, alpha"},
      {"diff:2008-2012", "-1.05e-12", {"8.2e-13"}, 2012, "exp:2008 minus th:2012"},
      {"alpha-inv:ae", "137.0359991727", {"6.8e-9", "4.6e-9", "1.9e-9", "3.31e-8"}, 2012,
       "alpha^-1 from a_e: 4-loop, 5-loop, hadronic+weak, a_e"},
      {"alpha-inv:Rb11", "137.035999049", {"9.0e-8"}, 2011, "alpha^-1 from rubidium recoil"},
  };
  return reg;
}

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void field_error(std::size_t index, const std::string& field, const std::string& what) {
  throw SchemaError("registry entry " + std::to_string(index) + ", field '" + field + "': " + what);
}

std::string decimal_field(const nlohmann::json& j, std::size_t index, const std::string& field) {
  if (!j.is_string()) {
    field_error(index, field, "expected a decimal string");
  }
  const auto s = j.get<std::string>();
  try {
    Real::parse(s, 64);
  } catch (const InputError&) {
    field_error(index, field, "not a decimal number: '" + s + "'");
  }
  return s;
}

}  // namespace

std::vector<Measurement> parse_registry(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("registry line " + std::to_string(line_of(json_text, e.byte)) + ": malformed JSON");
  }
  if (!doc.is_array()) {
    throw SchemaError("registry line 1: top level must be an array");
  }
  std::vector<Measurement> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    if (!e.is_object()) {
      throw SchemaError("registry entry " + std::to_string(i) + ": expected an object");
    }
    for (const char* key : {"label", "value", "uncertainty_components", "year", "source_eq"}) {
      if (!e.contains(key)) {
        field_error(i, key, "missing");
      }
    }
    Measurement m;
    if (!e["label"].is_string() || e["label"].get<std::string>().empty()) {
      field_error(i, "label", "expected a non-empty string");
    }
    m.label = e["label"].get<std::string>();
    if (!seen.insert(m.label).second) {
      field_error(i, "label", "duplicate label '" + m.label + "'");
    }
    m.value = decimal_field(e["value"], i, "value");
    if (!e["uncertainty_components"].is_array()) {
      field_error(i, "uncertainty_components", "expected an array");
    }
    for (const auto& c : e["uncertainty_components"]) {
      m.uncertainty_components.push_back(decimal_field(c, i, "uncertainty_components"));
      if (Real::parse(m.uncertainty_components.back(), 64) < 0L) {
        field_error(i, "uncertainty_components", "negative component");
      }
    }
    if (!e["year"].is_number_integer()) {
      field_error(i, "year", "expected an integer");
    }
    m.year = e["year"].get<int>();
    if (!e["source_eq"].is_string()) {
      field_error(i, "source_eq", "expected a string");
    }
    m.source = e["source_eq"].get<std::string>();
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Measurement> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open registry '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

std::string registry_to_json(const std::vector<Measurement>& registry) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& m : registry) {
    nlohmann::ordered_json e;
    e["label"] = m.label;
    e["value"] = m.value;
    e["uncertainty_components"] = m.uncertainty_components;
    e["year"] = m.year;
    e["source_eq"] = m.source;
    doc.push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

const Measurement& find_measurement(const std::vector<Measurement>& registry, std::string_view label) {
  for (const auto& m : registry) {
    if (m.label == label) {
      return m;
    }
  }
  throw InputError("no registry entry labelled '" + std::string(label) + "'");
}

}  // namespace eulerp
