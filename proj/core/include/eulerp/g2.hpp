#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eulerp/numkernel.hpp"

namespace eulerp {

/// A quoted value with its uncertainty components, all as decimal strings.
struct Measurement {
  std::string label;
  std::string value;
  std::vector<std::string> uncertainty_components;
  int year = 0;
  std::string source;

  Real value_at(unsigned bits) const { return Real::parse(value, bits); }
  std::vector<double> components() const;
  /// Quadrature sum of the components.
  double total_uncertainty() const;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

enum class A2Form {
  /// phi(3) - 6 phi(1) phi(2) + phi(2) + 197/144
  Bracket,
  /// The same bracket without the phi(2) term.
  WithoutPhi2,
};

enum class A3Form {
  /// Solved from the 2017 theory total at the rubidium alpha.
  Consistent,
  /// The multiple phi-value bracket evaluated literally.
  AsPrinted,
};

enum class A4Source {
  /// -1.912245764926445574152647167439830054060873390658725 (51 digits).
  Analytic,
  /// -1.9106
  Numerical,
};

struct CoefficientSet {
  A2Form a2 = A2Form::Bracket;
  A3Form a3 = A3Form::Consistent;
  A4Source a4 = A4Source::Analytic;
};

inline constexpr std::string_view kA4Analytic = "-1.912245764926445574152647167439830054060873390658725";
inline constexpr std::string_view kA4Numerical = "-1.9106";

BigReal coeff_a2(int prec, A2Form form = A2Form::Bracket);
BigReal coeff_a3(A3Form form, int prec);
BigReal coeff_a4(A4Source source, int prec);

/// a_1 .. a_order of the series in alpha/pi.
std::vector<BigReal> coefficients(const CoefficientSet& set, int order, int prec);

/// sum_{n <= order} a_n (alpha/pi)^n with alpha = 1/alpha_inv.
BigReal assemble(const Real& alpha_inv, const CoefficientSet& set, int order, int prec);

struct AlphaInversion {
  BigReal alpha_inv;
  int iterations = 0;
};

/// Newton iteration on alpha from 2 pi a_e; damped when a step does not reduce the residual.
AlphaInversion invert_alpha(const Real& target_ae, const CoefficientSet& set, int order, int prec);

/// sqrt of the sum of squares.
double combine_uncertainties(const std::vector<double>& components);

/// Combined uncertainty in units of `unit`, rounded to an integer, e.g. (6,4,2,77) -> 77.
long display_uncertainty(const std::vector<double>& components, double unit);

struct Comparison {
  Real difference;
  double uncertainty = 0.0;
  double pull = 0.0;

  /// "-1.05e-12 ± 0.82e-12": both numbers in units of the larger decimal exponent,
  /// the uncertainty to two significant digits.
  std::string str() const;
};

Comparison compare(const Measurement& a, const Measurement& b);

/// 2 (1 + a_e)
BigReal g_factor(const BigReal& ae);

/// The shipped registry (16 entries).
const std::vector<Measurement>& builtin_registry();

/// Parses a registry document; SchemaError names the line or the entry and field.
std::vector<Measurement> parse_registry(std::string_view json_text);
std::vector<Measurement> load_registry(const std::string& path);
std::string registry_to_json(const std::vector<Measurement>& registry);

/// Throws InputError for an unknown label.
const Measurement& find_measurement(const std::vector<Measurement>& registry, std::string_view label);

}  // namespace eulerp
