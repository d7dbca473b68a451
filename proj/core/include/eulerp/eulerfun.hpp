#pragma once

#include <vector>

#include "eulerp/numkernel.hpp"

namespace eulerp {

/// Riemann zeta at real s > 1, by Euler-Maclaurin summation.
BigReal zeta(const Real& s, int prec);
BigReal zeta(long s, int prec);

/// The rational r with zeta(2n) = r * pi^(2n).
Rational zeta_even_closed(unsigned n);

/// Alternating zeta: sum (-1)^(k-1) k^-s for s > 0 (phi(1) = ln 2).
BigReal phi(const Real& s, int prec);
BigReal phi(long s, int prec);

/// Li_n(z) = sum z^k / k^n for real z in [-1, 1].
///
/// For n >= 3 the argument is restricted to [-1, 1/2] and z = 1.
BigReal polylog(unsigned n, const Real& z, int prec);

/// Li_2 through the Bernoulli series in u = -ln(1 - z); valid for z < 1 - e^-2pi.
/// Used as an independent route by the identity checks.
BigReal dilog_bernoulli_series(const Real& z, int prec);

enum class GammaMethod { EulerMaclaurin, ZetaSeries };

/// The Euler-Mascheroni constant.
BigReal gamma_const(int prec, GammaMethod method = GammaMethod::EulerMaclaurin);

enum class IdentityKind { DilogReflection, Cotangent, EulerProduct, PhiFuncEq };

struct IdentityParams {
  /// x for the dilogarithm and cotangent checks, s for the product and phi checks.
  Real point;
  /// Number of even-zeta terms in the cotangent expansion.
  long truncation = 20;
  /// Largest prime included in the Euler product.
  long prime_bound = 100000;
};

/// LHS - RHS of the identity (LHS / RHS - 1 for PhiFuncEq).
///
///  DilogReflection  Li2(x) + Li2(1-x) + ln x ln(1-x) - zeta(2),     0 < x < 1
///  Cotangent        x cot x - 1 + 2 sum_{n<=N} zeta(2n) (x/pi)^2n,  0 < x < pi
///  EulerProduct     zeta(s) prod_{p<=P} (1 - p^-s) - 1,              s > 1
///  PhiFuncEq        phi(1-s)/phi(s) over the reflection factor,      0 < s < 1
///
/// err covers numerical error only; truncation effects remain in the value.
BigReal identity_residual(IdentityKind kind, const IdentityParams& params, int prec);

/// Sieve of Eratosthenes, limit <= 10^7.
std::vector<long> primes_up_to(long limit);

}  // namespace eulerp
