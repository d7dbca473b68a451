#pragma once

// Reference values straight from MPFR's own special functions. These share no
// code with the library's summation engines.

#include <mpfr.h>

#include <string>

#include "eulerp/real.hpp"

namespace oracle {

inline eulerp::Real zeta(long s, unsigned bits = 256) {
  eulerp::Real r(bits);
  mpfr_zeta_ui(r.get(), static_cast<unsigned long>(s), MPFR_RNDN);
  return r;
}

inline eulerp::Real zeta(const eulerp::Real& s) {
  eulerp::Real r(s.bits());
  mpfr_zeta(r.get(), s.get(), MPFR_RNDN);
  return r;
}

inline eulerp::Real li2(const eulerp::Real& z) {
  eulerp::Real r(z.bits());
  mpfr_li2(r.get(), z.get(), MPFR_RNDN);
  return r;
}

inline eulerp::Real euler_gamma(unsigned bits = 256) {
  eulerp::Real r(bits);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

/// (1 - 2^(1-s)) zeta(s)
inline eulerp::Real phi(const eulerp::Real& s) {
  eulerp::Real two(2, s.bits());
  return (1 - eulerp::pow(two, 1 - s)) * zeta(s);
}

inline double diff(const eulerp::Real& a, const eulerp::Real& b) {
  return eulerp::abs(a - b).to_double();
}

inline eulerp::Real dec(const std::string& text, unsigned bits = 256) {
  return eulerp::Real::parse(text, bits);
}

}  // namespace oracle
