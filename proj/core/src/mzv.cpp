#include "eulerp/mzv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "eulerp/errors.hpp"
#include "eulerp/eulerfun.hpp"

namespace eulerp {

int MzvIndex::weight() const {
  int w = 0;
  for (int p : parts) {
    w += p;
  }
  return w;
}

bool MzvIndex::admissible() const { return !parts.empty() && parts.back() >= 2; }

std::string MzvIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    s += (i ? "," : "") + std::to_string(parts[i]);
  }
  return s + ")";
}

MzvIndex MzvIndex::parse(std::string_view text) {
  MzvIndex idx;
  std::string digits;
  auto flush = [&](std::size_t pos) {
    if (digits.empty()) {
      throw ParseError("expected a positive integer", pos);
    }
    if (digits.size() > 4) {
      throw InputError("index part too large: " + digits);
    }
    const int v = std::stoi(digits);
    if (v < 1) {
      throw InputError("index parts must be positive");
    }
    idx.parts.push_back(v);
    digits.clear();
  };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
    ++i;
  }
  const bool paren = i < text.size() && text[i] == '(';
  if (paren) {
    ++i;
  }
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else if (c == ',') {
      flush(i);
    } else if (c == ')' && paren) {
      flush(i);
      ++i;
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      if (i != text.size()) {
        throw ParseError("trailing characters after index", i);
      }
      return idx;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (paren) {
    throw ParseError("missing ')'", text.size());
  }
  flush(text.size());
  return idx;
}

namespace {

/// Values I(0; w_1..w_j; 1/2) for j = 0..n. Each series coefficient is
/// bounded by 1 in modulus, so dropping indices beyond `terms` costs at most 2^-terms.
std::vector<Real> half_path_values(const std::vector<int>& word, long terms, unsigned bits) {
  std::vector<Real> e(static_cast<std::size_t>(terms) + 1, Real(bits));
  e[0] = Real(1, bits);
  std::vector<Real> out{Real(1, bits)};
  std::vector<Real> next(e.size(), Real(bits));
  for (int a : word) {
    next[0] = Real(bits);
    if (a == 0) {
      for (long k = 1; k <= terms; ++k) {
        next[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k)] / k;
      }
    } else {
      // coefficient of t^k after integrating against dt / (t - a), evaluated at t = 1/2
      Real s(bits);
      for (long k = 1; k <= terms; ++k) {
        s += e[static_cast<std::size_t>(k - 1)];
        mpfr_div_si(s.get(), s.get(), 2 * a, MPFR_RNDN);
        next[static_cast<std::size_t>(k)] = -(s / k);
      }
    }
    std::swap(e, next);
    Real total(bits);
    for (const Real& v : e) {
      total += v;
    }
    out.push_back(std::move(total));
  }
  return out;
}

std::vector<int> mzv_word(const MzvIndex& idx) {
  std::vector<int> w;
  for (int p : idx.parts) {
    w.push_back(1);
    w.insert(w.end(), static_cast<std::size_t>(p - 1), 0);
  }
  return w;
}

void check_index(const MzvIndex& idx) {
  if (idx.parts.empty()) {
    throw InputError("empty index");
  }
  for (int p : idx.parts) {
    if (p < 1) {
      throw InputError("index parts must be positive");
    }
  }
  if (!idx.admissible()) {
    throw DivergentIndex("zeta" + idx.str() + " diverges: last part must be >= 2");
  }
}

}  // namespace

BigReal iterated_integral(const std::vector<int>& word, int prec, double cutoff_scale) {
  if (word.empty()) {
    return exact(Rational(1), prec);
  }
  for (int a : word) {
    if (a < -1 || a > 1) {
      throw InputError("iterated integral letters must be -1, 0 or 1");
    }
  }
  if (word.front() == 0 || word.back() == 1) {
    throw DivergentIndex("iterated integral diverges at an endpoint");
  }
  if (!(cutoff_scale >= 0.25)) {
    throw InputError("cutoff scale must be >= 1/4");
  }
  const unsigned bits = working_bits(prec);
  const auto n = static_cast<long>(word.size());
  const long terms = static_cast<long>(std::ceil(cutoff_scale * (bits + 2 * std::log2(n + 1.0) + 16)));

  std::vector<int> reflected;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    reflected.push_back(1 - *it);
  }
  const auto lower = half_path_values(word, terms, bits);
  const auto upper = half_path_values(reflected, terms, bits);

  // I(0; w; 1) = sum_j I(0; w_1..w_j; 1/2) I(1/2; w_j+1..w_n; 1), and
  // I(1/2; b_1..b_m; 1) = (-1)^m I(0; 1-b_m, ..., 1-b_1; 1/2)
  Real sum(bits);
  double scale = 0.0;
  for (long j = 0; j <= n; ++j) {
    const long m = n - j;
    Real t = lower[static_cast<std::size_t>(j)] * upper[static_cast<std::size_t>(m)];
    sum += (m % 2 == 0) ? t : -t;
    scale += std::fabs(lower[static_cast<std::size_t>(j)].to_double()) +
             std::fabs(upper[static_cast<std::size_t>(m)].to_double()) + 1.0;
  }
  BigReal out{sum, 0.0, prec};
  out.err = scale * std::ldexp(1.0, -static_cast<int>(terms)) +
            static_cast<double>(n * terms) * std::max(scale, 1.0) * std::ldexp(1.0, -static_cast<int>(bits) + 4);
  return certify(out, "iterated_integral");
}

BigReal mzv(const MzvIndex& idx, int prec) {
  check_index(idx);
  // zeta(n_1..n_d) = (-1)^d I(0; 1 0^(n_1-1) ... 1 0^(n_d-1); 1)
  BigReal v = iterated_integral(mzv_word(idx), prec);
  return idx.depth() % 2 == 0 ? v : -v;
}

BigReal mzv_bruteforce(const MzvIndex& idx, long cutoff) {
  check_index(idx);
  if (cutoff < idx.depth()) {
    throw InputError("cutoff must be at least the depth");
  }
  if (cutoff > 100'000'000) {
    throw TooLarge("cutoff above 10^8");
  }
  constexpr int kDigits = 40;
  const unsigned bits = digits_to_bits(kDigits);
  const auto len = static_cast<std::size_t>(cutoff) + 1;
  // level[k] = sum over k_1 < ... < k_i = k of the first i factors
  std::vector<Real> level(len, Real(bits));
  for (long k = 1; k <= cutoff; ++k) {
    level[static_cast<std::size_t>(k)] = inverse_power(k, idx.parts[0], bits);
  }
  for (std::size_t i = 1; i < idx.parts.size(); ++i) {
    Real prefix(bits);
    std::vector<Real> next(len, Real(bits));
    for (long k = 1; k <= cutoff; ++k) {
      next[static_cast<std::size_t>(k)] = prefix * inverse_power(k, idx.parts[i], bits);
      prefix += level[static_cast<std::size_t>(k)];
    }
    level.swap(next);
  }
  Real sum(bits);
  for (const Real& v : level) {
    sum += v;
  }

  // tail over k_d > K: inner sums are <= n/(n-1) for n >= 2 and <= 1 + ln x for n = 1
  const double b = idx.parts.back();
  int c = 0;
  double inner = 1.0;
  for (std::size_t i = 0; i + 1 < idx.parts.size(); ++i) {
    if (idx.parts[i] == 1) {
      ++c;
    } else {
      inner *= idx.parts[i] / (idx.parts[i] - 1.0);
    }
  }
  const double lk = 1.0 + std::log(static_cast<double>(cutoff));
  double integral = 0.0;
  double falling = 1.0;
  for (int i = 0; i <= c; ++i) {
    integral += falling * std::pow(lk, c - i) / std::pow(b - 1.0, i + 1);
    falling *= c - i;
  }
  integral *= std::pow(static_cast<double>(cutoff), 1.0 - b);
  const double tail = inner * integral;
  BigReal out{sum, tail + static_cast<double>(cutoff) * std::fabs(sum.to_double()) * std::ldexp(1.0, -static_cast<int>(bits) + 4), 0};
  out.prec = std::max(1, static_cast<int>(std::floor(-std::log10(out.err))));
  return out;
}

BigReal multiphi(const AltIndex& idx, int prec, double cutoff_scale) {
  if (idx.m < 1 || idx.n < 1) {
    throw InputError("multiphi parts must be positive");
  }
  // phi(m, n) = I(0; 1 0^(m-1) (-1) 0^(n-1); 1)
  std::vector<int> word{1};
  word.insert(word.end(), static_cast<std::size_t>(idx.m - 1), 0);
  word.push_back(-1);
  word.insert(word.end(), static_cast<std::size_t>(idx.n - 1), 0);
  return iterated_integral(word, prec, cutoff_scale);
}

BigReal stuffle_residual(int m, int n, int prec) {
  if (m < 2 || n < 2) {
    throw DomainError("stuffle check requires m, n >= 2");
  }
  const int p = prec + 2;
  const BigReal lhs = zeta(static_cast<long>(m), p) * zeta(static_cast<long>(n), p);
  const BigReal rhs = mzv({{m, n}}, p) + mzv({{n, m}}, p) + zeta(static_cast<long>(m + n), p);
  BigReal r = lhs - rhs;
  r.prec = prec;
  r.value = abs(r.value);
  return r;
}

BigReal p35_combination(int prec) {
  const int p = prec + 3;
  const BigReal z8 = zeta(8, p);
  const BigReal z35 = mzv({{3, 5}}, p);
  const BigReal z3 = zeta(3, p);
  const BigReal z5 = zeta(5, p);
  BigReal r = Rational(2, 5) * (Rational(29) * z8 - Rational(12) * z35) - Rational(9) * (z5 * z3);
  r.prec = prec;
  return certify(r, "p35_combination");
}

}  // namespace eulerp
