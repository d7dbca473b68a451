#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eulerp/numkernel.hpp"

namespace eulerp {

/// Composition (n_1, ..., n_d) for zeta(n_1, ..., n_d) = sum_{0<k_1<...<k_d} prod k_i^-n_i.
struct MzvIndex {
  std::vector<int> parts;

  int weight() const;
  int depth() const { return static_cast<int>(parts.size()); }
  /// Last part >= 2.
  bool admissible() const;
  std::string str() const;
  /// "3,5" or "(3, 5)".
  static MzvIndex parse(std::string_view text);
};

/// (m, n) for phi(m, n) = sum_{0<k<l} (-1)^(k+l) k^-m l^-n.
struct AltIndex {
  int m = 1;
  int n = 1;
};

/// I(0; w_1, ..., w_n; 1) = integral over 0 < t_1 < ... < t_n < 1 of prod dt_i / (t_i - w_i),
/// letters in {-1, 0, 1}. Requires w_1 != 0 and w_n != 1.
///
/// The path is split at 1/2 and both halves are summed as power series with
/// ratio 1/2; `cutoff_scale` stretches the number of series terms.
BigReal iterated_integral(const std::vector<int>& word, int prec, double cutoff_scale = 1.0);

BigReal mzv(const MzvIndex& idx, int prec);

/// Truncated nested sum over k_d <= K; err holds the tail bound.
BigReal mzv_bruteforce(const MzvIndex& idx, long cutoff);

BigReal multiphi(const AltIndex& idx, int prec, double cutoff_scale = 1.0);

/// |zeta(m) zeta(n) - zeta(m,n) - zeta(n,m) - zeta(m+n)|.
BigReal stuffle_residual(int m, int n, int prec);

/// (2/5)(29 zeta(8) - 12 zeta(3,5)) - 9 zeta(5) zeta(3).
BigReal p35_combination(int prec);

}  // namespace eulerp
