#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eulerp/numkernel.hpp"

namespace eulerp {

/// Multigraph with a fixed edge order; edge i carries the Schwinger parameter alpha_(i+1).
class MultiGraph {
 public:
  MultiGraph(int vertices, std::vector<std::pair<int, int>> edges);

  /// JSON: {"vertices": 4, "edges": [[0,1], ...]} with 0-based endpoints.
  static MultiGraph from_json(std::string_view text);
  static MultiGraph load(const std::string& path);

  int vertices() const { return vertices_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool connected() const;
  std::string to_json() const;

  /// G with edge e removed.
  MultiGraph deleted(int e) const;
  /// G with edge e contracted; edges parallel to e become self-loops.
  MultiGraph contracted(int e) const;

 private:
  MultiGraph() = default;
  int vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

namespace graphs {
MultiGraph bubble();
MultiGraph triangle();
MultiGraph k4();
MultiGraph wheel(int spokes);
/// Triangle with its first edge doubled.
MultiGraph doubled_triangle();
/// Builtin by name: bubble, triangle, k4, w3, w4, w5, doubled-triangle.
MultiGraph by_name(const std::string& name);
}  // namespace graphs

/// h = |E| - |V| + 1.
int loop_number(const MultiGraph& g);

struct SpanningTrees {
  long count = 0;
  /// Bit i set when edge i belongs to the tree.
  std::vector<std::uint32_t> trees;
};

/// Backtracking enumeration, |E| <= 24.
SpanningTrees spanning_trees(const MultiGraph& g);

/// Weighted Laplacian minor determinant (exact integer arithmetic).
long matrix_tree_count(const MultiGraph& g);

/// Integer polynomial in alpha_1..alpha_n, exponent vector -> coefficient.
struct GraphPolynomial {
  int variables = 0;
  std::map<std::vector<int>, long> terms;

  /// Common total degree, or -1 if not homogeneous.
  int degree() const;
  double evaluate(const std::vector<double>& alpha) const;
  std::string str() const;
  friend bool operator==(const GraphPolynomial&, const GraphPolynomial&) = default;
};

/// Psi_G = sum over spanning trees T of prod_{e not in T} alpha_e.
GraphPolynomial kirchhoff_polynomial(const MultiGraph& g);

/// Psi_G == alpha_e Psi_(G\e) + Psi_(G/e) for a non-bridge, non-loop edge e.
bool deletion_contraction_holds(const MultiGraph& g, int e);

/// n = 2h and n_S > 2 h_S for every proper edge subset S with loops; |E| <= 16.
bool is_primitive_log_divergent(const MultiGraph& g);

enum class Sampler {
  /// Importance sampling over Hepp sectors; the weight is bounded.
  Hepp,
  /// alpha_i = x_i / (1 - x_i) on the section alpha_n = 1.
  Plain,
};

struct PeriodEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  long samples = 1'000'000;
  std::uint64_t seed = 42;
  Sampler sampler = Sampler::Hepp;
  /// 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

/// Monte-Carlo estimate of the period  integral of Omega / Psi_G^2.
PeriodEstimate period_mc(const MultiGraph& g, const McOptions& options);

/// Sum over Hepp sectors of prod 1/omega along the flag; the Hepp sampler's weight bound.
double hepp_bound(const MultiGraph& g);

struct SelfTestEntry {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double truth = 0.0;
  bool pass = false;
};

/// k^(1/n) for (2,2), (5,3), (1,7) and pi from the unit disk.
std::vector<SelfTestEntry> integrator_selftest(long samples, std::uint64_t seed);

struct Snap {
  long multiple = 0;
  double sigmas = 0.0;
};

/// Nearest integer m to estimate / base and |estimate - m base| / stderr.
Snap snap_to_multiple(const PeriodEstimate& est, double base);

}  // namespace eulerp
