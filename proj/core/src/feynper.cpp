#include "eulerp/feynper.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <gmpxx.h>
#include <json.hpp>

#include "eulerp/errors.hpp"

namespace eulerp {

namespace {

constexpr int kMaxTreeEdges = 24;
constexpr int kMaxSubsetEdges = 16;

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

/// Loop number of the subgraph spanned by the edges in `mask`.
int subset_loops(const MultiGraph& g, std::uint32_t mask) {
  Dsu d(g.vertices());
  int size = 0;
  int rank = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (mask >> e & 1U) {
      ++size;
      const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
      rank += d.unite(u, v) ? 1 : 0;
    }
  }
  return size - rank;
}

void require_connected(const MultiGraph& g) {
  if (!g.connected()) {
    throw Disconnected("graph is not connected");
  }
}

}  // namespace

MultiGraph::MultiGraph(int vertices, std::vector<std::pair<int, int>> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  if (vertices_ < 1) {
    throw InputError("a graph needs at least one vertex");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& [u, v] = edges_[i];
    if (u < 0 || v < 0 || u >= vertices_ || v >= vertices_) {
      throw InputError("edge " + std::to_string(i) + " has an endpoint outside 0.." + std::to_string(vertices_ - 1));
    }
    if (u == v) {
      throw InputError("edge " + std::to_string(i) + " is a self-loop");
    }
  }
}

MultiGraph MultiGraph::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_number_integer()) {
    throw SchemaError("graph JSON needs an integer field 'vertices'");
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw SchemaError("graph JSON needs an array field 'edges'");
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw SchemaError("edge " + std::to_string(i) + " must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return MultiGraph(j["vertices"].get<int>(), std::move(edges));
}

MultiGraph MultiGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open graph file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

bool MultiGraph::connected() const {
  Dsu d(vertices_);
  int joined = 0;
  for (const auto& [u, v] : edges_) {
    joined += d.unite(u, v) ? 1 : 0;
  }
  return joined == vertices_ - 1;
}

std::string MultiGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = vertices_;
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : edges_) {
    j["edges"].push_back({u, v});
  }
  return j.dump();
}

MultiGraph MultiGraph::deleted(int e) const {
  if (e < 0 || e >= edge_count()) {
    throw InputError("no edge " + std::to_string(e));
  }
  MultiGraph r;
  r.vertices_ = vertices_;
  r.edges_ = edges_;
  r.edges_.erase(r.edges_.begin() + e);
  return r;
}

MultiGraph MultiGraph::contracted(int e) const {
  if (e < 0 || e >= edge_count()) {
    throw InputError("no edge " + std::to_string(e));
  }
  const auto [keep, gone] = std::minmax(edges_[static_cast<std::size_t>(e)].first, edges_[static_cast<std::size_t>(e)].second);
  if (keep == gone) {
    throw InputError("cannot contract a self-loop");
  }
  auto relabel = [&](int x) {
    if (x == gone) {
      return keep;
    }
    return x > gone ? x - 1 : x;
  };
  MultiGraph r;
  r.vertices_ = vertices_ - 1;
  for (int i = 0; i < edge_count(); ++i) {
    if (i != e) {
      const auto& [u, v] = edges_[static_cast<std::size_t>(i)];
      r.edges_.emplace_back(relabel(u), relabel(v));
    }
  }
  return r;
}

namespace graphs {

MultiGraph bubble() { return MultiGraph(2, {{0, 1}, {0, 1}}); }
MultiGraph triangle() { return MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}}); }
MultiGraph k4() { return MultiGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

MultiGraph wheel(int spokes) {
  if (spokes < 3) {
    throw InputError("a wheel needs at least 3 spokes");
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= spokes; ++i) {
    edges.emplace_back(0, i);
  }
  for (int i = 1; i <= spokes; ++i) {
    edges.emplace_back(i, i % spokes + 1);
  }
  return MultiGraph(spokes + 1, std::move(edges));
}

MultiGraph doubled_triangle() { return MultiGraph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}}); }

MultiGraph by_name(const std::string& name) {
  if (name == "bubble") {
    return bubble();
  }
  if (name == "triangle") {
    return triangle();
  }
  if (name == "k4" || name == "w3") {
    return k4();
  }
  if (name == "w4") {
    return wheel(4);
  }
  if (name == "w5") {
    return wheel(5);
  }
  if (name == "doubled-triangle") {
    return doubled_triangle();
  }
  throw InputError("unknown graph '" + name + "'");
}

}  // namespace graphs

int loop_number(const MultiGraph& g) {
  require_connected(g);
  return g.edge_count() - g.vertices() + 1;
}

SpanningTrees spanning_trees(const MultiGraph& g) {
  require_connected(g);
  if (g.edge_count() > kMaxTreeEdges) {
    throw TooLarge("spanning tree enumeration is capped at " + std::to_string(kMaxTreeEdges) + " edges");
  }
  SpanningTrees out;
  const int need = g.vertices() - 1;
  const int n = g.edge_count();
  std::function<void(int, int, std::uint32_t, const Dsu&)> walk = [&](int e, int taken, std::uint32_t mask,
                                                                      const Dsu& d) {
    if (taken == need) {
      out.trees.push_back(mask);
      return;
    }
    if (e == n || n - e < need - taken) {
      return;
    }
    const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
    Dsu with = d;
    if (with.unite(u, v)) {
      walk(e + 1, taken + 1, mask | (1U << e), with);
    }
    walk(e + 1, taken, mask, d);
  };
  walk(0, 0, 0U, Dsu(g.vertices()));
  out.count = static_cast<long>(out.trees.size());
  return out;
}

long matrix_tree_count(const MultiGraph& g) {
  const int m = g.vertices() - 1;
  if (m == 0) {
    return 1;
  }
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(m), std::vector<mpz_class>(static_cast<std::size_t>(m), 0));
  for (const auto& [u, v] : g.edges()) {
    if (u == v) {
      continue;
    }
    if (u > 0) {
      a[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(u - 1)] += 1;
    }
    if (v > 0) {
      a[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(v - 1)] += 1;
    }
    if (u > 0 && v > 0) {
      a[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)] -= 1;
      a[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(u - 1)] -= 1;
    }
  }
  // Bareiss fraction-free elimination
  mpz_class prev = 1;
  int sign = 1;
  const auto sz = static_cast<std::size_t>(m);
  for (std::size_t k = 0; k + 1 < sz; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < sz && a[p][k] == 0) {
        ++p;
      }
      if (p == sz) {
        return 0;
      }
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < sz; ++i) {
      for (std::size_t j = k + 1; j < sz; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  mpz_class det = sign * a[sz - 1][sz - 1];
  if (!det.fits_slong_p()) {
    throw TooLarge("spanning tree count does not fit in a long");
  }
  return det.get_si();
}

int GraphPolynomial::degree() const {
  int d = -1;
  for (const auto& [exps, c] : terms) {
    const int t = std::accumulate(exps.begin(), exps.end(), 0);
    if (d >= 0 && t != d) {
      return -1;
    }
    d = t;
  }
  return d;
}

double GraphPolynomial::evaluate(const std::vector<double>& alpha) const {
  if (static_cast<int>(alpha.size()) != variables) {
    throw InputError("wrong number of variables");
  }
  double s = 0.0;
  for (const auto& [exps, c] : terms) {
    double t = static_cast<double>(c);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (int k = 0; k < exps[i]; ++k) {
        t *= alpha[i];
      }
    }
    s += t;
  }
  return s;
}

std::string GraphPolynomial::str() const {
  if (terms.empty()) {
    return "0";
  }
  std::string s;
  // descending lexicographic order lists a1*a2 before a1*a3
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [exps, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (int k = 0; k < exps[i]; ++k) {
        mono += (mono.empty() ? "" : "*") + ("a" + std::to_string(i + 1));
      }
    }
    if (mono.empty()) {
      mono = "1";
    }
    if (c != 1) {
      mono = std::to_string(c) + "*" + mono;
    }
    s += (s.empty() ? "" : " + ") + mono;
  }
  return s;
}

GraphPolynomial kirchhoff_polynomial(const MultiGraph& g) {
  const SpanningTrees st = spanning_trees(g);
  GraphPolynomial p;
  p.variables = g.edge_count();
  for (std::uint32_t t : st.trees) {
    std::vector<int> exps(static_cast<std::size_t>(g.edge_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
      exps[static_cast<std::size_t>(e)] = (t >> e & 1U) ? 0 : 1;
    }
    p.terms[exps] += 1;
  }
  return p;
}

bool deletion_contraction_holds(const MultiGraph& g, int e) {
  require_connected(g);
  const MultiGraph del = g.deleted(e);
  if (!del.connected()) {
    throw InputError("edge " + std::to_string(e) + " is a bridge");
  }
  const GraphPolynomial psi = kirchhoff_polynomial(g);
  const GraphPolynomial pd = kirchhoff_polynomial(del);
  const GraphPolynomial pc = kirchhoff_polynomial(g.contracted(e));
  GraphPolynomial rhs;
  rhs.variables = g.edge_count();
  auto lift = [&](const std::vector<int>& exps, int at_e) {
    std::vector<int> full(exps);
    full.insert(full.begin() + e, at_e);
    return full;
  };
  for (const auto& [exps, c] : pd.terms) {
    rhs.terms[lift(exps, 1)] += c;
  }
  for (const auto& [exps, c] : pc.terms) {
    rhs.terms[lift(exps, 0)] += c;
  }
  return rhs == psi;
}

bool is_primitive_log_divergent(const MultiGraph& g) {
  require_connected(g);
  const int n = g.edge_count();
  if (n > kMaxSubsetEdges) {
    throw TooLarge("subgraph enumeration is capped at " + std::to_string(kMaxSubsetEdges) + " edges");
  }
  const int h = loop_number(g);
  if (h < 1 || n != 2 * h) {
    return false;
  }
  const std::uint32_t full = (1U << n) - 1;
  for (std::uint32_t s = 1; s < full; ++s) {
    const int hs = subset_loops(g, s);
    if (hs >= 1 && std::popcount(s) <= 2 * hs) {
      return false;
    }
  }
  return true;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in the open interval (0, 1) with 53 random bits.
double open_unit(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; }

struct Moments {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) {
      return;
    }
    const long total = n + o.n;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
    n = total;
  }
};

constexpr int kShards = 64;

using SampleFn = std::function<double(std::mt19937_64&, long shard, long index)>;

/// Fixed shards with derived seeds, reduced in shard order.
Moments run_shards(long samples, std::uint64_t seed, unsigned threads, const SampleFn& draw) {
  std::vector<Moments> parts(kShards);
  std::vector<std::exception_ptr> errors(kShards);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next++; s < kShards; s = next++) {
      const long count = samples / kShards + (s < samples % kShards ? 1 : 0);
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(s) + 1)));
      try {
        for (long i = 0; i < count; ++i) {
          parts[static_cast<std::size_t>(s)].push(draw(rng, s, i));
        }
      } catch (...) {
        errors[static_cast<std::size_t>(s)] = std::current_exception();
      }
    }
  };
  if (threads == 0) {
    threads = std::max(1U, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, kShards);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  Moments total;
  for (const auto& p : parts) {
    total.merge(p);
  }
  return total;
}

struct TreeTable {
  /// Complement edges of each spanning tree.
  std::vector<std::vector<int>> cotrees;
};

TreeTable tree_table(const MultiGraph& g) {
  TreeTable t;
  for (std::uint32_t tree : spanning_trees(g).trees) {
    std::vector<int> co;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!(tree >> e & 1U)) {
        co.push_back(e);
      }
    }
    t.cotrees.push_back(std::move(co));
  }
  return t;
}

struct HeppTables {
  std::vector<double> j;      // J(S)
  std::vector<int> omega;     // |S| - 2 h(S)
  std::vector<int> loops;     // h(S)
  double w = 0.0;
};

HeppTables hepp_tables(const MultiGraph& g) {
  const int n = g.edge_count();
  const std::uint32_t full = (1U << n) - 1;
  HeppTables t;
  t.j.assign(std::size_t{full} + 1, 0.0);
  t.omega.assign(std::size_t{full} + 1, 0);
  t.loops.assign(std::size_t{full} + 1, 0);
  t.j[0] = 1.0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    t.loops[s] = subset_loops(g, s);
    t.omega[s] = std::popcount(s) - 2 * t.loops[s];
    if (s == full) {
      break;
    }
    double acc = 0.0;
    for (int e = 0; e < n; ++e) {
      if (s >> e & 1U) {
        acc += t.j[s & ~(1U << e)];
      }
    }
    t.j[s] = acc / t.omega[s];
  }
  for (int e = 0; e < n; ++e) {
    t.w += t.j[full & ~(1U << e)];
  }
  return t;
}

int pick_edge(std::uint32_t s, const std::vector<double>& j, int n, double u) {
  double total = 0.0;
  for (int e = 0; e < n; ++e) {
    if (s >> e & 1U) {
      total += j[s & ~(1U << e)];
    }
  }
  double target = u * total;
  int last = -1;
  for (int e = 0; e < n; ++e) {
    if (s >> e & 1U) {
      last = e;
      target -= j[s & ~(1U << e)];
      if (target < 0.0) {
        return e;
      }
    }
  }
  return last;
}

[[noreturn]] void non_finite(long shard, long index, const std::vector<double>& alpha, double value) {
  std::ostringstream msg;
  msg << "non-finite integrand " << value << " at shard " << shard << " sample " << index << ", alpha = (";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    msg << (i ? ", " : "") << alpha[i];
  }
  msg << ")";
  throw NonFiniteSample(msg.str());
}

}  // namespace

double hepp_bound(const MultiGraph& g) {
  if (!is_primitive_log_divergent(g)) {
    throw NotPrimitive("graph is not primitive log-divergent");
  }
  return hepp_tables(g).w;
}

PeriodEstimate period_mc(const MultiGraph& g, const McOptions& options) {
  if (!is_primitive_log_divergent(g)) {
    throw NotPrimitive("graph is not primitive log-divergent");
  }
  if (options.samples < 2) {
    throw InputError("period_mc needs at least 2 samples");
  }
  const int n = g.edge_count();
  const TreeTable trees = tree_table(g);
  Moments m;
  if (options.sampler == Sampler::Plain) {
    m = run_shards(options.samples, options.seed, options.threads, [&](std::mt19937_64& rng, long shard, long i) {
      std::vector<double> alpha(static_cast<std::size_t>(n), 1.0);
      double jac = 1.0;
      for (int e = 0; e + 1 < n; ++e) {
        const double x = open_unit(rng);
        alpha[static_cast<std::size_t>(e)] = x / (1.0 - x);
        jac /= (1.0 - x) * (1.0 - x);
      }
      double psi = 0.0;
      for (const auto& co : trees.cotrees) {
        double t = 1.0;
        for (int e : co) {
          t *= alpha[static_cast<std::size_t>(e)];
        }
        psi += t;
      }
      const double v = jac / (psi * psi);
      if (!std::isfinite(v)) {
        non_finite(shard, i, alpha, v);
      }
      return v;
    });
  } else {
    const HeppTables t = hepp_tables(g);
    const std::uint32_t full = (1U << n) - 1;
    m = run_shards(options.samples, options.seed, options.threads, [&](std::mt19937_64& rng, long shard, long i) {
      // log alpha along a random flag: the largest edge has alpha = 1, each later one
      // shrinks by t_k = u^(1/omega(S_k))
      std::vector<double> log_alpha(static_cast<std::size_t>(n), 0.0);
      std::uint32_t s = full & ~(1U << pick_edge(full, t.j, n, open_unit(rng)));
      double cumulative = 0.0;
      double loop_weight = 0.0;
      while (s != 0) {
        const double log_t = std::log(open_unit(rng)) / t.omega[s];
        cumulative += log_t;
        loop_weight += t.loops[s] * log_t;
        const int e = pick_edge(s, t.j, n, open_unit(rng));
        log_alpha[static_cast<std::size_t>(e)] = cumulative;
        s &= ~(1U << e);
      }
      double r = 0.0;
      for (const auto& co : trees.cotrees) {
        double sum = -loop_weight;
        for (int e : co) {
          sum += log_alpha[static_cast<std::size_t>(e)];
        }
        r += std::exp(sum);
      }
      const double v = t.w / (r * r);
      if (!std::isfinite(v) || r < 0.5) {
        std::vector<double> alpha(log_alpha.size());
        std::transform(log_alpha.begin(), log_alpha.end(), alpha.begin(), [](double x) { return std::exp(x); });
        non_finite(shard, i, alpha, v);
      }
      return v;
    });
  }
  PeriodEstimate est;
  est.estimate = m.mean;
  est.samples = m.n;
  est.seed = options.seed;
  est.std_error = std::sqrt(m.m2 / static_cast<double>(m.n - 1) / static_cast<double>(m.n));
  return est;
}

std::vector<SelfTestEntry> integrator_selftest(long samples, std::uint64_t seed) {
  if (samples < 10'000) {
    throw InputError("integrator self-test needs at least 10^4 samples");
  }
  std::vector<SelfTestEntry> out;
  auto finish = [&](std::string name, const Moments& m, double truth) {
    SelfTestEntry e;
    e.name = std::move(name);
    e.estimate = m.mean;
    e.std_error = std::sqrt(m.m2 / static_cast<double>(m.n - 1) / static_cast<double>(m.n));
    e.truth = truth;
    e.pass = std::fabs(e.estimate - truth) <= 3.0 * e.std_error ||
             (e.std_error == 0.0 && std::fabs(e.estimate - truth) <= 1e-15 * std::fabs(truth));
    out.push_back(std::move(e));
  };
  for (const auto& [k, n] : {std::pair{2, 2}, std::pair{5, 3}, std::pair{1, 7}}) {
    const double box = std::max(1.0, static_cast<double>(k));
    // k^(1/n) is the length of {0 < x : x^n < k}
    const Moments m = run_shards(samples, seed + static_cast<std::uint64_t>(k * 100 + n), 0,
                                 [&](std::mt19937_64& rng, long, long) {
                                   const double x = box * open_unit(rng);
                                   return std::pow(x, n) < k ? box : 0.0;
                                 });
    finish(std::to_string(k) + "^(1/" + std::to_string(n) + ")", m, std::pow(static_cast<double>(k), 1.0 / n));
  }
  const Moments disk = run_shards(samples, seed + 1, 0, [](std::mt19937_64& rng, long, long) {
    const double x = 2.0 * open_unit(rng) - 1.0;
    const double y = 2.0 * open_unit(rng) - 1.0;
    return x * x + y * y <= 1.0 ? 4.0 : 0.0;
  });
  finish("pi", disk, 3.14159265358979323846);
  return out;
}

Snap snap_to_multiple(const PeriodEstimate& est, double base) {
  if (!(base > 0.0)) {
    throw DomainError("snap base must be positive");
  }
  Snap s;
  s.multiple = std::lround(est.estimate / base);
  const double gap = std::fabs(est.estimate - static_cast<double>(s.multiple) * base);
  if (est.std_error > 0.0) {
    s.sigmas = gap / est.std_error;
  } else {
    s.sigmas = gap == 0.0 ? 0.0 : HUGE_VAL;
  }
  return s;
}

}  // namespace eulerp
