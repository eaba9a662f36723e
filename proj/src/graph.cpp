#include "hafnian/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "expansion_eval.hpp"
#include "hafnian/rng.hpp"

namespace hafnian {

GraphEdgeList::GraphEdgeList(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n) {
  if (n == 0) throw InputError("graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw InputError("duplicate edge");
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool GraphEdgeList::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

SymMatrix GraphEdgeList::adjacency() const {
  SymMatrix a(n_);
  for (auto [u, v] : edges_) a.set(u, v, 1.0);
  return a;
}

GraphEdgeList GraphEdgeList::with_edge(std::size_t u, std::size_t v) const {
  auto e = edges_;
  e.emplace_back(u, v);
  return GraphEdgeList(n_, std::move(e));
}

namespace {

std::size_t parse_size(const std::string& tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw InputError("not a nonnegative integer: '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

}  // namespace

GraphEdgeList read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty graph file");
  auto header = split(line);
  if (header.size() != 2) throw InputError("first line must be 'n m'");
  const std::size_t n = parse_size(header[0]);
  const std::size_t m = parse_size(header[1]);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!std::getline(in, line)) throw InputError("graph file ended after " + std::to_string(k) + " edges");
    auto toks = split(line);
    if (toks.size() != 2) throw InputError("edge line must be 'u v'");
    edges.emplace_back(parse_size(toks[0]), parse_size(toks[1]));
  }
  while (std::getline(in, line)) {
    if (!split(line).empty()) throw InputError("trailing data after the last edge");
  }
  return GraphEdgeList(n, std::move(edges));
}

GraphEdgeList read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const GraphEdgeList& g) {
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

GraphEdgeList support_graph(const SymMatrix& a) { return large_entries_graph(a, 0.0); }

GraphEdgeList large_entries_graph(const SymMatrix& a, double theta) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a(i, j) > theta) edges.emplace_back(i, j);
    }
  }
  return GraphEdgeList(a.size(), std::move(edges));
}

namespace {

void check_set(const GraphEdgeList& g, const VertexSet& j) {
  for (std::size_t v : j) {
    if (v >= g.n()) throw InputError("vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

VertexSet boundary(const GraphEdgeList& g, const VertexSet& j) {
  check_set(g, j);
  std::vector<char> in_j(g.n(), 0), hit(g.n(), 0);
  for (std::size_t v : j) in_j[v] = 1;
  for (std::size_t v : j) {
    for (std::size_t u : g.neighbors(v)) {
      if (!in_j[u]) hit[u] = 1;
    }
  }
  VertexSet out;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (hit[v]) out.push_back(v);
  }
  return out;
}

std::size_t connected_components_within(const GraphEdgeList& g, const VertexSet& j) {
  check_set(g, j);
  std::vector<char> in_j(g.n(), 0), seen(g.n(), 0);
  for (std::size_t v : j) in_j[v] = 1;
  std::size_t components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s : j) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : g.neighbors(v)) {
        if (in_j[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return components;
}

std::size_t min_degree(const GraphEdgeList& g) {
  std::size_t best = g.n();
  for (std::size_t v = 0; v < g.n(); ++v) best = std::min(best, g.degree(v));
  return best;
}

std::string to_string(CheckMode mode) { return mode == CheckMode::exhaustive ? "exhaustive" : "sampled"; }

CheckMode check_mode_from_string(const std::string& s) {
  if (s == "exhaustive") return CheckMode::exhaustive;
  if (s == "sampled") return CheckMode::sampled;
  throw InputError("unknown check mode '" + s + "'");
}

bool expansion_inequality_holds(const GraphEdgeList& g, const VertexSet& j, double kappa, double component_weight) {
  const double bnd = static_cast<double>(boundary(g, j).size());
  const double con = static_cast<double>(connected_components_within(g, j));
  return bnd - component_weight * con >= kappa * static_cast<double>(j.size());
}

std::uint64_t subsets_up_to(std::size_t n, std::size_t level) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, k)
  for (std::size_t k = 1; k <= level && k <= n; ++k) {
    // C(n, k) = C(n, k-1) * (n - k + 1) / k, exact in 128-bit before saturation.
    const unsigned __int128 next = static_cast<unsigned __int128>(binom) * (n - k + 1) / k;
    if (next > UINT64_MAX) return UINT64_MAX;
    binom = static_cast<std::uint64_t>(next);
    if (total > UINT64_MAX - binom) return UINT64_MAX;
    total += binom;
  }
  return total;
}

namespace {

ExpansionReport exhaustive_check(const GraphEdgeList& g, const detail::ExpansionEvaluator& eval, double kappa,
                                 double weight, std::size_t level) {
  ExpansionReport rep;
  rep.kappa = kappa;
  rep.component_weight = weight;
  rep.level = level;
  rep.checked_mode = CheckMode::exhaustive;
  const std::size_t n = g.n();
  std::vector<std::size_t> idx;
  detail::ExpansionEvaluator::Scratch scratch(eval);
  for (std::size_t k = 1; k <= level; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
      ++rep.sets_checked;
      if (!eval.holds(idx, kappa, weight, scratch)) {
        rep.holds = false;
        rep.witness = VertexSet(idx.begin(), idx.end());
        return rep;
      }
      // Next k-combination in lexicographic order.
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t t = pos; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return rep;
}

// Deterministic candidate sets likely to violate the inequality: sparse,
// fragmented sets first.
std::vector<VertexSet> adversarial_candidates(const GraphEdgeList& g, std::size_t level) {
  const std::size_t n = g.n();
  std::vector<VertexSet> out;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.degree(a) < g.degree(b); });

  for (std::size_t v : order) out.push_back({v});
  for (std::size_t v : order) {
    const auto& nb = g.neighbors(v);
    if (!nb.empty() && nb.size() <= level) out.push_back(nb);
    VertexSet closed = nb;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    if (closed.size() <= level) out.push_back(closed);
  }
  // Greedy independent sets grown from each start vertex, low degree first.
  std::vector<char> blocked(n);
  for (std::size_t start : order) {
    std::fill(blocked.begin(), blocked.end(), 0);
    std::vector<std::size_t> grown;
    auto take = [&](std::size_t v) {
      grown.push_back(v);
      blocked[v] = 1;
      for (std::size_t u : g.neighbors(v)) blocked[u] = 1;
    };
    take(start);
    for (std::size_t v : order) {
      if (grown.size() >= level) break;
      if (!blocked[v]) take(v);
    }
    for (std::size_t len = 2; len <= grown.size(); ++len) {
      VertexSet prefix(grown.begin(), grown.begin() + static_cast<std::ptrdiff_t>(len));
      std::sort(prefix.begin(), prefix.end());
      out.push_back(std::move(prefix));
    }
  }
  return out;
}

}  // namespace

ExpansionReport check_expansion(const GraphEdgeList& g, double kappa, double component_weight, std::size_t level,
                                CheckMode mode, std::uint64_t budget, std::uint64_t seed) {
  const std::size_t n = g.n();
  if (level == 0) throw InputError("expansion level must be positive");
  if (level >= n) throw InputError("expansion level must be smaller than the vertex count");
  const std::uint64_t total = subsets_up_to(n, level);
  detail::ExpansionEvaluator eval(g);

  if (mode == CheckMode::exhaustive) {
    if (total > budget) {
      throw InputError("exhaustive check needs " + std::to_string(total) + " sets, over the budget of " +
                       std::to_string(budget));
    }
    return exhaustive_check(g, eval, kappa, component_weight, level);
  }
  if (total <= budget) return exhaustive_check(g, eval, kappa, component_weight, level);

  ExpansionReport rep;
  rep.kappa = kappa;
  rep.component_weight = component_weight;
  rep.level = level;
  rep.checked_mode = CheckMode::sampled;
  detail::ExpansionEvaluator::Scratch scratch(eval);
  for (const auto& cand : adversarial_candidates(g, level)) {
    ++rep.sets_checked;
    if (!eval.holds(cand, kappa, component_weight, scratch)) {
      rep.holds = false;
      rep.witness = cand;
      return rep;
    }
  }
  CounterStream rng(seed, 0x45585041ull);  // stream id: "EXPA"
  std::vector<std::size_t> pool(n);
  VertexSet set;
  for (std::uint64_t s = 0; s < budget; ++s) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(level));
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t pick = t + static_cast<std::size_t>(rng.below(n - t));
      std::swap(pool[t], pool[pick]);
    }
    set.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(set.begin(), set.end());
    ++rep.sets_checked;
    if (!eval.holds(set, kappa, component_weight, scratch)) {
      rep.holds = false;
      rep.witness = set;
      return rep;
    }
  }
  return rep;
}

ExpansionReport check_strong_expansion(const GraphEdgeList& g, double kappa, std::size_t level, CheckMode mode,
                                       std::uint64_t budget, std::uint64_t seed) {
  return check_expansion(g, kappa, 1.0, level, mode, budget, seed);
}

ExpansionReport check_weak_expansion(const GraphEdgeList& g, double kappa, double delta, CheckMode mode,
                                     std::uint64_t budget, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  return check_expansion(g, kappa, 1.0 - delta, g.n() / 2, mode, budget, seed);
}

}  // namespace hafnian
