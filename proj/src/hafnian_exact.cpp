#include "hafnian/hafnian_exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace hafnian {

namespace {

class SubsetHafnian {
 public:
  SubsetHafnian(std::vector<double> entries, std::size_t n) : a_(std::move(entries)), n_(n) {
    memo_.reserve(std::size_t{1} << std::min<std::size_t>(n, 20));
  }

  double operator()(std::uint64_t mask) {
    if (mask == 0) return 1.0;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const auto first = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint64_t rest = mask & ~(std::uint64_t{1} << first);
    const double* row = &a_[first * n_];
    double total = 0.0;
    for (std::uint64_t bits = rest; bits != 0; bits &= bits - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(bits));
      if (row[j] == 0.0) continue;
      total += row[j] * (*this)(rest & ~(std::uint64_t{1} << j));
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  std::vector<double> a_;
  std::size_t n_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

HafnianValue hafnian_exact(const SymMatrix& a, std::size_t cap) {
  const std::size_t n = a.size();
  if (n % 2 != 0) throw InputError("hafnian needs an even dimension, got " + std::to_string(n));
  if (n > cap || n > 63) throw InputError("dimension " + std::to_string(n) + " exceeds the exact hafnian cap");

  const double scale = a.max_entry();
  if (scale == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0, n};
  std::vector<double> entries(a.data().begin(), a.data().end());
  if (scale != 1.0) {
    for (double& v : entries) v /= scale;
  }
  SubsetHafnian haf(std::move(entries), n);
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const double reduced = haf(full);
  if (reduced == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0, n};

  const double half = static_cast<double>(n / 2);
  HafnianValue out{std::log(reduced) + half * std::log(scale), std::nullopt, n};
  const double value = scale == 1.0 ? reduced : reduced * std::pow(scale, half);
  if (std::isnormal(value)) out.value_if_small = value;
  return out;
}

HafnianValue count_perfect_matchings(const GraphEdgeList& g, std::size_t cap) {
  return hafnian_exact(g.adjacency(), cap);
}

std::vector<long> maximum_matching(const GraphEdgeList& g) {
  // Edmonds' blossom algorithm, one BFS per free vertex.
  const std::size_t n = g.n();
  std::vector<long> match(n, -1), parent(n, -1);
  std::vector<std::size_t> base(n);
  std::vector<char> used(n), blossom(n);
  std::deque<std::size_t> queue;

  auto lca = [&](std::size_t a, std::size_t b) {
    std::vector<char> seen(n, 0);
    for (;;) {
      a = base[a];
      seen[a] = 1;
      if (match[a] == -1) break;
      a = static_cast<std::size_t>(parent[static_cast<std::size_t>(match[a])]);
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = static_cast<std::size_t>(parent[static_cast<std::size_t>(match[b])]);
    }
  };
  auto mark_path = [&](std::size_t v, std::size_t b, std::size_t child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[static_cast<std::size_t>(match[v])]] = 1;
      parent[v] = static_cast<long>(child);
      child = static_cast<std::size_t>(match[v]);
      v = static_cast<std::size_t>(parent[static_cast<std::size_t>(match[v])]);
    }
  };
  auto find_path = [&](std::size_t root) -> long {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), std::size_t{0});
    used[root] = 1;
    queue.assign(1, root);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t to : g.neighbors(v)) {
        if (base[v] == base[to] || match[v] == static_cast<long>(to)) continue;
        if (to == root || (match[to] != -1 && parent[static_cast<std::size_t>(match[to])] != -1)) {
          const std::size_t cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent[to] == -1) {
          parent[to] = static_cast<long>(v);
          if (match[to] == -1) return static_cast<long>(to);
          used[static_cast<std::size_t>(match[to])] = 1;
          queue.push_back(static_cast<std::size_t>(match[to]));
        }
      }
    }
    return -1;
  };

  // Greedy warm start.
  for (std::size_t v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    for (std::size_t to : g.neighbors(v)) {
      if (match[to] == -1) {
        match[v] = static_cast<long>(to);
        match[to] = static_cast<long>(v);
        break;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    long u = find_path(v);
    while (u != -1) {
      const long pv = parent[static_cast<std::size_t>(u)];
      const long ppv = match[static_cast<std::size_t>(pv)];
      match[static_cast<std::size_t>(u)] = pv;
      match[static_cast<std::size_t>(pv)] = u;
      u = ppv;
    }
  }
  return match;
}

bool matching_exists(const GraphEdgeList& g) {
  if (g.n() % 2 != 0) throw InputError("perfect matching needs an even vertex count");
  const auto mate = maximum_matching(g);
  return std::all_of(mate.begin(), mate.end(), [](long m) { return m != -1; });
}

}  // namespace hafnian
