#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "hafnian/graph.hpp"

namespace hafnian::detail {

// Bit-parallel evaluation of |boundary(J)| and |Con(J)|.
class ExpansionEvaluator {
 public:
  struct Scratch {
    explicit Scratch(const ExpansionEvaluator& e) : in_set(e.words_), reach(e.words_), seen(e.words_) {}
    std::vector<std::uint64_t> in_set, reach, seen;
    std::vector<std::size_t> stack;
  };

  explicit ExpansionEvaluator(const GraphEdgeList& g) : n_(g.n()), words_((g.n() + 63) / 64), rows_(n_ * words_, 0) {
    for (auto [u, v] : g.edges()) {
      rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      rows_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
    }
  }

  // Returns {|boundary|, |components|}.
  std::pair<std::size_t, std::size_t> measure(std::span<const std::size_t> set, Scratch& s) const {
    std::fill(s.in_set.begin(), s.in_set.end(), 0);
    std::fill(s.reach.begin(), s.reach.end(), 0);
    for (std::size_t v : set) s.in_set[v / 64] |= std::uint64_t{1} << (v % 64);
    for (std::size_t v : set) {
      const std::uint64_t* row = &rows_[v * words_];
      for (std::size_t w = 0; w < words_; ++w) s.reach[w] |= row[w];
    }
    std::size_t bnd = 0;
    for (std::size_t w = 0; w < words_; ++w) bnd += static_cast<std::size_t>(std::popcount(s.reach[w] & ~s.in_set[w]));

    std::fill(s.seen.begin(), s.seen.end(), 0);
    std::size_t components = 0;
    for (std::size_t root : set) {
      if (s.seen[root / 64] >> (root % 64) & 1) continue;
      ++components;
      s.seen[root / 64] |= std::uint64_t{1} << (root % 64);
      s.stack.assign(1, root);
      while (!s.stack.empty()) {
        const std::size_t v = s.stack.back();
        s.stack.pop_back();
        const std::uint64_t* row = &rows_[v * words_];
        for (std::size_t w = 0; w < words_; ++w) {
          std::uint64_t fresh = row[w] & s.in_set[w] & ~s.seen[w];
          s.seen[w] |= fresh;
          while (fresh) {
            s.stack.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(fresh)));
            fresh &= fresh - 1;
          }
        }
      }
    }
    return {bnd, components};
  }

  bool holds(std::span<const std::size_t> set, double kappa, double weight, Scratch& s) const {
    auto [bnd, con] = measure(set, s);
    return static_cast<double>(bnd) - weight * static_cast<double>(con) >= kappa * static_cast<double>(set.size());
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

}  // namespace hafnian::detail
