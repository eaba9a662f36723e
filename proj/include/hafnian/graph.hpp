#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hafnian/matrix.hpp"

namespace hafnian {

using Edge = std::pair<std::size_t, std::size_t>;
/// Sorted list of distinct vertex indices.
using VertexSet = std::vector<std::size_t>;

/// Simple undirected graph on vertices [0, n). Edges are stored normalized
/// (u < v) and sorted; adjacency lists are sorted.
class GraphEdgeList {
 public:
  GraphEdgeList() = default;
  /// Throws InputError on self-loops, duplicates or out-of-range indices.
  GraphEdgeList(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  bool has_edge(std::size_t u, std::size_t v) const;

  /// 0/1 adjacency matrix.
  SymMatrix adjacency() const;
  GraphEdgeList with_edge(std::size_t u, std::size_t v) const;

  friend bool operator==(const GraphEdgeList& a, const GraphEdgeList& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

// Edge-list format: "n m" then m lines "u v" (0-based).
GraphEdgeList read_graph(std::istream& in);
GraphEdgeList read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const GraphEdgeList& g);

/// Support graph of a 0/1 or weighted matrix: edge iff A_ij > 0.
GraphEdgeList support_graph(const SymMatrix& a);

/// Edge (i, j) iff A_ij > theta, strictly.
GraphEdgeList large_entries_graph(const SymMatrix& a, double theta);

/// Vertices outside J adjacent to some vertex of J.
VertexSet boundary(const GraphEdgeList& g, const VertexSet& j);

/// Number of connected components of the subgraph induced on J.
std::size_t connected_components_within(const GraphEdgeList& g, const VertexSet& j);

std::size_t min_degree(const GraphEdgeList& g);

enum class CheckMode { exhaustive, sampled };

std::string to_string(CheckMode mode);
CheckMode check_mode_from_string(const std::string& s);

/// Verdict of an expansion check. The inequality checked is
///   |boundary(J)| - component_weight * |Con(J)| >= kappa * |J|
/// with component_weight = 1 for strong expansion and 1 - delta for the weak variant.
struct ExpansionReport {
  double kappa = 0.0;
  double component_weight = 1.0;
  std::size_t level = 0;
  bool holds = true;
  std::optional<VertexSet> witness;
  CheckMode checked_mode = CheckMode::exhaustive;
  std::uint64_t sets_checked = 0;
};

/// Evaluates the expansion inequality on a single set.
bool expansion_inequality_holds(const GraphEdgeList& g, const VertexSet& j, double kappa, double component_weight);

/// Strong expansion up to `level` (1 <= level < n).
///
/// Exhaustive mode walks all sets of size 1..level, by size then
/// lexicographically, and needs sum_k C(n, k) <= budget. Sampled mode first
/// tries adversarial candidates (single vertices, neighborhoods, greedily grown
/// independent sets in low-degree-first order and their prefixes) and then
/// `budget` random sets; a budget that covers the whole enumeration switches
/// to exhaustive mode.
ExpansionReport check_strong_expansion(const GraphEdgeList& g, double kappa, std::size_t level, CheckMode mode,
                                       std::uint64_t budget, std::uint64_t seed);

/// Weak variant with component weight 1 - delta, at level floor(n/2).
ExpansionReport check_weak_expansion(const GraphEdgeList& g, double kappa, double delta, CheckMode mode,
                                     std::uint64_t budget, std::uint64_t seed);

/// Shared driver for both variants.
ExpansionReport check_expansion(const GraphEdgeList& g, double kappa, double component_weight, std::size_t level,
                                CheckMode mode, std::uint64_t budget, std::uint64_t seed);

/// Sum_{k=1..level} C(n, k), saturating at UINT64_MAX.
std::uint64_t subsets_up_to(std::size_t n, std::size_t level);

}  // namespace hafnian
