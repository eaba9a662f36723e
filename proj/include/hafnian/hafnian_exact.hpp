#pragma once

#include <cstddef>
#include <optional>

#include "hafnian/graph.hpp"
#include "hafnian/matrix.hpp"

namespace hafnian {

struct HafnianValue {
  double log_value;                     // -infinity when haf == 0
  std::optional<double> value_if_small; // exp(log_value) when representable
  std::size_t n;
};

inline constexpr std::size_t kDefaultHafnianCap = 24;

/// Exact hafnian by memoized recursion over the vertex subsets reachable by
/// always matching the lowest remaining vertex:
///   haf(S) = sum_{j in S, j != min S} A(min S, j) * haf(S \ {min S, j}).
/// Entries are rescaled by the maximum entry first, so for 0/1 input the
/// value is an exact integer (up to 2^53).
HafnianValue hafnian_exact(const SymMatrix& a, std::size_t cap = kDefaultHafnianCap);

/// Number of perfect matchings: the hafnian of the 0/1 adjacency matrix.
HafnianValue count_perfect_matchings(const GraphEdgeList& g, std::size_t cap = kDefaultHafnianCap);

/// True iff g has a perfect matching (Edmonds blossom augmentation).
bool matching_exists(const GraphEdgeList& g);

/// Maximum cardinality matching; mate[v] is the partner or -1.
std::vector<long> maximum_matching(const GraphEdgeList& g);

}  // namespace hafnian
