#pragma once

#include <cstdint>
#include <optional>

#include "hafnian/graph.hpp"
#include "hafnian/matrix.hpp"

namespace hafnian {

struct HypothesisParams {
  double alpha = 0.0;
  double kappa = 0.0;
  double beta = 0.0;   // large-entries threshold n^-beta
  double theta = 0.0;  // max-entry bound n^-theta
  bool scale_if_needed = true;  // scale A first unless it is already stochastic
  CheckMode mode = CheckMode::sampled;
  std::uint64_t budget = 20000;
  std::uint64_t seed = 0;
};

struct DegreeCondition {
  bool holds = false;
  std::size_t min_degree = 0;
  double required = 0.0;  // alpha n + 2
  std::optional<std::size_t> witness_vertex;
};

struct MaxEntryCondition {
  bool holds = false;
  double max_entry = 0.0;
  double bound = 0.0;  // n^-theta
  std::optional<Edge> witness_entry;
};

struct HypothesisReport {
  std::size_t n = 0;
  bool scaled = false;
  std::optional<bool> scaling_converged;
  double large_entry_threshold = 0.0;
  std::size_t large_entry_edges = 0;
  DegreeCondition degree;
  ExpansionReport expansion;  // level floor(n (1 - alpha) / (1 + kappa / 4))
  MaxEntryCondition max_entry;
  bool all_hold = false;
};

/// Evaluates the three concentration hypotheses on the large-entries graph
/// Gamma_B(n^-beta) of the (scaled) matrix: minimum degree, strong expansion
/// and the max-entry bound.
HypothesisReport check_theorem_hypotheses(const SymMatrix& a, const HypothesisParams& params);

/// floor(n (1 - alpha) / (1 + kappa / 4)), clamped to [1, n - 1].
std::size_t default_expansion_level(std::size_t n, double alpha, double kappa);

}  // namespace hafnian
