#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "hafnian/graph.hpp"

namespace hafnian {

/// Parameters of the biased-estimator graph: a center clique of size n, n
/// peripheral vertices joined to the whole center, and m further peripheral
/// pairs joined to the center and to each other.
///
/// Vertex layout: center [0, n), unpaired peripherals [n, 2n), pairs
/// (2n + 2t, 2n + 2t + 1) for t in [0, m).
struct CounterexampleSpec {
  double delta = 0.1;
  std::size_t n_center = 0;
  std::size_t m_pairs = 0;

  std::size_t total_vertices() const noexcept { return 2 * (n_center + m_pairs); }

  /// m = floor(delta n / 2). Requires delta in (0, 1/6) and n >= 1.
  static CounterexampleSpec from_delta(double delta, std::size_t n_center);
  /// Explicit pair count, for small instances where floor(delta n / 2) = 0.
  static CounterexampleSpec with_pairs(double delta, std::size_t n_center, std::size_t m_pairs);

  void validate() const;
};

GraphEdgeList build_counterexample(const CounterexampleSpec& spec);

/// The m pair edges, in pair order.
std::vector<Edge> pair_edges(const CounterexampleSpec& spec);

/// Weak-expansion check over every J with |J| <= M/2, exact by symmetry.
///
/// The automorphism group permutes the center, the unpaired peripherals and
/// the pairs freely, so |boundary(J)| and |Con(J)| depend only on how many
/// vertices J takes from each class (a center, b unpaired, p1 half pairs,
/// p2 full pairs). Every orbit is evaluated once; `sets_checked` counts the
/// subsets those orbits cover (saturating).
ExpansionReport check_weak_expansion_structural(const CounterexampleSpec& spec, double kappa, double delta);

inline const std::vector<double> kDefaultBiasGrid = {0.005, 0.01, 0.02, 0.05};

struct BiasReport {
  CounterexampleSpec spec;
  std::size_t num_samples = 0;
  double log_haf = 0.0;  // log n!
  std::map<double, double> quantiles;  // of log det - log n!
  double median_signed_error = 0.0;
  std::map<double, double> fraction_below;  // c -> P(log det - log n! <= -c M)
  std::size_t zero_det_count = 0;
};

BiasReport run_bias_experiment(const CounterexampleSpec& spec, std::size_t num_samples, std::uint64_t seed,
                               const std::vector<double>& c_grid = kDefaultBiasGrid,
                               const std::vector<double>& quantile_levels = {0.05, 0.25, 0.5, 0.75, 0.95},
                               unsigned threads = 1);

}  // namespace hafnian
