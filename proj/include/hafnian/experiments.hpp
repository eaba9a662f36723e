#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hafnian/graph.hpp"
#include "hafnian/matrix.hpp"

namespace hafnian {

/// Where an experiment's matrix comes from.
struct GeneratorSpec {
  enum class Kind { complete, random_regular, matching, counterexample, file };
  Kind kind = Kind::complete;
  std::size_t n = 0;       // vertices (complete, random_regular, matching) or center size (counterexample)
  std::size_t degree = 0;  // random_regular
  double delta = 0.12;     // counterexample
  std::optional<std::size_t> m_pairs;  // counterexample; floor(delta n / 2) when absent
  std::string path;        // file
};

struct ExperimentConfig {
  GeneratorSpec matrix_source;
  std::vector<GeneratorSpec> family;  // concentration only
  bool scale = true;                   // run symmetric scaling before sampling
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<double> eta_grid;        // empty: log-spaced over [M^-1/5, 1], M = 1 / max entry
  std::vector<double> tail_thresholds = {1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.2};
  std::size_t eta_points = 8;
  std::size_t exact_max_n = 14;
  unsigned threads = 1;
};

/// Pairing-model random d-regular graph. Pairs of points are drawn one at a
/// time and a pair creating a loop or multi-edge is rejected and redrawn; a
/// dead end restarts the whole pairing. Deterministic in (n, d, seed).
GraphEdgeList random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed);

/// Perfect matching (0,1), (2,3), ...
GraphEdgeList matching_graph(std::size_t n);

GraphEdgeList complete_graph(std::size_t n);

/// Raw matrix for a generator (adjacency, or the file contents).
SymMatrix generate_matrix(const GeneratorSpec& gen, std::uint64_t seed);

/// Generated matrix, scaled when requested. Throws NumericalError if scaling fails.
SymMatrix prepare_matrix(const GeneratorSpec& gen, bool scale, std::uint64_t seed);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (x, y); needs two distinct x values.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct TailPoint {
  double threshold;
  double probability;
};

struct TailReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::vector<TailPoint> cdf;  // P(s_n <= t), thresholds ascending
  double median_smallest = 0.0;
  std::optional<LineFit> lower_tail_fit;  // log P against log t over 0 < P < 1
};

TailReport smallest_sv_tail(const ExperimentConfig& config);

struct DensityRow {
  double eta = 0.0;
  double mean_count = 0.0;
  std::size_t max_count = 0;
  double ratio = 0.0;  // mean_count / (n eta)
};

struct DensityReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  double max_entry = 0.0;
  std::vector<DensityRow> rows;
  double max_ratio = 0.0;
  bool monotone = true;  // N(eta) nondecreasing in eta in every trial
};

DensityReport eigenvalue_density(const ExperimentConfig& config);

struct ConcentrationRow {
  std::size_t n = 0;
  bool exact = false;  // compared to the exact log hafnian, otherwise to the sample median
  std::optional<double> log_haf;
  double median_abs_error = 0.0;
  double q90_abs_error = 0.0;
  double median_signed_error = 0.0;
};

struct ConcentrationReport {
  std::vector<ConcentrationRow> rows;
  std::optional<LineFit> abs_error_fit;     // log median_abs_error against log n
  std::optional<LineFit> signed_error_fit;  // median_signed_error against n
};

ConcentrationReport concentration_error(const ExperimentConfig& config);

}  // namespace hafnian
