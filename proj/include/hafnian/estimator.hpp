#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hafnian/matrix.hpp"

namespace hafnian {

/// W_ij = g_ij * sqrt(A_ij) for i < j, W_ji = -W_ij. g_ij is the Box-Muller
/// normal of the Philox block with key `seed` and counter (i, j, index).
SkewMatrix sample_W(const SymMatrix& a, std::uint64_t seed, std::uint64_t index);

/// The standard normal used for entry (i, j), i < j, of sample `index`.
double gaussian_entry(std::uint64_t seed, std::uint64_t index, std::size_t i, std::size_t j);

struct SkewSample {
  std::uint64_t seed_index = 0;
  double log_det = 0.0;  // -infinity when det == 0
  int sign_pf = 0;
};

/// Samples indices [first, first + count) in parallel; output order is by index.
std::vector<SkewSample> draw_samples(const SymMatrix& a, std::uint64_t seed, std::uint64_t first, std::size_t count,
                                     unsigned threads = 1);

struct ErrorStats {
  double median = 0.0;
  double max = 0.0;
};

struct EstimatorSummary {
  std::size_t num_samples = 0;
  double mean_det_log = 0.0;       // log of the arithmetic mean of det
  double second_moment_log = 0.0;  // log of the arithmetic mean of det^2
  std::map<double, double> logdet_quantiles;
  double logdet_mean = 0.0;  // -infinity if any det vanished
  double logdet_std = 0.0;   // over the nonzero samples
  std::size_t zero_det_count = 0;
  std::optional<double> exact_log_haf;
  std::optional<ErrorStats> error_stats;

  /// Standard error of the sample mean of det divided by the mean; 0 when every det vanished.
  double relative_standard_error() const;
};

/// Streaming log-sum-exp accumulator. Order of `add` calls matters only at
/// rounding level; callers feed values in index order.
class LogSumExp {
 public:
  void add(double log_value) noexcept;
  /// log of the running sum; -infinity when empty or all terms are zero.
  double value() const noexcept;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_sum_ = 0.0;
};

struct EstimateOptions {
  std::size_t num_samples = 1000;
  std::uint64_t seed = 0;
  std::vector<double> quantiles = {0.05, 0.25, 0.5, 0.75, 0.95};
  std::optional<double> exact_log_haf;
  unsigned threads = 1;
};

/// Gaussian det estimator summary over independent samples. A matrix whose
/// support has no perfect matching yields mean_det_log = -infinity.
EstimatorSummary estimate(const SymMatrix& a, const EstimateOptions& options);

/// Aggregates precomputed samples (in index order).
EstimatorSummary summarize(std::span<const SkewSample> samples, std::span<const double> quantiles,
                           std::optional<double> exact_log_haf);

/// Linear-interpolation quantile (type 7) of sorted values; -infinity entries are allowed.
double quantile_sorted(std::span<const double> sorted, double q);

/// sum_k log(max(s_k, floor_k)) over ascending singular values s_0 <= s_1 <= ....
double truncated_log_det(const SkewMatrix& w, std::span<const double> floor_schedule);

/// Floors c*m0/n for k < m0 and c*k/n for k >= m0, with k counting from the
/// smallest singular value.
std::vector<double> truncation_schedule(std::size_t n, std::size_t m0, double c = 1.0);

/// Default truncation index ceil(n^(1 - theta/2)).
std::size_t default_truncation_index(std::size_t n, double theta);

}  // namespace hafnian
