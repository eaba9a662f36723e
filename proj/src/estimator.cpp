#include "hafnian/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "hafnian/linalg.hpp"
#include "hafnian/parallel.hpp"
#include "hafnian/rng.hpp"

namespace hafnian {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double gaussian_entry(std::uint64_t seed, std::uint64_t index, std::size_t i, std::size_t j) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return normal_from_block(Philox4x32::apply(ctr, key_from_seed(seed)));
}

SkewMatrix sample_W(const SymMatrix& a, std::uint64_t seed, std::uint64_t index) {
  const std::size_t n = a.size();
  SkewMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double var = a(i, j);
      if (var == 0.0) continue;
      w.set(i, j, gaussian_entry(seed, index, i, j) * std::sqrt(var));
    }
  }
  return w;
}

std::vector<SkewSample> draw_samples(const SymMatrix& a, std::uint64_t seed, std::uint64_t first, std::size_t count,
                                     unsigned threads) {
  std::vector<SkewSample> out(count);
  parallel_for(count, threads, [&](std::size_t k) {
    const std::uint64_t index = first + k;
    const auto pf = pfaffian_log(sample_W(a, seed, index));
    out[k] = {index, 2.0 * pf.log_abs_pf, pf.sign};
  });
  return out;
}

void LogSumExp::add(double x) noexcept {
  if (x == kNegInf) return;
  if (x > max_) {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - x) + 1.0;
    max_ = x;
  } else {
    scaled_sum_ += std::exp(x - max_);
  }
}

double LogSumExp::value() const noexcept {
  if (scaled_sum_ == 0.0) return kNegInf;
  return max_ + std::log(scaled_sum_);
}

double EstimatorSummary::relative_standard_error() const {
  if (mean_det_log == kNegInf || num_samples < 2) return 0.0;
  const double rel_var = std::max(0.0, std::exp(second_moment_log - 2.0 * mean_det_log) - 1.0);
  return std::sqrt(rel_var / static_cast<double>(num_samples - 1));
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("quantile level must lie in [0, 1]");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
  if (sorted[lo] == kNegInf) return kNegInf;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

EstimatorSummary summarize(std::span<const SkewSample> samples, std::span<const double> quantiles,
                           std::optional<double> exact_log_haf) {
  if (samples.empty()) throw InputError("at least one sample is required");
  for (double q : quantiles) {
    if (!(q > 0.0 && q < 1.0)) throw InputError("quantiles must lie in (0, 1)");
  }
  EstimatorSummary s;
  s.num_samples = samples.size();
  LogSumExp first, second;
  double sum = 0.0;
  std::size_t finite = 0;
  for (const auto& smp : samples) {
    first.add(smp.log_det);
    second.add(2.0 * smp.log_det);
    if (smp.log_det == kNegInf) {
      ++s.zero_det_count;
    } else {
      sum += smp.log_det;
      ++finite;
    }
  }
  const double log_n = std::log(static_cast<double>(samples.size()));
  s.mean_det_log = first.value() - log_n;
  s.second_moment_log = second.value() - log_n;

  const double finite_mean = finite ? sum / static_cast<double>(finite) : kNegInf;
  s.logdet_mean = s.zero_det_count ? kNegInf : finite_mean;
  if (finite >= 2) {
    double ss = 0.0;
    for (const auto& smp : samples) {
      if (smp.log_det != kNegInf) ss += (smp.log_det - finite_mean) * (smp.log_det - finite_mean);
    }
    s.logdet_std = std::sqrt(ss / static_cast<double>(finite - 1));
  }

  std::vector<double> sorted(samples.size());
  std::transform(samples.begin(), samples.end(), sorted.begin(), [](const SkewSample& x) { return x.log_det; });
  std::sort(sorted.begin(), sorted.end());
  for (double q : quantiles) s.logdet_quantiles[q] = quantile_sorted(sorted, q);

  if (exact_log_haf) {
    s.exact_log_haf = exact_log_haf;
    std::vector<double> err(samples.size());
    std::transform(samples.begin(), samples.end(), err.begin(),
                   [&](const SkewSample& x) { return std::fabs(*exact_log_haf - x.log_det); });
    std::sort(err.begin(), err.end());
    s.error_stats = ErrorStats{quantile_sorted(err, 0.5), err.back()};
  }
  return s;
}

EstimatorSummary estimate(const SymMatrix& a, const EstimateOptions& opt) {
  if (a.size() % 2 != 0) throw InputError("the estimator needs an even dimension");
  if (opt.num_samples == 0) throw InputError("num_samples must be positive");
  const auto samples = draw_samples(a, opt.seed, 0, opt.num_samples, opt.threads);
  return summarize(samples, opt.quantiles, opt.exact_log_haf);
}

double truncated_log_det(const SkewMatrix& w, std::span<const double> floor_schedule) {
  if (floor_schedule.size() != w.size()) throw InputError("floor schedule length must equal n");
  const auto spec = spectrum(w);
  double total = 0.0;
  for (std::size_t k = 0; k < spec.singular_values.size(); ++k) {
    total += std::log(std::max(spec.singular_values[k], floor_schedule[k]));
  }
  return total;
}

std::vector<double> truncation_schedule(std::size_t n, std::size_t m0, double c) {
  std::vector<double> floors(n);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    floors[k] = k < m0 ? c * static_cast<double>(m0) / nn : c * static_cast<double>(k) / nn;
  }
  return floors;
}

std::size_t default_truncation_index(std::size_t n, double theta) {
  return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 - theta / 2.0)));
}

}  // namespace hafnian
