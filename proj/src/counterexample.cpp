#include "hafnian/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "hafnian/estimator.hpp"

namespace hafnian {

CounterexampleSpec CounterexampleSpec::from_delta(double delta, std::size_t n_center) {
  CounterexampleSpec s{delta, n_center, static_cast<std::size_t>(std::floor(delta * static_cast<double>(n_center) / 2.0))};
  s.validate();
  return s;
}

CounterexampleSpec CounterexampleSpec::with_pairs(double delta, std::size_t n_center, std::size_t m_pairs) {
  CounterexampleSpec s{delta, n_center, m_pairs};
  s.validate();
  return s;
}

void CounterexampleSpec::validate() const {
  if (!(delta > 0.0 && delta < 1.0 / 6.0)) throw InputError("delta must lie in (0, 1/6)");
  if (n_center == 0) throw InputError("the center needs at least one vertex");
}

GraphEdgeList build_counterexample(const CounterexampleSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_center;
  const std::size_t total = spec.total_vertices();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) edges.emplace_back(i, j);
  }
  for (const auto& e : pair_edges(spec)) edges.push_back(e);
  return GraphEdgeList(total, std::move(edges));
}

std::vector<Edge> pair_edges(const CounterexampleSpec& spec) {
  std::vector<Edge> out;
  const std::size_t base = 2 * spec.n_center;
  for (std::size_t t = 0; t < spec.m_pairs; ++t) out.emplace_back(base + 2 * t, base + 2 * t + 1);
  return out;
}

namespace {

long double binom(std::size_t n, std::size_t k) {
  if (k > n) return 0.0L;
  long double r = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r;
}

}  // namespace

ExpansionReport check_weak_expansion_structural(const CounterexampleSpec& spec, double kappa, double delta) {
  spec.validate();
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  const std::size_t n = spec.n_center;
  const std::size_t m = spec.m_pairs;
  const std::size_t total = spec.total_vertices();
  const std::size_t level = total / 2;
  const double weight = 1.0 - delta;

  ExpansionReport rep;
  rep.kappa = kappa;
  rep.component_weight = weight;
  rep.level = level;
  rep.checked_mode = CheckMode::exhaustive;
  long double covered = 0.0L;

  for (std::size_t size = 1; size <= level; ++size) {
    for (std::size_t a = 0; a <= std::min(n, size); ++a) {
      for (std::size_t b = 0; b <= std::min(n, size - a); ++b) {
        for (std::size_t p2 = 0; p2 <= m && a + b + 2 * p2 <= size; ++p2) {
          const std::size_t p1 = size - a - b - 2 * p2;
          if (p1 + p2 > m) continue;
          std::size_t bnd = 0;
          std::size_t con = 0;
          if (a > 0) {
            bnd = total - size;
            con = 1;
          } else {
            bnd = n + p1;
            con = b + p1 + p2;
          }
          covered += binom(n, a) * binom(n, b) * binom(m, p2) * binom(m - p2, p1) * std::pow(2.0L, p1);
          const bool ok = static_cast<double>(bnd) - weight * static_cast<double>(con) >=
                          kappa * static_cast<double>(size);
          if (!ok) {
            VertexSet w;
            for (std::size_t i = 0; i < a; ++i) w.push_back(i);
            for (std::size_t i = 0; i < b; ++i) w.push_back(n + i);
            for (std::size_t t = 0; t < p2; ++t) {
              w.push_back(2 * n + 2 * t);
              w.push_back(2 * n + 2 * t + 1);
            }
            for (std::size_t t = p2; t < p2 + p1; ++t) w.push_back(2 * n + 2 * t);
            std::sort(w.begin(), w.end());
            rep.holds = false;
            rep.witness = std::move(w);
            rep.sets_checked = covered >= 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(covered);
            return rep;
          }
        }
      }
    }
  }
  rep.sets_checked = covered >= 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(covered);
  return rep;
}

BiasReport run_bias_experiment(const CounterexampleSpec& spec, std::size_t num_samples, std::uint64_t seed,
                               const std::vector<double>& c_grid, const std::vector<double>& quantile_levels,
                               unsigned threads) {
  spec.validate();
  if (num_samples == 0) throw InputError("num_samples must be positive");
  const auto adjacency = build_counterexample(spec).adjacency();
  const auto samples = draw_samples(adjacency, seed, 0, num_samples, threads);

  BiasReport rep;
  rep.spec = spec;
  rep.num_samples = num_samples;
  rep.log_haf = std::lgamma(static_cast<double>(spec.n_center) + 1.0);
  std::vector<double> err(num_samples);
  for (std::size_t k = 0; k < num_samples; ++k) {
    err[k] = samples[k].log_det - rep.log_haf;
    if (samples[k].sign_pf == 0) ++rep.zero_det_count;
  }
  std::sort(err.begin(), err.end());
  for (double q : quantile_levels) rep.quantiles[q] = quantile_sorted(err, q);
  rep.median_signed_error = quantile_sorted(err, 0.5);
  const double m_total = static_cast<double>(spec.total_vertices());
  for (double c : c_grid) {
    const double cut = -c * m_total;
    const auto below = std::upper_bound(err.begin(), err.end(), cut) - err.begin();
    rep.fraction_below[c] = static_cast<double>(below) / static_cast<double>(num_samples);
  }
  return rep;
}

}  // namespace hafnian
