#include "hafnian/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <utility>

#include "hafnian/counterexample.hpp"
#include "hafnian/estimator.hpp"
#include "hafnian/hafnian_exact.hpp"
#include "hafnian/linalg.hpp"
#include "hafnian/parallel.hpp"
#include "hafnian/rng.hpp"
#include "hafnian/scaling.hpp"

namespace hafnian {

GraphEdgeList random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d == 0 || d >= n) throw InputError("random regular graph needs 0 < d < n");
  if ((n * d) % 2 != 0) throw InputError("n * d must be even");
  // Pairing model, pairs drawn one at a time among the unmatched points and
  // rejected individually when they would form a loop or a repeated edge.
  // Whole-configuration rejection succeeds with probability about
  // exp(-(d^2 - 1) / 4), which is hopeless for d near n / 2.
  const std::size_t points = n * d;
  std::vector<std::size_t> free(points);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
    CounterStream rng(seed, 0x52524547'00000000ull + attempt);  // "RREG"
    for (std::size_t p = 0; p < points; ++p) free[p] = p / d;
    for (auto& row : adj) std::fill(row.begin(), row.end(), false);
    std::vector<Edge> edges;
    std::size_t left = points;
    bool stuck = false;
    while (left > 0 && !stuck) {
      std::size_t tries = 0;
      for (;;) {
        const std::size_t i = rng.below(left);
        const std::size_t j = rng.below(left);
        const std::size_t u = free[i], v = free[j];
        if (i != j && u != v && !adj[u][v]) {
          adj[u][v] = adj[v][u] = true;
          edges.emplace_back(std::min(u, v), std::max(u, v));
          // remove the larger index first so the other stays valid
          for (std::size_t k : {std::max(i, j), std::min(i, j)}) free[k] = free[--left];
          break;
        }
        if (++tries > 50 * left) {
          stuck = true;
          break;
        }
      }
    }
    if (!stuck) {
      std::sort(edges.begin(), edges.end());
      return GraphEdgeList(n, std::move(edges));
    }
  }
  throw NumericalError("pairing model kept getting stuck", 0.0);
}

GraphEdgeList matching_graph(std::size_t n) {
  if (n % 2 != 0) throw InputError("a perfect matching needs even n");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; v += 2) edges.emplace_back(v, v + 1);
  return GraphEdgeList(n, std::move(edges));
}

GraphEdgeList complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return GraphEdgeList(n, std::move(edges));
}

namespace {

CounterexampleSpec counterexample_of(const GeneratorSpec& gen) {
  return gen.m_pairs ? CounterexampleSpec::with_pairs(gen.delta, gen.n, *gen.m_pairs)
                     : CounterexampleSpec::from_delta(gen.delta, gen.n);
}

}  // namespace

SymMatrix generate_matrix(const GeneratorSpec& gen, std::uint64_t seed) {
  switch (gen.kind) {
    case GeneratorSpec::Kind::complete:
      return complete_graph(gen.n).adjacency();
    case GeneratorSpec::Kind::random_regular:
      return random_regular_graph(gen.n, gen.degree, seed).adjacency();
    case GeneratorSpec::Kind::matching:
      return matching_graph(gen.n).adjacency();
    case GeneratorSpec::Kind::counterexample:
      return build_counterexample(counterexample_of(gen)).adjacency();
    case GeneratorSpec::Kind::file:
      return read_sym_matrix_file(gen.path);
  }
  throw InputError("unknown generator");
}

SymMatrix prepare_matrix(const GeneratorSpec& gen, bool scale, std::uint64_t seed) {
  SymMatrix a = generate_matrix(gen, seed);
  if (!scale) return a;
  auto res = scale_symmetric(a, 1e-12, 200000);
  if (!res.converged) throw NumericalError("symmetric scaling did not converge", res.residual);
  return std::move(res.b);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("line fit needs at least two points");
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InputError("line fit needs distinct x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

TailReport smallest_sv_tail(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be positive");
  const SymMatrix b = prepare_matrix(cfg.matrix_source, cfg.scale, cfg.seed);
  if (b.size() % 2 != 0) throw InputError("the singular value experiment needs even n");
  std::vector<double> smallest(cfg.trials);
  parallel_for(cfg.trials, cfg.threads,
               [&](std::size_t t) { smallest[t] = spectrum(sample_W(b, cfg.seed, t)).smallest_singular; });
  std::sort(smallest.begin(), smallest.end());

  TailReport rep;
  rep.n = b.size();
  rep.trials = cfg.trials;
  rep.median_smallest = quantile_sorted(smallest, 0.5);
  auto thresholds = cfg.tail_thresholds;
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<double> lx, ly;
  for (double t : thresholds) {
    const auto hits = std::upper_bound(smallest.begin(), smallest.end(), t) - smallest.begin();
    const double p = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    rep.cdf.push_back({t, p});
    if (p > 0.0 && p < 1.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(p));
    }
  }
  if (lx.size() >= 2) rep.lower_tail_fit = fit_line(lx, ly);
  return rep;
}

DensityReport eigenvalue_density(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be positive");
  const SymMatrix b = prepare_matrix(cfg.matrix_source, cfg.scale, cfg.seed);
  const std::size_t n = b.size();

  DensityReport rep;
  rep.n = n;
  rep.trials = cfg.trials;
  rep.max_entry = b.max_entry();
  std::vector<double> grid = cfg.eta_grid;
  if (grid.empty()) {
    const double lo = std::pow(1.0 / rep.max_entry, -0.2);
    const std::size_t k = std::max<std::size_t>(cfg.eta_points, 2);
    for (std::size_t i = 0; i < k; ++i) {
      grid.push_back(std::exp(std::log(lo) + (std::log(1.0) - std::log(lo)) * static_cast<double>(i) /
                                                 static_cast<double>(k - 1)));
    }
  }
  std::sort(grid.begin(), grid.end());

  // counts[t * grid + g] = |{i : |lambda_i| < eta_g}| in trial t
  std::vector<std::size_t> counts(cfg.trials * grid.size());
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto lam = spectrum(sample_W(b, cfg.seed, t)).eigenvalues_iW;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      counts[t * grid.size() + g] = static_cast<std::size_t>(
          std::count_if(lam.begin(), lam.end(), [&](double x) { return std::fabs(x) < grid[g]; }));
    }
  });

  for (std::size_t g = 0; g < grid.size(); ++g) {
    DensityRow row;
    row.eta = grid[g];
    double sum = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::size_t c = counts[t * grid.size() + g];
      sum += static_cast<double>(c);
      row.max_count = std::max(row.max_count, c);
      if (g > 0 && c < counts[t * grid.size() + g - 1]) rep.monotone = false;
    }
    row.mean_count = sum / static_cast<double>(cfg.trials);
    row.ratio = row.mean_count / (static_cast<double>(n) * row.eta);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.rows.push_back(row);
  }
  return rep;
}

ConcentrationReport concentration_error(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be positive");
  if (cfg.family.empty()) throw InputError("concentration experiment needs a nonempty family");
  ConcentrationReport rep;
  std::vector<double> log_n, log_err, sizes, signed_err;
  for (const auto& member : cfg.family) {
    const bool is_counterexample = member.kind == GeneratorSpec::Kind::counterexample;
    const bool scale = cfg.scale && !is_counterexample;
    const SymMatrix b = prepare_matrix(member, scale, cfg.seed);
    ConcentrationRow row;
    row.n = b.size();
    if (is_counterexample) {
      row.log_haf = std::lgamma(static_cast<double>(member.n) + 1.0);
    } else if (row.n <= cfg.exact_max_n) {
      row.log_haf = hafnian_exact(b, cfg.exact_max_n).log_value;
    }
    row.exact = row.log_haf.has_value();

    const auto samples = draw_samples(b, cfg.seed, 0, cfg.trials, cfg.threads);
    std::vector<double> logdet(samples.size());
    std::transform(samples.begin(), samples.end(), logdet.begin(), [](const SkewSample& s) { return s.log_det; });
    std::vector<double> sorted = logdet;
    std::sort(sorted.begin(), sorted.end());
    const double center = row.log_haf ? *row.log_haf : quantile_sorted(sorted, 0.5);

    std::vector<double> abs_err(logdet.size()), sgn(logdet.size());
    for (std::size_t k = 0; k < logdet.size(); ++k) {
      sgn[k] = logdet[k] - center;
      abs_err[k] = std::fabs(sgn[k]);
    }
    std::sort(abs_err.begin(), abs_err.end());
    std::sort(sgn.begin(), sgn.end());
    row.median_abs_error = quantile_sorted(abs_err, 0.5);
    row.q90_abs_error = quantile_sorted(abs_err, 0.9);
    row.median_signed_error = quantile_sorted(sgn, 0.5);
    rep.rows.push_back(row);

    if (row.median_abs_error > 0.0 && std::isfinite(row.median_abs_error)) {
      log_n.push_back(std::log(static_cast<double>(row.n)));
      log_err.push_back(std::log(row.median_abs_error));
    }
    if (std::isfinite(row.median_signed_error)) {
      sizes.push_back(static_cast<double>(row.n));
      signed_err.push_back(row.median_signed_error);
    }
  }
  auto distinct = [](const std::vector<double>& v) { return std::set<double>(v.begin(), v.end()).size() >= 2; };
  if (distinct(log_n)) rep.abs_error_fit = fit_line(log_n, log_err);
  if (distinct(sizes)) rep.signed_error_fit = fit_line(sizes, signed_err);
  return rep;
}

}  // namespace hafnian
