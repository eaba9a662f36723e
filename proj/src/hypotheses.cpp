#include "hafnian/hypotheses.hpp"

#include <algorithm>
#include <cmath>

#include "hafnian/scaling.hpp"

namespace hafnian {

std::size_t default_expansion_level(std::size_t n, double alpha, double kappa) {
  const double raw = std::floor(static_cast<double>(n) * (1.0 - alpha) / (1.0 + kappa / 4.0));
  const double clamped = std::clamp(raw, 1.0, static_cast<double>(n > 1 ? n - 1 : 1));
  return static_cast<std::size_t>(clamped);
}

namespace {

bool is_stochastic(const SymMatrix& a) {
  const auto sums = a.row_sums();
  return std::all_of(sums.begin(), sums.end(), [](double s) { return std::fabs(s - 1.0) <= 1e-6; });
}

}  // namespace

HypothesisReport check_theorem_hypotheses(const SymMatrix& a, const HypothesisParams& p) {
  HypothesisReport rep;
  const std::size_t n = a.size();
  rep.n = n;
  const double nn = static_cast<double>(n);

  SymMatrix b = a;
  if (p.scale_if_needed && !is_stochastic(a)) {
    auto scaled = scale_symmetric(a);
    rep.scaled = true;
    rep.scaling_converged = scaled.converged;
    b = std::move(scaled.b);
  }

  rep.large_entry_threshold = std::pow(nn, -p.beta);
  const auto gamma = large_entries_graph(b, rep.large_entry_threshold);
  rep.large_entry_edges = gamma.edges().size();

  rep.degree.required = p.alpha * nn + 2.0;
  rep.degree.min_degree = min_degree(gamma);
  rep.degree.holds = static_cast<double>(rep.degree.min_degree) >= rep.degree.required;
  if (!rep.degree.holds) {
    for (std::size_t v = 0; v < n; ++v) {
      if (gamma.degree(v) == rep.degree.min_degree) {
        rep.degree.witness_vertex = v;
        break;
      }
    }
  }

  rep.expansion = check_strong_expansion(gamma, p.kappa, default_expansion_level(n, p.alpha, p.kappa), p.mode,
                                         p.budget, p.seed);

  rep.max_entry.bound = std::pow(nn, -p.theta);
  rep.max_entry.max_entry = b.max_entry();
  rep.max_entry.holds = rep.max_entry.max_entry <= rep.max_entry.bound;
  if (!rep.max_entry.holds) {
    for (std::size_t i = 0; i < n && !rep.max_entry.witness_entry; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (b(i, j) == rep.max_entry.max_entry) {
          rep.max_entry.witness_entry = Edge{i, j};
          break;
        }
      }
    }
  }
  rep.all_hold = rep.degree.holds && rep.expansion.holds && rep.max_entry.holds;
  return rep;
}

}  // namespace hafnian
