#include "hafnian/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hafnian/linalg.hpp"

namespace hafnian {

namespace {

// Row sums of D A D, i.e. d_i * (A d)_i.
void scaled_row_sums(const SymMatrix& a, const std::vector<double>& d, std::vector<double>& out) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * d[j];
    out[i] = d[i] * s;
  }
}

double residual_of(const std::vector<double>& sums) {
  double r = 0.0;
  for (double s : sums) r = std::max(r, std::fabs(s - 1.0));
  return r;
}

// Two-colouring of each bipartite component of the support.
struct Bipartition {
  std::vector<std::vector<std::size_t>> sides[2];  // per component
};

Bipartition bipartite_components(const SymMatrix& a) {
  const std::size_t n = a.size();
  std::vector<int> colour(n, -1);
  Bipartition out;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    std::vector<std::size_t> part[2];
    stack.assign(1, s);
    colour[s] = 0;
    bool bipartite = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      part[colour[u]].push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (a(u, v) == 0.0) continue;
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          stack.push_back(v);
        } else if (colour[v] == colour[u]) {
          bipartite = false;
        }
      }
    }
    if (bipartite && !part[1].empty()) {
      out.sides[0].push_back(std::move(part[0]));
      out.sides[1].push_back(std::move(part[1]));
    }
  }
  return out;
}

// On a bipartite component, d -> (c d on one side, d / c on the other) leaves
// every d_i A_ij d_j unchanged. Unscalable bipartite supports drift along this
// direction until d overflows, so pull it back once the drift is large.
void rebalance(const Bipartition& bp, std::vector<double>& d) {
  for (std::size_t k = 0; k < bp.sides[0].size(); ++k) {
    double mean[2];
    for (int s = 0; s < 2; ++s) {
      double acc = 0.0;
      for (auto v : bp.sides[s][k]) acc += std::log(d[v]);
      mean[s] = acc / static_cast<double>(bp.sides[s][k].size());
    }
    const double drift = mean[0] - mean[1];
    if (std::fabs(drift) < 20.0) continue;
    const double c = std::exp(-0.5 * drift);
    for (auto v : bp.sides[0][k]) d[v] *= c;
    for (auto v : bp.sides[1][k]) d[v] /= c;
  }
}

}  // namespace

ScalingResult scale_symmetric(const SymMatrix& a, double residual_target, std::size_t max_iterations,
                              const std::optional<std::vector<double>>& initial_d) {
  const std::size_t n = a.size();
  const auto sums0 = a.row_sums();
  for (std::size_t i = 0; i < n; ++i) {
    if (sums0[i] == 0.0) throw InputError("row " + std::to_string(i) + " is all zero; no scaling exists");
  }
  if (residual_target <= 0.0) residual_target = 1.0 / static_cast<double>(n);

  std::vector<double> d(n);
  if (initial_d) {
    if (initial_d->size() != n) throw InputError("initial scaling vector has the wrong length");
    for (double v : *initial_d) {
      if (!(v > 0.0) || !std::isfinite(v)) throw InputError("initial scaling entries must be positive");
    }
    d = *initial_d;
  } else {
    for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(sums0[i]);
  }

  const auto bipartite = bipartite_components(a);

  ScalingResult res;
  std::vector<double> sums(n);
  scaled_row_sums(a, d, sums);
  res.residual = residual_of(sums);
  while (res.residual > residual_target && res.iterations < max_iterations) {
    for (std::size_t i = 0; i < n; ++i) d[i] /= std::sqrt(sums[i]);
    if (!bipartite.sides[0].empty()) rebalance(bipartite, d);
    ++res.iterations;
    scaled_row_sums(a, d, sums);
    res.residual = residual_of(sums);
    if (!std::isfinite(res.residual)) break;
  }
  res.converged = res.residual <= residual_target;

  res.b = SymMatrix(n);
  res.max_entry = 0.0;
  res.min_positive_entry = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = d[i] * a(i, j) * d[j];
      if (v == 0.0) continue;
      res.b.set(i, j, v);
      res.max_entry = std::max(res.max_entry, v);
      res.min_positive_entry = std::min(res.min_positive_entry, v);
    }
  }
  res.d = std::move(d);
  return res;
}

EntryAudit audit_entry_bounds(const ScalingResult& result, double theta, double nu) {
  const double n = static_cast<double>(result.b.size());
  EntryAudit audit;
  audit.max_ok = result.max_entry <= std::pow(n, -theta);
  audit.min_ok = result.min_positive_entry >= std::pow(n, -2.0 * nu);
  const double log_n = std::log(n);
  audit.max_exponent = -std::log(result.max_entry) / log_n;
  audit.min_exponent = -std::log(result.min_positive_entry) / (2.0 * log_n);
  return audit;
}

SpectralGapReport spectral_gap(const SymMatrix& b, double delta) {
  const auto sums = b.row_sums();
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (std::fabs(sums[i] - 1.0) > 1e-6) {
      throw InputError("matrix is not stochastic: row " + std::to_string(i) + " sums to " + std::to_string(sums[i]));
    }
  }
  constexpr double kUnitTol = 1e-9;
  SpectralGapReport rep;
  rep.eigenvalues = eig_symmetric(b);
  rep.has_gap = true;
  for (double lam : rep.eigenvalues) {
    if (lam >= 1.0 - kUnitTol) {
      ++rep.unit_eigenvalues;
      continue;
    }
    if (lam <= -1.0 + kUnitTol) {
      ++rep.neg_unit_eigenvalues;
      continue;
    }
    rep.gap_witness = std::max(rep.gap_witness, std::fabs(lam));
    if (lam > 1.0 - delta + kUnitTol || lam < -1.0 + delta - kUnitTol) rep.has_gap = false;
  }
  rep.reducible = rep.unit_eigenvalues > 1;
  return rep;
}

}  // namespace hafnian
