#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hafnian/matrix.hpp"

namespace hafnian {

struct ScalingResult {
  std::vector<double> d;  // diagonal of D
  SymMatrix b;            // B = D A D
  double residual = 0.0;  // max_i |sum_j B_ij - 1|
  std::size_t iterations = 0;
  double max_entry = 0.0;
  double min_positive_entry = 0.0;
  bool converged = false;
};

/// Symmetric Sinkhorn scaling B = DAD.
///
/// Iterates d_i <- d_i / sqrt(sum_j d_i A_ij d_j) simultaneously for all i,
/// starting from d_i = 1/sqrt(row_sum_i) unless `initial_d` is given, and stops
/// when the residual is at most `residual_target` (a nonpositive target means
/// 1/n). Hitting `max_iterations` is reported through `converged = false`,
/// which happens when the support has no perfect matching.
ScalingResult scale_symmetric(const SymMatrix& a, double residual_target = 0.0, std::size_t max_iterations = 100000,
                              const std::optional<std::vector<double>>& initial_d = std::nullopt);

struct EntryAudit {
  bool max_ok = false;  // max_entry <= n^-theta
  bool min_ok = false;  // min_positive_entry >= n^-(2 nu)
  double max_exponent = 0.0;  // -log(max_entry) / log n
  double min_exponent = 0.0;  // -log(min_positive_entry) / (2 log n)
};

EntryAudit audit_entry_bounds(const ScalingResult& result, double theta, double nu);

struct SpectralGapReport {
  bool has_gap = false;
  double gap_witness = 0.0;  // largest |lambda| strictly inside (-1, 1)
  std::size_t unit_eigenvalues = 0;     // count of lambda within 1e-9 of +1
  std::size_t neg_unit_eigenvalues = 0; // count within 1e-9 of -1
  bool reducible = false;               // more than one eigenvalue at +1
  std::vector<double> eigenvalues;      // descending
};

/// Spectral-gap test for a symmetric stochastic matrix: no eigenvalue in
/// (-1, -1 + delta) or (1 - delta, 1). Eigenvalues within 1e-9 of +-1 count as
/// +-1. Throws InputError if some row sum is off by more than 1e-6.
SpectralGapReport spectral_gap(const SymMatrix& b, double delta);

}  // namespace hafnian
