#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hafnian {

/// Malformed or out-of-contract input (bad file, invariant violation, odd n on a hafnian path).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative kernel did not converge within its cap.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Dense symmetric matrix with a zero diagonal and finite nonnegative entries.
///
/// Row-major storage; both triangles are kept so rows are contiguous spans.
/// The invariants are enforced on every write.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);

  /// Validates exactly: symmetric, zero diagonal, finite, nonnegative.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return a_; }

  /// Sets A_ij = A_ji = value. Requires i != j and a finite nonnegative value.
  void set(std::size_t i, std::size_t j, double value);

  double max_entry() const noexcept;
  std::vector<double> row_sums() const;

  /// Simultaneous permutation of rows and columns: result(i,j) = A(perm[i], perm[j]).
  SymMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Dense real skew-symmetric matrix.
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(std::size_t n);

  /// Validates exactly: W_ji == -W_ij, zero diagonal, finite.
  static SkewMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return a_; }

  /// Sets W_ij = value and W_ji = -value. Requires i != j and a finite value.
  void set(std::size_t i, std::size_t j, double value);

  double frobenius_norm() const noexcept;

  friend bool operator==(const SkewMatrix&, const SkewMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Matrix text format: first line n, then n lines of n whitespace-separated decimals.
SymMatrix read_sym_matrix(std::istream& in);
SkewMatrix read_skew_matrix(std::istream& in);
SymMatrix read_sym_matrix_file(const std::string& path);
SkewMatrix read_skew_matrix_file(const std::string& path);

/// Writes with 17 significant digits so that doubles round-trip exactly.
void write_matrix(std::ostream& out, std::size_t n, std::span<const double> row_major);
void write_matrix(std::ostream& out, const SymMatrix& a);
void write_matrix(std::ostream& out, const SkewMatrix& w);

}  // namespace hafnian
