#pragma once

#include <cstddef>
#include <vector>

#include "hafnian/matrix.hpp"

namespace hafnian {

struct PfaffianLog {
  double log_abs_pf;  // -infinity when Pf(W) == 0
  int sign;           // -1, 0 or +1
};

/// log|Pf(W)| and sign(Pf(W)) by skew-symmetric Gaussian elimination
/// (Parlett-Reid) with partial pivoting. Odd dimensions give Pf = 0.
PfaffianLog pfaffian_log(const SkewMatrix& w);

/// log det(W) = 2 log|Pf(W)|; -infinity for singular W.
double log_det_skew(const SkewMatrix& w);

struct SpectrumReport {
  std::vector<double> eigenvalues_iW;   // ascending
  std::vector<double> singular_values;  // ascending
  double smallest_singular = 0.0;
  double operator_norm = 0.0;
};

/// Spectrum of the Hermitian matrix iW.
///
/// W is reduced to skew tridiagonal form by Householder reflections, which makes iW
/// unitarily similar to a real symmetric tridiagonal matrix with zero diagonal and
/// off-diagonal |t_k|; that matrix is diagonalized by implicit QL. Any n >= 1.
SpectrumReport spectrum(const SkewMatrix& w);

/// Eigenvalues of a symmetric matrix, sorted descending.
std::vector<double> eig_symmetric(const SymMatrix& s);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  std::vector<double> vectors; // row-major n x n, column k pairs with values[k]
};

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix.
SymmetricEigen eig_symmetric_vectors(const SymMatrix& s);

/// Symmetric tridiagonal eigenproblem by implicit QL. `diag` (size n) and `off`
/// (size n, off[k] couples k and k+1, last entry ignored) are overwritten;
/// on return `diag` holds the eigenvalues in no particular order. If `z` is
/// non-null it must hold an n x n row-major matrix which is multiplied by the
/// accumulated rotations. Throws NumericalError after 10^4 * n sweeps.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off, std::vector<double>* z);

}  // namespace hafnian
