#include "hafnian/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace hafnian {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_finite(std::span<const double> data) {
  for (double v : data) {
    if (!std::isfinite(v)) throw InputError("matrix has non-finite entries");
  }
}

// Householder vector for x (length r): v with v[0] adjusted so that
// (I - beta v v^T) x = alpha e_1. Returns {alpha, beta}; beta == 0 means no-op.
std::pair<double, double> householder(std::vector<double>& v) {
  double tail = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) tail += v[i] * v[i];
  if (tail == 0.0) return {v[0], 0.0};
  const double norm = std::sqrt(v[0] * v[0] + tail);
  const double alpha = v[0] > 0.0 ? -norm : norm;
  v[0] -= alpha;
  const double vtv = v[0] * v[0] + tail;
  return {alpha, 2.0 / vtv};
}

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> q;  // row-major orthogonal factor, only when requested
};

Tridiagonal tridiagonalize_symmetric(std::vector<double> a, std::size_t n, bool want_q) {
  Tridiagonal t;
  std::vector<std::vector<double>> reflectors;
  std::vector<double> betas;
  std::vector<double> v, p;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t r = n - k - 1;
    v.assign(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) v[i] = a[(k + 1 + i) * n + k];
    auto [alpha, beta] = householder(v);
    if (beta == 0.0) {
      if (want_q) {
        reflectors.emplace_back();
        betas.push_back(0.0);
      }
      continue;
    }
    p.assign(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      const double* row = &a[(k + 1 + i) * n + k + 1];
      double s = 0.0;
      for (std::size_t j = 0; j < r; ++j) s += row[j] * v[j];
      p[i] = beta * s;
    }
    double vp = 0.0;
    for (std::size_t i = 0; i < r; ++i) vp += v[i] * p[i];
    const double kfac = 0.5 * beta * vp;
    for (std::size_t i = 0; i < r; ++i) p[i] -= kfac * v[i];
    for (std::size_t i = 0; i < r; ++i) {
      double* row = &a[(k + 1 + i) * n + k + 1];
      for (std::size_t j = 0; j < r; ++j) row[j] -= v[i] * p[j] + p[i] * v[j];
    }
    a[(k + 1) * n + k] = alpha;
    a[k * n + k + 1] = alpha;
    for (std::size_t i = 1; i < r; ++i) {
      a[(k + 1 + i) * n + k] = 0.0;
      a[k * n + k + 1 + i] = 0.0;
    }
    if (want_q) {
      reflectors.push_back(v);
      betas.push_back(beta);
    }
  }
  t.diag.resize(n);
  t.off.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = a[i * n + i];
  for (std::size_t i = 0; i + 1 < n; ++i) t.off[i] = a[(i + 1) * n + i];

  if (want_q) {
    // Q = H_0 H_1 ... H_{n-3}, accumulated right to left.
    t.q.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) t.q[i * n + i] = 1.0;
    for (std::size_t idx = reflectors.size(); idx-- > 0;) {
      if (betas[idx] == 0.0) continue;
      const auto& h = reflectors[idx];
      const std::size_t off = idx + 1;
      const std::size_t r = h.size();
      for (std::size_t col = 0; col < n; ++col) {
        double s = 0.0;
        for (std::size_t i = 0; i < r; ++i) s += h[i] * t.q[(off + i) * n + col];
        s *= betas[idx];
        if (s == 0.0) continue;
        for (std::size_t i = 0; i < r; ++i) t.q[(off + i) * n + col] -= s * h[i];
      }
    }
  }
  return t;
}

// Orthogonal similarity of a skew matrix to skew tridiagonal form; returns the
// subdiagonal t_k = T(k+1, k).
std::vector<double> tridiagonalize_skew(std::vector<double> a, std::size_t n) {
  std::vector<double> v, p;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t r = n - k - 1;
    v.assign(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) v[i] = a[(k + 1 + i) * n + k];
    auto [alpha, beta] = householder(v);
    if (beta == 0.0) continue;
    p.assign(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      const double* row = &a[(k + 1 + i) * n + k + 1];
      double s = 0.0;
      for (std::size_t j = 0; j < r; ++j) s += row[j] * v[j];
      p[i] = beta * s;
    }
    // H S H = S + v p^T - p v^T for skew S, since v^T S v = 0.
    for (std::size_t i = 0; i < r; ++i) {
      double* row = &a[(k + 1 + i) * n + k + 1];
      for (std::size_t j = 0; j < r; ++j) row[j] += v[i] * p[j] - p[i] * v[j];
    }
    a[(k + 1) * n + k] = alpha;
    a[k * n + k + 1] = -alpha;
    for (std::size_t i = 1; i < r; ++i) {
      a[(k + 1 + i) * n + k] = 0.0;
      a[k * n + k + 1 + i] = 0.0;
    }
  }
  std::vector<double> sub(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = a[(i + 1) * n + i];
  return sub;
}

}  // namespace

PfaffianLog pfaffian_log(const SkewMatrix& w) {
  check_finite(w.data());
  const std::size_t n = w.size();
  if (n % 2 == 1) return {kNegInf, 0};
  std::vector<double> a(w.data().begin(), w.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double log_abs = 0.0;
  int sign = 1;
  std::vector<double> tau;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t kp = k + 1;
    double best = std::fabs(at(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) {
      const double mag = std::fabs(at(i, k));
      if (mag > best) {
        best = mag;
        kp = i;
      }
    }
    if (kp != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k + 1, j), at(kp, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, kp));
      sign = -sign;
    }
    const double pivot = at(k, k + 1);
    if (pivot == 0.0) return {kNegInf, 0};
    log_abs += std::log(std::fabs(pivot));
    if (pivot < 0.0) sign = -sign;
    if (k + 2 >= n) break;

    tau.assign(n, 0.0);
    for (std::size_t j = k + 2; j < n; ++j) tau[j] = at(k, j) / pivot;
    for (std::size_t i = k + 2; i < n; ++i) {
      const double ti = tau[i];
      const double ci = at(i, k + 1);
      double* row = &a[i * n];
      for (std::size_t j = k + 2; j < n; ++j) row[j] += ti * at(j, k + 1) - ci * tau[j];
    }
  }
  return {log_abs, sign};
}

double log_det_skew(const SkewMatrix& w) { return 2.0 * pfaffian_log(w).log_abs_pf; }

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
  const std::size_t n = d.size();
  if (e.size() != n) throw InputError("tridiagonal_ql: off-diagonal must have length n");
  if (n == 0) return;
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t cap = 10000 * n;
  std::size_t sweeps = 0;
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::fabs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      do {
        if (++sweeps > cap) {
          throw NumericalError("tridiagonal QL did not converge", std::fabs(e[l]));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (z) {
            auto& zz = *z;
            for (std::size_t k = 0; k < n; ++k) {
              const double t = zz[k * n + ii + 1];
              zz[k * n + ii + 1] = s * zz[k * n + ii] + c * t;
              zz[k * n + ii] = c * zz[k * n + ii] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

SpectrumReport spectrum(const SkewMatrix& w) {
  check_finite(w.data());
  const std::size_t n = w.size();
  std::vector<double> sub = tridiagonalize_skew(std::vector<double>(w.data().begin(), w.data().end()), n);
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::fabs(sub[i]);
  tridiagonal_ql(d, e, nullptr);

  SpectrumReport rep;
  rep.eigenvalues_iW = d;
  std::sort(rep.eigenvalues_iW.begin(), rep.eigenvalues_iW.end());
  rep.singular_values.resize(n);
  std::transform(d.begin(), d.end(), rep.singular_values.begin(), [](double x) { return std::fabs(x); });
  std::sort(rep.singular_values.begin(), rep.singular_values.end());
  rep.smallest_singular = rep.singular_values.front();
  rep.operator_norm = rep.singular_values.back();
  return rep;
}

std::vector<double> eig_symmetric(const SymMatrix& s) {
  const std::size_t n = s.size();
  Tridiagonal t = tridiagonalize_symmetric(std::vector<double>(s.data().begin(), s.data().end()), n, false);
  tridiagonal_ql(t.diag, t.off, nullptr);
  std::sort(t.diag.begin(), t.diag.end(), std::greater<>());
  return t.diag;
}

SymmetricEigen eig_symmetric_vectors(const SymMatrix& s) {
  const std::size_t n = s.size();
  Tridiagonal t = tridiagonalize_symmetric(std::vector<double>(s.data().begin(), s.data().end()), n, true);
  tridiagonal_ql(t.diag, t.off, &t.q);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.diag[a] > t.diag[b]; });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = t.diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = t.q[i * n + order[k]];
  }
  return out;
}

}  // namespace hafnian
