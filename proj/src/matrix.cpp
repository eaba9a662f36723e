#include "hafnian/matrix.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hafnian {

namespace {

void check_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw InputError("matrix index out of range");
  if (i == j) throw InputError("diagonal entries must stay zero");
}

double parse_double(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw InputError("not a decimal number: '" + std::string(token) + "'");
  return value;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<std::vector<double>> read_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty matrix file");
  auto header = tokens_of(line);
  if (header.size() != 1) throw InputError("first line must hold the dimension n");
  std::size_t n = 0;
  {
    const auto& h = header.front();
    auto [ptr, ec] = std::from_chars(h.data(), h.data() + h.size(), n);
    if (ec != std::errc{} || ptr != h.data() + h.size()) throw InputError("dimension is not an integer");
  }
  if (n == 0) throw InputError("dimension must be positive");
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw InputError("matrix file ended after " + std::to_string(i) + " rows");
    auto toks = tokens_of(line);
    if (toks.size() != n) {
      throw InputError("row " + std::to_string(i) + " has " + std::to_string(toks.size()) + " entries, expected " +
                       std::to_string(n));
    }
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = parse_double(toks[j]);
    rows.push_back(std::move(row));
  }
  while (std::getline(in, line)) {
    if (!blank(line)) throw InputError("trailing data after the last matrix row");
  }
  return rows;
}

void write_number(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

SymMatrix::SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
  if (n == 0) throw InputError("dimension must be positive");
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(rows.size());
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InputError("matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) throw InputError("diagonal entry " + std::to_string(i) + " is not zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  check_index(n_, i, j);
  if (!std::isfinite(value) || value < 0.0) throw InputError("entries must be finite and nonnegative");
  a_[i * n_ + j] = value;
  a_[j * n_ + i] = value;
}

double SymMatrix::max_entry() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, v);
  return m;
}

std::vector<double> SymMatrix::row_sums() const {
  std::vector<double> s(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (double v : row(i)) s[i] += v;
  }
  return s;
}

SymMatrix SymMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw InputError("permutation length mismatch");
  SymMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out.a_[i * n_ + j] = (*this)(perm[i], perm[j]);
  }
  return out;
}

SkewMatrix::SkewMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
  if (n == 0) throw InputError("dimension must be positive");
}

SkewMatrix SkewMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SkewMatrix m(rows.size());
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InputError("matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) throw InputError("diagonal entry " + std::to_string(i) + " is not zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[j][i] != -rows[i][j]) {
        throw InputError("matrix is not skew-symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

void SkewMatrix::set(std::size_t i, std::size_t j, double value) {
  check_index(n_, i, j);
  if (!std::isfinite(value)) throw InputError("entries must be finite");
  a_[i * n_ + j] = value;
  a_[j * n_ + i] = -value;
}

double SkewMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymMatrix read_sym_matrix(std::istream& in) { return SymMatrix::from_rows(read_rows(in)); }
SkewMatrix read_skew_matrix(std::istream& in) { return SkewMatrix::from_rows(read_rows(in)); }

SymMatrix read_sym_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file: " + path);
  return read_sym_matrix(in);
}

SkewMatrix read_skew_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file: " + path);
  return read_skew_matrix(in);
}

void write_matrix(std::ostream& out, std::size_t n, std::span<const double> row_major) {
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      write_number(out, row_major[i * n + j]);
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const SymMatrix& a) { write_matrix(out, a.size(), a.data()); }
void write_matrix(std::ostream& out, const SkewMatrix& w) { write_matrix(out, w.size(), w.data()); }

}  // namespace hafnian
