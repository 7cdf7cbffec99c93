#include "geninv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>

namespace geninv {

namespace {

// Internal scale norm for thresholds and residual tests.
double scale_norm(const Matrix& m) { return norm(m, NormKind::operator_inf); }

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch (" << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols() << ")";
    throw ShapeError(msg.str());
  }
}

void require_finite(const Matrix& m, const char* op) {
  if (!m.all_finite()) {
    throw NumericError(std::string(op) + ": non-finite entries in result");
  }
}

}  // namespace

void Tolerances::validate() const {
  auto ok = [](double v) { return v > 0.0 && v < 1.0 && std::isfinite(v); };
  if (!ok(rank_rel) || !ok(zero_rel) || !ok(equality_rel)) {
    throw ParseError("tolerances must lie strictly inside (0, 1)");
  }
}

Tolerances Tolerances::parse(const std::string& text) {
  Tolerances tol;
  auto parse_value = [](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad tolerance value: '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("bad tolerance value: '" + s + "'");
    return v;
  };
  if (text.find('=') == std::string::npos) {
    double v = parse_value(text);
    tol.rank_rel = tol.zero_rel = tol.equality_rel = v;
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ParseError("expected key=value in tolerance list: '" + item +
                         "'");
      }
      std::string key = item.substr(0, eq);
      double v = parse_value(item.substr(eq + 1));
      if (key == "rank_rel") {
        tol.rank_rel = v;
      } else if (key == "zero_rel") {
        tol.zero_rel = v;
      } else if (key == "equality_rel") {
        tol.equality_rel = v;
      } else {
        throw ParseError("unknown tolerance key: '" + key + "'");
      }
    }
  }
  tol.validate();
  return tol;
}

const Tolerances& Tolerances::defaults() {
  static const Tolerances tol = [] {
    if (const char* env = std::getenv("GENINV_TOL")) {
      return parse(env);
    }
    return Tolerances{};
  }();
  return tol;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ShapeError("entry count does not match rows*cols");
  }
  require_finite(*this, "construct");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  require_finite(m, "diagonal");
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  require_finite(m, "diagonal");
  return m;
}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  Matrix m(nr, nc);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) throw ShapeError("ragged row list");
    std::size_t j = 0;
    for (Complex v : row) m(i, j++) = v;
    ++i;
  }
  require_finite(m, "from_rows");
  return m;
}

Matrix Matrix::from_real_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  Matrix m(nr, nc);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) throw ShapeError("ragged row list");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  require_finite(m, "from_real_rows");
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::conjugate_transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw ShapeError("block exceeds matrix bounds");
  }
  Matrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) {
    throw ShapeError("block exceeds matrix bounds");
  }
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

bool Matrix::all_finite() const {
  for (const Complex& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "sub");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix operator-(const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "mul: inner dimensions differ (" << a.rows() << "x" << a.cols()
        << " * " << b.rows() << "x" << b.cols() << ")";
    throw ShapeError(msg.str());
  }
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  require_finite(r, "mul");
  return r;
}

Matrix operator*(Complex s, const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  require_finite(r, "scale");
  return r;
}

Matrix operator*(const Matrix& a, Complex s) { return s * a; }
Matrix operator*(double s, const Matrix& a) { return Complex(s, 0.0) * a; }
Matrix operator*(const Matrix& a, double s) { return Complex(s, 0.0) * a; }

double norm(const Matrix& m, NormKind kind) {
  switch (kind) {
    case NormKind::entrywise_l1: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) sum += std::abs(m(i, j));
      return sum;
    }
    case NormKind::operator_one: {
      double best = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) sum += std::abs(m(i, j));
        best = std::max(best, sum);
      }
      return best;
    }
    case NormKind::operator_inf: {
      double best = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) sum += std::abs(m(i, j));
        best = std::max(best, sum);
      }
      return best;
    }
    case NormKind::frobenius: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) sum += std::norm(m(i, j));
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      best = std::max(best, std::abs(m(i, j)));
  return best;
}

Matrix power(const Matrix& m, std::size_t k) {
  if (!m.is_square()) throw ShapeError("power: matrix must be square");
  Matrix r = Matrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

bool is_zero(const Matrix& m, const Tolerances& tol, double scale) {
  return scale_norm(m) <= tol.zero_rel * std::max(1.0, scale);
}

bool approx_equal(const Matrix& a, const Matrix& b, const Tolerances& tol,
                  double scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (scale <= 0.0) scale = std::max({1.0, scale_norm(a), scale_norm(b)});
  return scale_norm(a - b) <= tol.equality_rel * scale;
}

namespace {

// Row reduction with complete pivoting against an absolute pivot threshold.
// Returns the pivot count and leaves the multipliers / echelon rows in
// `work`, with `rowperm`/`colperm` mapping working positions back to
// original indices.
std::size_t echelon_complete_pivot(Matrix& work, double thresh,
                                   std::vector<std::size_t>& rowperm,
                                   std::vector<std::size_t>& colperm) {
  const std::size_t nr = work.rows(), nc = work.cols();
  rowperm.resize(nr);
  colperm.resize(nc);
  for (std::size_t i = 0; i < nr; ++i) rowperm[i] = i;
  for (std::size_t j = 0; j < nc; ++j) colperm[j] = j;

  const std::size_t steps = std::min(nr, nc);
  std::size_t r = 0;
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t pi = s, pj = s;
    double best = 0.0;
    for (std::size_t i = s; i < nr; ++i)
      for (std::size_t j = s; j < nc; ++j) {
        double v = std::abs(work(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best <= thresh) break;
    if (pi != s) {
      for (std::size_t j = 0; j < nc; ++j)
        std::swap(work(s, j), work(pi, j));
      std::swap(rowperm[s], rowperm[pi]);
    }
    if (pj != s) {
      for (std::size_t i = 0; i < nr; ++i)
        std::swap(work(i, s), work(i, pj));
      std::swap(colperm[s], colperm[pj]);
    }
    const Complex piv = work(s, s);
    for (std::size_t i = s + 1; i < nr; ++i) {
      const Complex f = work(i, s) / piv;
      work(i, s) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = s + 1; j < nc; ++j) work(i, j) -= f * work(s, j);
    }
    ++r;
  }
  return r;
}

double default_pivot_threshold(const Matrix& m, const Tolerances& tol) {
  return tol.rank_rel * static_cast<double>(std::max(m.rows(), m.cols())) *
         scale_norm(m);
}

}  // namespace

std::size_t rank(const Matrix& m, const Tolerances& tol) {
  if (m.empty()) return 0;
  return detail::rank_at_threshold(m, default_pivot_threshold(m, tol));
}

namespace detail {

std::size_t rank_at_threshold(const Matrix& m, double pivot_threshold) {
  if (m.empty()) return 0;
  Matrix work = m;
  std::vector<std::size_t> rp, cp;
  return echelon_complete_pivot(work, pivot_threshold, rp, cp);
}

std::pair<Matrix, Matrix> full_rank_factorization_at_threshold(
    const Matrix& m, double pivot_threshold) {
  const std::size_t nr = m.rows(), nc = m.cols();
  Matrix work = m;
  std::vector<std::size_t> rp, cp;
  const std::size_t r = echelon_complete_pivot(work, pivot_threshold, rp, cp);

  // work now holds P m Q = L U in packed form; undo the permutations so
  // that m = (P^T L)(U Q^T).
  Matrix left(nr, r);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      Complex v;
      if (i == k) {
        v = 1.0;
      } else if (i > k) {
        v = work(i, k);
      }
      left(rp[i], k) = v;
    }
  }
  Matrix right(r, nc);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = k; j < nc; ++j) right(k, cp[j]) = work(k, j);
  }
  return {std::move(left), std::move(right)};
}

}  // namespace detail

Matrix inverse(const Matrix& m, const Tolerances& tol) {
  if (!m.is_square()) throw ShapeError("inverse: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 0) return Matrix(0, 0);

  // Gauss-Jordan with partial pivoting on [m | I].
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  const double thresh =
      tol.rank_rel * static_cast<double>(n) * scale_norm(m);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t pi = s;
    double best = std::abs(a(s, s));
    for (std::size_t i = s + 1; i < n; ++i) {
      double v = std::abs(a(i, s));
      if (v > best) {
        best = v;
        pi = i;
      }
    }
    if (best <= thresh) {
      throw SingularError("inverse: matrix is singular at tolerance");
    }
    if (pi != s) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(s, j), a(pi, j));
        std::swap(inv(s, j), inv(pi, j));
      }
    }
    const Complex piv = a(s, s);
    for (std::size_t j = 0; j < n; ++j) {
      a(s, j) /= piv;
      inv(s, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == s) continue;
      const Complex f = a(i, s);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(s, j);
        inv(i, j) -= f * inv(s, j);
      }
    }
  }
  require_finite(inv, "inverse");
  return inv;
}

Matrix conjugate_by(const Matrix& s, const Matrix& m, const Tolerances& tol) {
  if (!s.is_square() || !m.is_square() || s.rows() != m.rows()) {
    throw ShapeError("conjugate_by: operands must be square and same size");
  }
  return s * m * inverse(s, tol);
}

std::optional<std::size_t> nilpotency_index(const Matrix& m,
                                            const Tolerances& tol) {
  if (!m.is_square()) {
    throw ShapeError("nilpotency_index: matrix must be square");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 0;
  const double base = std::max(1.0, scale_norm(m));
  Matrix pw = m;
  double scale = base;
  for (std::size_t k = 1; k <= n; ++k) {
    if (scale_norm(pw) <= tol.zero_rel * scale) return k;
    if (k < n) {
      pw = pw * m;
      scale *= base;
    }
  }
  return std::nullopt;
}

std::pair<Matrix, Matrix> full_rank_factorization(const Matrix& m,
                                                  const Tolerances& tol) {
  return detail::full_rank_factorization_at_threshold(
      m, default_pivot_threshold(m, tol));
}

const char* norm_kind_name(NormKind kind) {
  switch (kind) {
    case NormKind::entrywise_l1: return "entrywise-l1";
    case NormKind::operator_one: return "operator-1";
    case NormKind::operator_inf: return "operator-inf";
    case NormKind::frobenius: return "frobenius";
  }
  return "?";
}

std::optional<NormKind> parse_norm_kind(const std::string& token) {
  if (token == "entrywise-l1" || token == "l1") return NormKind::entrywise_l1;
  if (token == "operator-1") return NormKind::operator_one;
  if (token == "operator-inf") return NormKind::operator_inf;
  if (token == "frobenius" || token == "fro") return NormKind::frobenius;
  return std::nullopt;
}

}  // namespace geninv
