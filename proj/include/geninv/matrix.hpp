#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "geninv/errors.hpp"

namespace geninv {

using Complex = std::complex<double>;

/// Matrix norms offered by the library. Every kind is submultiplicative,
/// which is what all scalar bound arithmetic relies on.
enum class NormKind {
  entrywise_l1,  ///< sum of entry moduli (default reporting norm)
  operator_one,  ///< max column sum of moduli
  operator_inf,  ///< max row sum of moduli
  frobenius,     ///< sqrt of sum of squared moduli
};

/// Relative thresholds shared by every rank / zero-test / equality decision.
/// All three must lie strictly inside (0, 1).
struct Tolerances {
  double rank_rel = 1e-10;      ///< pivot threshold scale for numerical rank
  double zero_rel = 1e-9;       ///< zero tests on residual matrices
  double equality_rel = 1e-9;   ///< approximate equality of two matrices

  void validate() const;

  /// Process-wide defaults. Honors the GENINV_TOL environment variable,
  /// either a single value applied to all three fields or a comma list of
  /// key=value overrides (rank_rel, zero_rel, equality_rel).
  static const Tolerances& defaults();

  /// Parses the GENINV_TOL syntax; throws ParseError on malformed input.
  static Tolerances parse(const std::string& text);
};

/// Dense complex matrix with value semantics. Entries are stored row-major.
/// Library operations never mutate their operands; each returns a fresh
/// matrix. Stored entries are always finite (no NaN or infinity); operations
/// whose result could overflow verify this and throw NumericError.
class Matrix {
 public:
  Matrix() = default;

  /// rows x cols zero matrix.
  Matrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of row-major entries; length must equal rows*cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> entries);
  static Matrix diagonal(std::span<const double> entries);
  static Matrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  static Matrix from_real_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  std::span<const Complex> entries() const { return entries_; }

  Matrix transpose() const;
  Matrix conjugate_transpose() const;

  /// Copy of the nr x nc submatrix anchored at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  /// Overwrites the submatrix anchored at (r0, c0) with m.
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  bool all_finite() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, const Matrix& a);
Matrix operator*(const Matrix& a, Complex s);
Matrix operator*(double s, const Matrix& a);
Matrix operator*(const Matrix& a, double s);

/// Norm of m under the given kind. Nonnegative, zero only for the zero
/// matrix, and submultiplicative for conformable products.
double norm(const Matrix& m, NormKind kind = NormKind::entrywise_l1);

/// Largest entry modulus.
double max_abs(const Matrix& m);

/// m^k by repeated multiplication; power(m, 0) is the identity.
Matrix power(const Matrix& m, std::size_t k);

/// Residual zero test: |m| <= zero_rel * max(1, scale) in the internal norm.
bool is_zero(const Matrix& m, const Tolerances& tol, double scale = 1.0);

/// Approximate equality with relative scale max(1, |a|, |b|) unless a scale
/// is supplied.
bool approx_equal(const Matrix& a, const Matrix& b, const Tolerances& tol,
                  double scale = 0.0);

/// Numerical rank via row reduction with complete pivoting. A pivot counts
/// while its modulus exceeds rank_rel * max(rows, cols) * |m|.
std::size_t rank(const Matrix& m,
                 const Tolerances& tol = Tolerances::defaults());

/// Inverse of a square, numerically nonsingular matrix.
/// Throws SingularError when rank deficiency is detected at tolerance.
Matrix inverse(const Matrix& m, const Tolerances& tol = Tolerances::defaults());

/// Similarity conjugation s * m * s^{-1}; s must be invertible.
Matrix conjugate_by(const Matrix& s, const Matrix& m,
                    const Tolerances& tol = Tolerances::defaults());

/// Smallest k <= rows with m^k numerically zero (relative to max(1,|m|)^k),
/// or nullopt when m is not nilpotent. The 0x0 matrix reports 0 and the
/// zero matrix reports 1.
std::optional<std::size_t> nilpotency_index(
    const Matrix& m, const Tolerances& tol = Tolerances::defaults());

/// Rank factorization m = first * second with first (rows x r) of full
/// column rank and second (r x cols) of full row rank, r = rank(m).
/// For r = 0 the factors are empty (rows x 0 and 0 x cols).
std::pair<Matrix, Matrix> full_rank_factorization(
    const Matrix& m, const Tolerances& tol = Tolerances::defaults());

namespace detail {

/// Rank and rank factorization with a caller-supplied absolute pivot
/// threshold. Recursive algorithms (the Drazin chain) must anchor every
/// level's rank decision to the scale of the original input, otherwise
/// residual noise blocks become "full rank relative to themselves" and get
/// inverted.
std::size_t rank_at_threshold(const Matrix& m, double pivot_threshold);
std::pair<Matrix, Matrix> full_rank_factorization_at_threshold(
    const Matrix& m, double pivot_threshold);

}  // namespace detail

const char* norm_kind_name(NormKind kind);
std::optional<NormKind> parse_norm_kind(const std::string& token);

}  // namespace geninv
