#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace nilrad {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else
/// or on a zero denominator.
Rational parse_rational(std::string_view text);

/// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Rational> diag);
  /// Matrix whose columns are the given vectors (all of equal length).
  static Matrix from_columns(std::span<const Vector> columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const Rational> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;
  const std::vector<Rational>& entries() const { return entries_; }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  Rational trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Rational& s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Rational s, Matrix a);
Vector operator*(const Matrix& a, std::span<const Rational> x);

Vector add(std::span<const Rational> a, std::span<const Rational> b);
Vector sub(std::span<const Rational> a, std::span<const Rational> b);
Vector scale(const Rational& s, std::span<const Rational> a);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
bool is_zero(std::span<const Rational> a);
Vector unit_vector(std::size_t n, std::size_t i);

/// Reduced row echelon form. `pivots` lists the pivot column of each
/// nonzero row, in order.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Exact Gauss-Jordan elimination. Within each column the pivot is the
/// candidate entry of largest magnitude.
EchelonForm rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}; one vector per free column of the echelon form,
/// with a 1 in that free position. Uses the modular route for large
/// inputs; every result is verified exactly before it is returned.
std::vector<Vector> nullspace(const Matrix& m);

/// Nullspace by exact elimination only.
std::vector<Vector> nullspace_exact(const Matrix& m);

/// Nullspace via elimination modulo word-size primes, rational
/// reconstruction and exact verification. Falls back to exact elimination
/// when reconstruction cannot be certified.
std::vector<Vector> nullspace_modular(const Matrix& m);

/// Rank of m modulo the prime p (entries must have denominators prime to p).
std::size_t rank_mod_p(const Matrix& m, std::uint64_t p);

/// A solution of m x = b, if one exists.
std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b);

std::optional<Matrix> inverse(const Matrix& m);

/// Linearly independent subset spanning the same space (a basis of the span).
std::vector<Vector> span_basis(std::span<const Vector> vectors);

/// Exact positive-definiteness test for symmetric matrices via the
/// leading principal minors (computed as the pivots of an unpivoted LDLᵗ).
bool is_positive_definite(const Matrix& m);

}  // namespace nilrad
