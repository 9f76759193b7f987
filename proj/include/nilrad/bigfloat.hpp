#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "nilrad/exactlin.hpp"

namespace nilrad {

using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Sets the working precision (in bits) of BigFloat values created on this
/// thread for the lifetime of the guard. Precision below 64 bits is rejected.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  unsigned bits() const { return bits_; }

 private:
  unsigned bits_;
  unsigned saved_digits_;
};

BigFloat to_bigfloat(const Rational& r);

/// Closest rational with denominator ≤ max_denominator (continued fractions).
Rational approximate_rational(const BigFloat& x, const mpz_class& max_denominator);

/// 2^(-bits/2), the residual tolerance used throughout for a given precision.
BigFloat tolerance_for(unsigned bits);

class FloatMatrix {
 public:
  FloatMatrix() = default;
  FloatMatrix(std::size_t rows, std::size_t cols);
  explicit FloatMatrix(const Matrix& exact);

  static FloatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigFloat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigFloat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  FloatMatrix transpose() const;
  /// Largest absolute entry.
  BigFloat max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigFloat> a_;
};

FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b);
FloatMatrix operator-(const FloatMatrix& a, const FloatMatrix& b);

struct EigenPair {
  BigFloat value;
  std::vector<BigFloat> vector;
};

/// Eigen-decomposition of a symmetric rational matrix by cyclic Jacobi
/// rotations at the given precision. Pairs are sorted by ascending value.
/// Throws std::invalid_argument for non-symmetric input.
std::vector<EigenPair> sym_eigen(const Matrix& m, unsigned precision_bits = kDefaultPrecisionBits);
std::vector<EigenPair> sym_eigen(const FloatMatrix& m, unsigned precision_bits = kDefaultPrecisionBits);

/// Lower-triangular L with L Lᵗ = m; m must be symmetric positive definite.
FloatMatrix cholesky(const FloatMatrix& m);
/// Inverse of a lower-triangular matrix with nonzero diagonal.
FloatMatrix lower_triangular_inverse(const FloatMatrix& l);

}  // namespace nilrad
