#include "nilrad/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nilrad {

namespace {

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits)
    : bits_(bits), saved_digits_(BigFloat::default_precision()) {
  if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() { BigFloat::default_precision(saved_digits_); }

BigFloat to_bigfloat(const Rational& r) {
  BigFloat out;
  mpfr_set_q(out.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return out;
}

Rational approximate_rational(const BigFloat& x, const mpz_class& max_denominator) {
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  BigFloat rest = x;
  for (int iter = 0; iter < 200; ++iter) {
    BigFloat fl = floor(rest);
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
    mpz_class h_next = a * h_prev + h;
    mpz_class k_next = a * k_prev + k;
    if (k_next > max_denominator) break;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    BigFloat frac = rest - fl;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  if (k_prev == 0) return Rational(0);
  Rational q(h_prev, k_prev);
  q.canonicalize();
  return q;
}

BigFloat tolerance_for(unsigned bits) { return pow(BigFloat(2), -static_cast<int>(bits / 2)); }

FloatMatrix::FloatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, BigFloat(0)) {}

FloatMatrix::FloatMatrix(const Matrix& exact) : FloatMatrix(exact.rows(), exact.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = to_bigfloat(exact(i, j));
}

FloatMatrix FloatMatrix::identity(std::size_t n) {
  FloatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FloatMatrix FloatMatrix::transpose() const {
  FloatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

BigFloat FloatMatrix::max_abs() const {
  BigFloat m = 0;
  for (const auto& x : a_) m = std::max<BigFloat>(m, abs(x));
  return m;
}

FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in product");
  FloatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

FloatMatrix operator-(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  FloatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

std::vector<EigenPair> sym_eigen(const Matrix& m, unsigned precision_bits) {
  if (!m.is_symmetric()) throw std::invalid_argument("sym_eigen requires a symmetric matrix");
  PrecisionGuard guard(precision_bits);
  return sym_eigen(FloatMatrix(m), precision_bits);
}

std::vector<EigenPair> sym_eigen(const FloatMatrix& input, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits);
  const std::size_t n = input.rows();
  if (input.cols() != n) throw std::invalid_argument("sym_eigen requires a square matrix");
  FloatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = BigFloat(input(i, j));
  const BigFloat asym_tol = tolerance_for(precision_bits) * (1 + a.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (abs(a(i, j) - a(j, i)) > asym_tol)
        throw std::invalid_argument("sym_eigen requires a symmetric matrix");

  FloatMatrix v = FloatMatrix::identity(n);
  // Stop once the off-diagonal mass is below the working epsilon.
  const BigFloat eps = pow(BigFloat(2), -static_cast<int>(precision_bits) - 8);
  for (int sweep = 0; sweep < 100; ++sweep) {
    BigFloat off = 0;
    BigFloat total = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= eps * eps * total || off == 0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        const BigFloat theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const BigFloat t = (theta >= 0 ? BigFloat(1) : BigFloat(-1)) /
                           (abs(theta) + sqrt(theta * theta + 1));
        const BigFloat c = 1 / sqrt(t * t + 1);
        const BigFloat s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const BigFloat akp = a(k, p);
          const BigFloat akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const BigFloat apk = a(p, k);
          const BigFloat aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const BigFloat vkp = v(k, p);
          const BigFloat vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<EigenPair> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j].value = a(j, j);
    out[j].vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[j].vector[i] = v(i, j);
  }
  std::sort(out.begin(), out.end(),
            [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
  return out;
}

FloatMatrix cholesky(const FloatMatrix& m) {
  const std::size_t n = m.rows();
  FloatMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    BigFloat d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0) throw std::invalid_argument("cholesky: matrix is not positive definite");
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigFloat s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

FloatMatrix lower_triangular_inverse(const FloatMatrix& l) {
  const std::size_t n = l.rows();
  FloatMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigFloat s = 0;
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * inv(k, j);
      inv(i, j) = -s / l(i, i);
    }
  }
  return inv;
}

}  // namespace nilrad
