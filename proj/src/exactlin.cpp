#include "nilrad/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nilrad {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  const auto den_text = slash == std::string_view::npos ? std::string_view("1")
                                                        : text.substr(slash + 1);
  if (!is_integer_literal(num_text) || !is_integer_literal(den_text) ||
      den_text[0] == '-' || den_text[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class num(std::string(num_text[0] == '+' ? num_text.substr(1) : num_text));
  mpz_class den{std::string(den_text)};
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count does not match shape");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const Rational> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0; });
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rational Matrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Rational s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("shape mismatch in matrix-vector product");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
    }
  }
  return y;
}

Vector add(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  Vector c(a.begin(), a.end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Vector sub(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  Vector c(a.begin(), a.end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

Vector scale(const Rational& s, std::span<const Rational> a) {
  Vector c(a.begin(), a.end());
  for (auto& x : c) x *= s;
  return c;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

bool is_zero(std::span<const Rational> a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

// ---------------------------------------------------------------------------
// Exact elimination

EchelonForm rref(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  const std::size_t rows = r.rows();
  const std::size_t cols = r.cols();
  std::size_t lead = 0;
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t best = rows;
    Rational best_abs = 0;
    for (std::size_t i = lead; i < rows; ++i) {
      if (r(i, c) == 0) continue;
      Rational a = abs(r(i, c));
      if (best == rows || a > best_abs) {
        best = i;
        best_abs = a;
      }
    }
    if (best == rows) continue;
    if (best != lead) {
      for (std::size_t j = c; j < cols; ++j) swap(r(best, j), r(lead, j));
    }
    const Rational inv = 1 / r(lead, c);
    nonzero.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (r(lead, j) != 0) {
        r(lead, j) *= inv;
        nonzero.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || r(i, c) == 0) continue;
      const Rational f = r(i, c);
      for (std::size_t j : nonzero) r(i, j) -= f * r(lead, j);
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

namespace {

std::vector<Vector> kernel_from_echelon(const EchelonForm& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// --- word-size modular arithmetic -------------------------------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const std::vector<u64>& modular_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    for (u64 n = (1ULL << 62) - 1; out.size() < 8; n -= 2) {
      if (is_prime_u64(n)) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

static_assert(sizeof(unsigned long) == sizeof(u64), "GMP word ops assume 64-bit unsigned long");

mpz_class to_mpz(u64 x) {
  mpz_class z;
  mpz_set_ui(z.get_mpz_t(), x);
  return z;
}

std::optional<u64> reduce_mod(const Rational& x, u64 p) {
  const u64 d = mpz_fdiv_ui(x.get_den_mpz_t(), p);
  if (d == 0) return std::nullopt;
  const u64 n = mpz_fdiv_ui(x.get_num_mpz_t(), p);
  return mulmod(n, powmod(d, p - 2, p), p);
}

struct ModularMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<u64> a;
  u64& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

std::optional<ModularMatrix> to_modular(const Matrix& m, u64 p) {
  ModularMatrix out{m.rows(), m.cols(), std::vector<u64>(m.rows() * m.cols(), 0)};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      auto r = reduce_mod(m(i, j), p);
      if (!r) return std::nullopt;
      out.at(i, j) = *r;
    }
  }
  return out;
}

// In-place Gauss-Jordan mod p; returns pivot columns.
std::vector<std::size_t> rref_mod(ModularMatrix& m, u64 p) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < m.cols && lead < m.rows; ++c) {
    std::size_t piv = m.rows;
    for (std::size_t i = lead; i < m.rows; ++i) {
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == m.rows) continue;
    if (piv != lead) {
      for (std::size_t j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(lead, j));
    }
    const u64 inv = powmod(m.at(lead, c), p - 2, p);
    nonzero.clear();
    for (std::size_t j = c; j < m.cols; ++j) {
      if (m.at(lead, j) != 0) {
        m.at(lead, j) = mulmod(m.at(lead, j), inv, p);
        nonzero.push_back(j);
      }
    }
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == lead) continue;
      const u64 f = m.at(i, c);
      if (f == 0) continue;
      for (std::size_t j : nonzero) {
        const u64 t = mulmod(f, m.at(lead, j), p);
        u64& x = m.at(i, j);
        x = x >= t ? x - t : x + p - t;
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

// Recovers a/b ≡ x (mod modulus) with |a|, b ≤ sqrt(modulus / 2).
std::optional<Rational> rational_reconstruct(const mpz_class& x, const mpz_class& modulus) {
  mpz_class bound;
  mpz_class half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = modulus, r1 = x;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  return q;
}

bool verify_kernel(const Matrix& m, std::span<const Vector> basis) {
  for (const auto& v : basis) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (v[j] != 0 && m(i, j) != 0) s += m(i, j) * v[j];
      }
      if (s != 0) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Vector> nullspace_exact(const Matrix& m) { return kernel_from_echelon(rref(m), m.cols()); }

std::size_t rank_mod_p(const Matrix& m, std::uint64_t p) {
  auto mm = to_modular(m, p);
  if (!mm) throw std::invalid_argument("denominator divisible by the modulus");
  return rref_mod(*mm, p).size();
}

std::vector<Vector> nullspace_modular(const Matrix& m) {
  const std::size_t cols = m.cols();
  // Kernel residues for the current pivot pattern, combined across primes by CRT.
  std::vector<std::size_t> pattern;
  std::vector<std::vector<mpz_class>> residues;  // [free index][coordinate]
  mpz_class modulus = 1;
  bool have_pattern = false;

  for (u64 p : modular_primes()) {
    auto mm = to_modular(m, p);
    if (!mm) continue;
    auto pivots = rref_mod(*mm, p);
    if (have_pattern && pivots.size() < pattern.size()) continue;  // unlucky prime
    if (!have_pattern || pivots != pattern) {
      pattern = pivots;
      residues.clear();
      modulus = 1;
      have_pattern = true;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    const mpz_class pz = to_mpz(p);
    std::size_t k = 0;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<u64> v(cols, 0);
      v[f] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const u64 x = mm->at(r, f);
        v[pivots[r]] = x == 0 ? 0 : p - x;
      }
      if (residues.size() <= k) residues.emplace_back(cols, mpz_class(0));
      for (std::size_t j = 0; j < cols; ++j) {
        // CRT: find y ≡ old (mod modulus), y ≡ v[j] (mod p).
        const mpz_class vj = to_mpz(v[j]);
        mpz_class& old = residues[k][j];
        mpz_class inv;
        mpz_class mod_p = modulus % pz;
        mpz_invert(inv.get_mpz_t(), mod_p.get_mpz_t(), pz.get_mpz_t());
        mpz_class t = ((vj - old) % pz + pz) % pz;
        t = (t * inv) % pz;
        old += modulus * t;
      }
      ++k;
    }
    modulus *= pz;

    std::vector<Vector> basis;
    bool ok = true;
    for (const auto& res : residues) {
      Vector v(cols);
      for (std::size_t j = 0; j < cols && ok; ++j) {
        auto q = rational_reconstruct(res[j], modulus);
        if (!q) ok = false;
        else v[j] = *q;
      }
      if (!ok) break;
      basis.push_back(std::move(v));
    }
    if (ok && verify_kernel(m, basis)) return basis;
  }
  return nullspace_exact(m);
}

std::vector<Vector> nullspace(const Matrix& m) {
  constexpr std::size_t kModularThreshold = 64 * 64;
  if (m.rows() * m.cols() >= kModularThreshold) return nullspace_modular(m);
  return nullspace_exact(m);
}

std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::vector<Vector> span_basis(std::span<const Vector> vectors) {
  if (vectors.empty()) return {};
  const std::size_t n = vectors.front().size();
  auto e = rref(Matrix::from_columns(vectors, n));
  std::vector<Vector> out;
  for (auto c : e.pivots) out.push_back(vectors[c]);
  return out;
}

bool is_positive_definite(const Matrix& m) {
  if (!m.is_symmetric()) return false;
  Matrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

}  // namespace nilrad
