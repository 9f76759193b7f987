#include "nilrad/htype.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nilrad {

// ---------------------------------------------------------------------------
// MetricStructure and graded maps

MetricStructure::MetricStructure(TwoStepAlgebra algebra, Matrix gram_v, Matrix gram_z)
    : algebra_(std::move(algebra)), gram_v_(std::move(gram_v)), gram_z_(std::move(gram_z)) {
  if (gram_v_.rows() != algebra_.dim_v() || gram_v_.cols() != algebra_.dim_v()) {
    throw std::invalid_argument("gram.v must be dimV x dimV");
  }
  if (gram_z_.rows() != algebra_.dim_z() || gram_z_.cols() != algebra_.dim_z()) {
    throw std::invalid_argument("gram.z must be dimZ x dimZ");
  }
  if (!is_positive_definite(gram_v_)) throw std::invalid_argument("gram.v is not symmetric positive definite");
  if (!is_positive_definite(gram_z_)) throw std::invalid_argument("gram.z is not symmetric positive definite");
}

MetricStructure MetricStructure::standard(TwoStepAlgebra algebra) {
  const auto dv = algebra.dim_v();
  const auto dz = algebra.dim_z();
  return {std::move(algebra), Matrix::identity(dv), Matrix::identity(dz)};
}

MetricStructure MetricStructure::from_file(const AlgebraFile& file) {
  if (!file.gram) return standard(file.algebra);
  return {file.algebra, file.gram->v, file.gram->z};
}

GradedMap GradedMap::identity(const TwoStepAlgebra& alg) {
  return {Matrix::identity(alg.dim_v()), Matrix::identity(alg.dim_z())};
}

GradedMap compose(const GradedMap& a, const GradedMap& b) {
  return {a.map_v * b.map_v, a.map_z * b.map_z};
}

std::optional<BracketViolation> automorphism_violation(const TwoStepAlgebra& alg, const GradedMap& f) {
  const std::size_t n = alg.dim_v();
  if (f.map_v.rows() != n || f.map_v.cols() != n || f.map_z.rows() != alg.dim_z() ||
      f.map_z.cols() != alg.dim_z()) {
    throw std::invalid_argument("graded map shape does not match the algebra");
  }
  std::vector<Vector> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = f.map_v.column(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector lhs = alg.bracket_v(images[i], images[j]);
      const Vector rhs = f.map_z * alg.basis_bracket(i, j);
      if (lhs != rhs) return BracketViolation{i, j};
    }
  }
  return std::nullopt;
}

bool is_automorphism(const TwoStepAlgebra& alg, const GradedMap& f) {
  return !automorphism_violation(alg, f).has_value();
}

bool is_isometry(const MetricStructure& ms, const GradedMap& f) {
  return f.map_v.transpose() * ms.gram_v() * f.map_v == ms.gram_v() &&
         f.map_z.transpose() * ms.gram_z() * f.map_z == ms.gram_z();
}

MetricStructure pullback(const MetricStructure& ms, const GradedMap& f) {
  return {ms.algebra(), f.map_v.transpose() * ms.gram_v() * f.map_v,
          f.map_z.transpose() * ms.gram_z() * f.map_z};
}

GradedMap dilation(const TwoStepAlgebra& alg, const Rational& t) {
  return {Rational(t) * Matrix::identity(alg.dim_v()), Rational(t * t) * Matrix::identity(alg.dim_z())};
}

// ---------------------------------------------------------------------------
// Family ids

void HTypeFamilyId::validate() const {
  switch (kind) {
    case FamilyKind::H:
      if (params.size() != 1 || params[0] < 1) throw std::invalid_argument("h_n needs n >= 1");
      if (tag == DivisionTag::O && params[0] != 1) throw std::invalid_argument("h_n(O) exists only for n = 1");
      break;
    case FamilyKind::HPrime:
      if (params.size() != 2 || params[0] + params[1] < 1) {
        throw std::invalid_argument("h'_{p,q} needs p + q >= 1");
      }
      if (tag == DivisionTag::R) throw std::invalid_argument("h'_{p,q}(R) is abelian (Im R = 0)");
      if (tag == DivisionTag::O && !(params[0] == 1 && params[1] == 0)) {
        throw std::invalid_argument("h'_{p,q}(O) exists only for (p, q) = (1, 0)");
      }
      break;
    case FamilyKind::Other:
      break;
  }
}

std::string HTypeFamilyId::to_string() const {
  switch (kind) {
    case FamilyKind::H:
      return "h_" + std::to_string(params.at(0)) + "(" + nilrad::to_string(tag) + ")";
    case FamilyKind::HPrime:
      return "h'_{" + std::to_string(params.at(0)) + "," + std::to_string(params.at(1)) + "}(" +
             nilrad::to_string(tag) + ")";
    case FamilyKind::Other:
      return "other";
  }
  return "?";
}

bool HTypeFamilyId::same_family(const HTypeFamilyId& other) const {
  if (kind != other.kind) return false;
  if (kind == FamilyKind::Other) return true;
  if (tag != other.tag) return false;
  if (kind == FamilyKind::HPrime && params.size() == 2 && other.params.size() == 2) {
    // Over C every h'_{p,q} is the Heisenberg algebra of dimension 2(p+q)+1.
    if (tag == DivisionTag::C) return params[0] + params[1] == other.params[0] + other.params[1];
    return params == other.params || (params[0] == other.params[1] && params[1] == other.params[0]);
  }
  return params == other.params;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

using FVec = std::vector<DivisionElement>;

// The F-vector with unit e_unit in slot `slot` and zeros elsewhere.
FVec unit_fvec(DivisionTag tag, std::size_t len, std::size_t slot, std::size_t unit) {
  FVec v(len, DivisionElement(tag));
  v[slot] = DivisionElement::unit(tag, unit);
  return v;
}

DivisionElement fdot(const FVec& x, const FVec& y, DivisionTag tag) {
  DivisionElement s(tag);
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i];
  return s;
}

FVec fconj(const FVec& x) {
  FVec out;
  for (const auto& e : x) out.push_back(conj(e));
  return out;
}

}  // namespace

MetricStructure make_h(DivisionTag tag, std::size_t n) {
  HTypeFamilyId{FamilyKind::H, tag, {n}}.validate();
  const std::size_t d = dimension(tag);
  const std::size_t dim_v = 2 * n * d;
  TwoStepAlgebra alg("h_" + std::to_string(n) + "(" + to_string(tag) + ")", dim_v, d);
  // Basis vector index → (a, b) pair of F^n vectors.
  auto element = [&](std::size_t idx) {
    const bool in_b = idx >= n * d;
    const std::size_t local = in_b ? idx - n * d : idx;
    FVec zero(n, DivisionElement(tag));
    FVec unit = unit_fvec(tag, n, local / d, local % d);
    return in_b ? std::pair{zero, unit} : std::pair{unit, zero};
  };
  for (std::size_t i = 0; i < dim_v; ++i) {
    const auto [a, b] = element(i);
    for (std::size_t j = i + 1; j < dim_v; ++j) {
      const auto [c, dd] = element(j);
      // [(a, b), (c, d)] = aᵗd − cᵗb
      const DivisionElement value = fdot(a, dd, tag) - fdot(c, b, tag);
      if (!value.is_zero()) alg.set_bracket(i, j, value.coords());
    }
  }
  return MetricStructure::standard(std::move(alg));
}

MetricStructure make_h_prime(DivisionTag tag, std::size_t p, std::size_t q) {
  HTypeFamilyId{FamilyKind::HPrime, tag, {p, q}}.validate();
  const std::size_t d = dimension(tag);
  const std::size_t dim_v = (p + q) * d;
  TwoStepAlgebra alg("h'_{" + std::to_string(p) + "," + std::to_string(q) + "}(" + to_string(tag) + ")",
                     dim_v, d - 1);
  auto element = [&](std::size_t idx) {
    const bool in_b = idx >= p * d;
    const std::size_t local = in_b ? idx - p * d : idx;
    FVec a(p, DivisionElement(tag)), b(q, DivisionElement(tag));
    if (in_b) b = unit_fvec(tag, q, local / d, local % d);
    else a = unit_fvec(tag, p, local / d, local % d);
    return std::pair{a, b};
  };
  for (std::size_t i = 0; i < dim_v; ++i) {
    const auto [a, b] = element(i);
    for (std::size_t j = i + 1; j < dim_v; ++j) {
      const auto [c, dd] = element(j);
      // [(a, b), (c, d)] = aᵗc̄ − cᵗā − (b̄ᵗd − d̄ᵗb)
      const DivisionElement value = fdot(a, fconj(c), tag) - fdot(c, fconj(a), tag) -
                                    (fdot(fconj(b), dd, tag) - fdot(fconj(dd), b, tag));
      if (re(value) != 0) throw std::logic_error("h' bracket left Im F");
      if (value.is_zero()) continue;
      alg.set_bracket(i, j, Vector(value.coords().begin() + 1, value.coords().end()));
    }
  }
  return {std::move(alg), Rational(2) * Matrix::identity(dim_v), Matrix::identity(d - 1)};
}

namespace {

// Matrix of x ↦ u·x on F.
Matrix left_multiplication(const DivisionElement& u) {
  const std::size_t d = u.dim();
  Matrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = mul(u, DivisionElement::unit(u.tag(), j));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

// Anticommuting orthogonal J_1..J_m with J_k² = −Id on an irreducible
// C(m)-module.
std::vector<Matrix> irreducible_clifford_generators(std::size_t m) {
  std::vector<Matrix> gens;
  if (m == 8) {
    const auto h1o = make_h(DivisionTag::O, 1);
    for (std::size_t k = 0; k < 8; ++k) gens.push_back(jz(h1o, unit_vector(8, k)));
    return gens;
  }
  const DivisionTag tag = m == 1 ? DivisionTag::C : m <= 3 ? DivisionTag::H : DivisionTag::O;
  for (std::size_t k = 1; k <= m; ++k) gens.push_back(left_multiplication(DivisionElement::unit(tag, k)));
  return gens;
}

}  // namespace

MetricStructure make_clifford_module_algebra(std::size_t center_dim,
                                             const std::vector<std::size_t>& multiplicities) {
  if (center_dim < 1 || center_dim > 8) throw std::invalid_argument("center dimension must be in 1..8");
  if (multiplicities.empty() || multiplicities.size() > 2) {
    throw std::invalid_argument("multiplicities must list one or two module counts");
  }
  if (multiplicities.size() == 2 && center_dim % 4 != 3) {
    throw std::invalid_argument("two inequivalent irreducible modules exist only for m = 3 mod 4");
  }
  std::size_t copies = 0;
  for (auto c : multiplicities) copies += c;
  if (copies == 0) throw std::invalid_argument("zero module");

  const auto base = irreducible_clifford_generators(center_dim);
  const std::size_t block = base.front().rows();
  const std::size_t dim_v = block * copies;
  std::vector<Matrix> gens(center_dim, Matrix(dim_v, dim_v));
  std::size_t offset = 0;
  std::ostringstream name;
  name << "clifford(" << center_dim << ";";
  for (std::size_t type = 0; type < multiplicities.size(); ++type) {
    name << (type ? "," : "") << multiplicities[type];
    const Rational sign = type == 0 ? 1 : -1;
    for (std::size_t c = 0; c < multiplicities[type]; ++c, offset += block) {
      for (std::size_t k = 0; k < center_dim; ++k)
        for (std::size_t i = 0; i < block; ++i)
          for (std::size_t j = 0; j < block; ++j) gens[k](offset + i, offset + j) = sign * base[k](i, j);
    }
  }
  name << ")";
  TwoStepAlgebra alg(name.str(), dim_v, center_dim);
  // [e_a, e_b]_k = ⟨J_k e_a, e_b⟩ = (J_k)_{ba}
  for (std::size_t a = 0; a < dim_v; ++a) {
    for (std::size_t b = a + 1; b < dim_v; ++b) {
      Vector value(center_dim);
      for (std::size_t k = 0; k < center_dim; ++k) value[k] = gens[k](b, a);
      if (!is_zero(value)) alg.set_bracket(a, b, value);
    }
  }
  auto ms = MetricStructure::standard(std::move(alg));
  if (!is_htype(ms)) throw std::logic_error("Clifford module construction is not H-type");
  return ms;
}

// ---------------------------------------------------------------------------
// J_z

Matrix jz(const MetricStructure& ms, std::span<const Rational> z) {
  const auto& alg = ms.algebra();
  if (z.size() != alg.dim_z()) throw std::invalid_argument("z has wrong dimension");
  const Vector gz = ms.gram_z() * z;
  const std::size_t n = alg.dim_v();
  // C_ab = ⟨[e_a, e_b], z⟩ and J = −gramV⁻¹ C.
  Matrix c(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      Rational s = 0;
      for (std::size_t k = 0; k < alg.dim_z(); ++k) {
        if (gz[k] != 0) s += alg.constant(a, b, k) * gz[k];
      }
      c(a, b) = s;
    }
  const auto inv = inverse(ms.gram_v());
  return Rational(-1) * (*inv * c);
}

namespace {

std::vector<Matrix> basis_jz(const MetricStructure& ms) {
  std::vector<Matrix> js;
  for (std::size_t k = 0; k < ms.algebra().dim_z(); ++k) js.push_back(jz(ms, unit_vector(ms.algebra().dim_z(), k)));
  return js;
}

}  // namespace

bool is_htype(const MetricStructure& ms) {
  const auto& alg = ms.algebra();
  if (alg.dim_z() == 0 || alg.dim_v() == 0) return false;
  const auto js = basis_jz(ms);
  const Matrix id = Matrix::identity(alg.dim_v());
  for (std::size_t i = 0; i < js.size(); ++i) {
    for (std::size_t j = i; j < js.size(); ++j) {
      const Matrix anti = js[i] * js[j] + js[j] * js[i];
      if (anti != Rational(-2 * ms.gram_z()(i, j)) * id) return false;
    }
  }
  return true;
}

NonsingularVerdict is_nonsingular(const MetricStructure& ms, const NonsingularOptions& options) {
  if (is_htype(ms)) {
    return NonSingular{
        "H-type: J_z^2 = -|z|^2 Id, so <[x,y],z> = <J_z x,y> is nonzero for y = J_z x whenever x, z != 0; "
        "ad x is onto n^-2 for every x outside the center"};
  }
  return is_nonsingular(ms.algebra(), options);
}

// ---------------------------------------------------------------------------
// Transfer operator

namespace {

std::vector<BigFloat> float_bracket(const TwoStepAlgebra& alg, const std::vector<BigFloat>& x,
                                    const std::vector<BigFloat>& y) {
  std::vector<BigFloat> out(alg.dim_z(), BigFloat(0));
  for (std::size_t i = 0; i < alg.dim_v(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < alg.dim_v(); ++j) {
      if (i == j || y[j] == 0) continue;
      const BigFloat xy = x[i] * y[j];
      for (std::size_t k = 0; k < alg.dim_z(); ++k) {
        const Rational& c = alg.constant(i, j, k);
        if (c != 0) out[k] += xy * to_bigfloat(c);
      }
    }
  }
  return out;
}

std::vector<BigFloat> float_column(const FloatMatrix& m, std::size_t j) {
  std::vector<BigFloat> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

// Positive square root of gram1⁻¹ gram2, self-adjoint for gram1.
FloatMatrix transfer_sqrt(const Matrix& gram1, const Matrix& gram2, unsigned bits) {
  const FloatMatrix g1(gram1), g2(gram2);
  const FloatMatrix l = cholesky(g1);
  const FloatMatrix linv = lower_triangular_inverse(l);
  FloatMatrix sym = linv * g2 * linv.transpose();
  for (std::size_t i = 0; i < sym.rows(); ++i)
    for (std::size_t j = i + 1; j < sym.cols(); ++j) {
      const BigFloat avg = (sym(i, j) + sym(j, i)) / 2;
      sym(i, j) = avg;
      sym(j, i) = avg;
    }
  const auto pairs = sym_eigen(sym, bits);
  const std::size_t n = sym.rows();
  FloatMatrix root(n, n);
  for (const auto& pair : pairs) {
    if (pair.value <= 0) throw std::invalid_argument("transfer matrix is not positive");
    const BigFloat s = sqrt(pair.value);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) root(i, j) += s * pair.vector[i] * pair.vector[j];
  }
  return linv.transpose() * root * l.transpose();
}

std::optional<Matrix> rationalize(const FloatMatrix& m) {
  const mpz_class bound = mpz_class(1) << 32;
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = approximate_rational(m(i, j), bound);
  return out;
}

// P is the positive gram-self-adjoint square root of gram1⁻¹ gram2.
bool verify_exact_root(const Matrix& p, const Matrix& gram1, const Matrix& gram2) {
  if (!(p.transpose() * gram1 * p == gram2)) return false;
  const Matrix gp = gram1 * p;
  return gp.is_symmetric() && is_positive_definite(gp);
}

BigFloat max_abs_diff(const FloatMatrix& a, const FloatMatrix& b) { return (a - b).max_abs(); }

}  // namespace

bool TransferReport::passed() const {
  return automorphism_residual <= tolerance && center_scalar_residual <= tolerance &&
         metric_residual <= tolerance && center_ratio_residual <= tolerance &&
         relation_residual <= tolerance;
}

TransferReport transfer_operator(const MetricStructure& ms1, const MetricStructure& ms2,
                                 unsigned precision_bits) {
  if (!(ms1.algebra() == ms2.algebra())) {
    throw std::invalid_argument("transfer: metrics live on different algebras");
  }
  if (!is_htype(ms1)) throw std::invalid_argument("transfer: first metric is not H-type");
  if (!is_htype(ms2)) throw std::invalid_argument("transfer: second metric is not H-type");
  PrecisionGuard guard(precision_bits);
  const auto& alg = ms1.algebra();

  TransferReport rep;
  rep.tolerance = tolerance_for(precision_bits);
  rep.p_v = transfer_sqrt(ms1.gram_v(), ms2.gram_v(), precision_bits);
  rep.p_z = transfer_sqrt(ms1.gram_z(), ms2.gram_z(), precision_bits);

  // Exact path: a rational square root, if there is one, is found by
  // rounding and confirmed by exact arithmetic.
  auto pv = rationalize(rep.p_v);
  auto pz = rationalize(rep.p_z);
  if (pv && pz && verify_exact_root(*pv, ms1.gram_v(), ms2.gram_v()) &&
      verify_exact_root(*pz, ms1.gram_z(), ms2.gram_z())) {
    rep.exact_p = GradedMap{*pv, *pz};
    rep.p_v = FloatMatrix(*pv);
    rep.p_z = FloatMatrix(*pz);
    const Rational lam = pz->trace() / Rational(static_cast<long>(alg.dim_z()));
    if (*pz == lam * Matrix::identity(alg.dim_z())) rep.exact_lambda = lam;
  }

  BigFloat tr = 0;
  for (std::size_t k = 0; k < alg.dim_z(); ++k) tr += rep.p_z(k, k);
  rep.lambda = tr / static_cast<long>(alg.dim_z());

  // (a) automorphism: P[e_i, e_j] = [P e_i, P e_j]
  rep.automorphism_residual = 0;
  for (std::size_t i = 0; i < alg.dim_v(); ++i) {
    const auto pi = float_column(rep.p_v, i);
    for (std::size_t j = i + 1; j < alg.dim_v(); ++j) {
      const auto lhs = float_bracket(alg, pi, float_column(rep.p_v, j));
      const Vector br = alg.basis_bracket(i, j);
      for (std::size_t k = 0; k < alg.dim_z(); ++k) {
        BigFloat rhs = 0;
        for (std::size_t l = 0; l < alg.dim_z(); ++l) {
          if (br[l] != 0) rhs += rep.p_z(k, l) * to_bigfloat(br[l]);
        }
        rep.automorphism_residual = std::max<BigFloat>(rep.automorphism_residual, abs(lhs[k] - rhs));
      }
    }
  }

  // (b) P on the center is λ Id
  rep.center_scalar_residual = max_abs_diff(rep.p_z, FloatMatrix(Matrix::identity(alg.dim_z())) * [&] {
    FloatMatrix s(alg.dim_z(), alg.dim_z());
    for (std::size_t k = 0; k < alg.dim_z(); ++k) s(k, k) = rep.lambda;
    return s;
  }());

  // (c) ⟨x, y⟩₂ = (Px, Py)₁
  const FloatMatrix g1v(ms1.gram_v()), g1z(ms1.gram_z()), g2v(ms2.gram_v()), g2z(ms2.gram_z());
  rep.metric_residual = std::max<BigFloat>(max_abs_diff(rep.p_v.transpose() * g1v * rep.p_v, g2v),
                                           max_abs_diff(rep.p_z.transpose() * g1z * rep.p_z, g2z));

  // gramZ₂ = λ² gramZ₁
  rep.center_ratio_residual = 0;
  for (std::size_t i = 0; i < alg.dim_z(); ++i)
    for (std::size_t j = 0; j < alg.dim_z(); ++j)
      rep.center_ratio_residual = std::max<BigFloat>(
          rep.center_ratio_residual, abs(g2z(i, j) - rep.lambda * rep.lambda * g1z(i, j)));

  // P² K_z = J_{P² z}, with K from the second metric and J from the first.
  rep.relation_residual = 0;
  const FloatMatrix pv2 = rep.p_v * rep.p_v;
  const FloatMatrix pz2 = rep.p_z * rep.p_z;
  std::vector<FloatMatrix> j1;
  for (std::size_t k = 0; k < alg.dim_z(); ++k) j1.emplace_back(jz(ms1, unit_vector(alg.dim_z(), k)));
  for (std::size_t k = 0; k < alg.dim_z(); ++k) {
    const FloatMatrix lhs = pv2 * FloatMatrix(jz(ms2, unit_vector(alg.dim_z(), k)));
    FloatMatrix rhs(alg.dim_v(), alg.dim_v());
    for (std::size_t l = 0; l < alg.dim_z(); ++l) {
      const BigFloat w = pz2(l, k);
      if (w == 0) continue;
      for (std::size_t a = 0; a < alg.dim_v(); ++a)
        for (std::size_t b = 0; b < alg.dim_v(); ++b) rhs(a, b) += w * j1[l](a, b);
    }
    rep.relation_residual = std::max<BigFloat>(rep.relation_residual, max_abs_diff(lhs, rhs));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// σ automorphisms

GradedMap sigma_automorphism(const MetricStructure& ms, std::span<const Rational> z) {
  const auto& alg = ms.algebra();
  if (z.size() != alg.dim_z()) throw std::invalid_argument("z has wrong dimension");
  const Vector gz = ms.gram_z() * z;
  if (dot(z, gz) != 1) throw std::invalid_argument("sigma automorphism needs a unit vector z");
  GradedMap f;
  f.map_v = jz(ms, z);
  f.map_z = Matrix(alg.dim_z(), alg.dim_z());
  for (std::size_t i = 0; i < alg.dim_z(); ++i)
    for (std::size_t j = 0; j < alg.dim_z(); ++j) f.map_z(i, j) = 2 * z[i] * gz[j] - (i == j ? 1 : 0);
  if (auto bad = automorphism_violation(alg, f)) {
    throw std::logic_error("sigma automorphism check failed at basis pair (" + std::to_string(bad->i) + ", " +
                           std::to_string(bad->j) + ")");
  }
  return f;
}

std::vector<GradedMap> sigma_generators(const MetricStructure& ms) {
  std::vector<GradedMap> out;
  const std::size_t dz = ms.algebra().dim_z();
  for (std::size_t k = 0; k < dz; ++k) {
    if (ms.gram_z()(k, k) == 1) out.push_back(sigma_automorphism(ms, unit_vector(dz, k)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Swap automorphism

namespace {

bool contained_in(const std::vector<Vector>& basis, const Vector& v) {
  std::vector<Vector> all = basis;
  all.push_back(v);
  return span_basis(all).size() == span_basis(basis).size();
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto r = span_basis(all).size();
  return r == span_basis(a).size() && r == span_basis(b).size();
}

std::optional<GradedMap> assemble_swap(const MetricStructure& ms, const std::vector<Vector>& v1,
                                       const std::vector<Vector>& v2, const GradedMap& theta) {
  const std::size_t n = ms.algebra().dim_v();
  std::vector<Vector> source;  // B = [B1 | B2 | Bc]
  std::vector<Vector> image;   // Θ B
  const bool equal = same_span(v1, v2);
  for (const auto& b : v1) {
    source.push_back(b);
    image.push_back(theta.map_v * b);
  }
  if (!equal) {
    // θ B1 = B2 T, so θ⁻¹ B2 = B1 T⁻¹.
    const Matrix b2 = Matrix::from_columns(v2, n);
    Matrix t(v2.size(), v1.size());
    for (std::size_t c = 0; c < v1.size(); ++c) {
      auto col = solve(b2, theta.map_v * v1[c]);
      if (!col) return std::nullopt;
      for (std::size_t r = 0; r < v2.size(); ++r) t(r, c) = (*col)[r];
    }
    const auto tinv = inverse(t);
    if (!tinv) return std::nullopt;
    const Matrix b1 = Matrix::from_columns(v1, n);
    const Matrix back = b1 * *tinv;
    for (std::size_t c = 0; c < v2.size(); ++c) {
      source.push_back(v2[c]);
      image.push_back(back.column(c));
    }
  }
  // Orthogonal complement of v1 + v2 for gramV.
  Matrix constraints(source.size(), n);
  for (std::size_t r = 0; r < source.size(); ++r) {
    const Vector g = ms.gram_v() * source[r];
    for (std::size_t c = 0; c < n; ++c) constraints(r, c) = g[c];
  }
  for (auto& w : nullspace(constraints)) {
    source.push_back(w);
    image.push_back(w);
  }
  const auto binv = inverse(Matrix::from_columns(source, n));
  if (!binv) return std::nullopt;
  return GradedMap{Matrix::from_columns(image, n) * *binv, theta.map_z};
}

}  // namespace

SwapResult build_swap_automorphism(const MetricStructure& ms, const std::vector<Vector>& v1,
                                   const std::vector<Vector>& v2, const GradedMap& theta,
                                   std::size_t search_depth) {
  const auto& alg = ms.algebra();
  const std::size_t n = alg.dim_v();
  if (v1.empty() || v1.size() != v2.size()) throw std::invalid_argument("v1 and v2 must have equal positive dimension");
  if (span_basis(v1).size() != v1.size() || span_basis(v2).size() != v2.size()) {
    throw std::invalid_argument("v1 and v2 must be given by linearly independent vectors");
  }
  const auto js = basis_jz(ms);
  for (const auto* space : {&v1, &v2}) {
    for (const auto& b : *space) {
      for (const auto& j : js) {
        if (!contained_in(*space, j * b)) throw std::invalid_argument("subspace is not Clifford-invariant");
      }
    }
  }
  if (!same_span(v1, v2)) {
    for (const auto& a : v1)
      for (const auto& b : v2)
        if (dot(a, ms.gram_v() * b) != 0) throw std::invalid_argument("v1 and v2 are not orthogonal");
  }
  // θ: isometric isomorphism v1 ⊕ n⁻² → v2 ⊕ n⁻².
  if (theta.map_v.rows() != n || theta.map_v.cols() != n) throw std::invalid_argument("theta has wrong shape");
  std::vector<Vector> images;
  for (const auto& b : v1) {
    images.push_back(theta.map_v * b);
    if (!contained_in(v2, images.back())) throw std::invalid_argument("theta does not map v1 into v2");
  }
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = 0; j < v1.size(); ++j) {
      if (dot(images[i], ms.gram_v() * images[j]) != dot(v1[i], ms.gram_v() * v1[j])) {
        throw std::invalid_argument("theta is not isometric on v1");
      }
      if (alg.bracket_v(images[i], images[j]) != theta.map_z * alg.bracket_v(v1[i], v1[j])) {
        throw std::invalid_argument("theta is not a homomorphism on v1 + n^-2");
      }
    }
  }
  if (!(theta.map_z.transpose() * ms.gram_z() * theta.map_z == ms.gram_z())) {
    throw std::invalid_argument("theta is not isometric on the center");
  }

  SwapResult result;
  auto first = assemble_swap(ms, v1, v2, theta);
  if (!first) throw std::invalid_argument("could not assemble the swap map");
  result.violation = automorphism_violation(alg, *first);
  if (!result.violation) {
    result.map = std::move(first);
    return result;
  }

  std::vector<std::pair<std::size_t, GradedMap>> sigmas;
  for (std::size_t k = 0; k < alg.dim_z(); ++k) {
    if (ms.gram_z()(k, k) == 1) sigmas.emplace_back(k, sigma_automorphism(ms, unit_vector(alg.dim_z(), k)));
  }
  // Breadth-first over σ words.
  std::vector<std::pair<std::vector<std::size_t>, GradedMap>> frontier{{{}, theta}};
  for (std::size_t depth = 1; depth <= search_depth; ++depth) {
    std::vector<std::pair<std::vector<std::size_t>, GradedMap>> next;
    for (const auto& [word, map] : frontier) {
      for (const auto& [k, sigma] : sigmas) {
        auto w = word;
        w.push_back(k);
        GradedMap corrected = compose(map, sigma);
        auto candidate = assemble_swap(ms, v1, v2, corrected);
        if (candidate && is_automorphism(alg, *candidate)) {
          result.map = std::move(candidate);
          result.sigma_word = std::move(w);
          return result;
        }
        next.emplace_back(std::move(w), std::move(corrected));
      }
    }
    frontier = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Irreducibility

namespace {

std::vector<Vector> orbit_span(const std::vector<Matrix>& gens, const Vector& start) {
  std::vector<Vector> basis{start};
  for (std::size_t next = 0; next < basis.size(); ++next) {
    for (const auto& g : gens) {
      Vector w = g * basis[next];
      if (!contained_in(basis, w)) basis.push_back(std::move(w));
    }
  }
  return basis;
}

bool is_invariant(const std::vector<Matrix>& gens, const std::vector<Vector>& space) {
  for (const auto& g : gens)
    for (const auto& b : space)
      if (!contained_in(space, g * b)) return false;
  return true;
}

}  // namespace

IrreducibilityVerdict irreducibility_probe(const MetricStructure& ms, const std::vector<GradedMap>& generators,
                                           std::size_t trials, std::uint64_t seed) {
  const auto& alg = ms.algebra();
  const std::size_t n = alg.dim_v();
  std::vector<Matrix> gens;
  for (const auto& g : generators) {
    if (!is_automorphism(alg, g)) throw std::invalid_argument("generator is not an automorphism");
    if (!(g.map_v.transpose() * ms.gram_v() * g.map_v == ms.gram_v())) {
      throw std::invalid_argument("generator is not orthogonal on n^-1");
    }
    gens.push_back(g.map_v);
  }

  // Orbit closures of basis vectors and random vectors.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<Vector> starts;
  for (std::size_t i = 0; i < n; ++i) starts.push_back(unit_vector(n, i));
  for (std::size_t t = 0; t < trials; ++t) {
    Vector v(n);
    for (auto& c : v) c = coeff(rng);
    if (!is_zero(v)) starts.push_back(std::move(v));
  }
  bool random_orbit_spans = false;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    auto w = orbit_span(gens, starts[s]);
    if (w.size() < n && is_invariant(gens, w)) return Reducible{std::move(w)};
    if (s >= n && w.size() == n) random_orbit_spans = true;
  }

  // Commutant of the generators, and its gramV-self-adjoint part.
  // Unknown X is n×n, flattened row-major.
  const std::size_t unknowns = n * n;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<std::size_t, Rational>> row;
        for (std::size_t k = 0; k < n; ++k) {
          if (g(k, j) != 0) row.emplace_back(i * n + k, g(k, j));      // (X g)_ij
          if (g(i, k) != 0) row.emplace_back(k * n + j, -g(i, k));     // −(g X)_ij
        }
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  const Matrix& gv = ms.gram_v();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::pair<std::size_t, Rational>> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (gv(i, k) != 0) row.emplace_back(k * n + j, gv(i, k));   // (G X)_ij
        if (gv(j, k) != 0) row.emplace_back(k * n + i, -gv(j, k));  // −(G X)_ji
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  Matrix system(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) system(r, c) += v;
  const auto symmetric_commutant = nullspace(system);

  if (symmetric_commutant.size() <= 1) {
    if (random_orbit_spans) {
      return Irreducible{"orbit of a random vector spans n^-1 and the self-adjoint commutant is the scalars"};
    }
    return IrreducibilityUnknown{"self-adjoint commutant is scalar but no random orbit spanned n^-1"};
  }

  // A self-adjoint non-scalar S commuting with the generators: its rational
  // eigenspaces are invariant.
  PrecisionGuard guard(kDefaultPrecisionBits);
  for (const auto& flat : symmetric_commutant) {
    const Matrix s(n, n, flat);
    const Rational c0 = s(0, 0);
    if (s == c0 * Matrix::identity(n)) continue;
    const Matrix gs = gv * s;
    const FloatMatrix l = cholesky(FloatMatrix(gv));
    const FloatMatrix linv = lower_triangular_inverse(l);
    FloatMatrix sym = linv * FloatMatrix(gs) * linv.transpose();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sym(j, i) = sym(i, j);
    for (const auto& pair : sym_eigen(sym)) {
      const Rational c = approximate_rational(pair.value, mpz_class(1000000));
      auto kernel = nullspace(s - c * Matrix::identity(n));
      if (!kernel.empty() && kernel.size() < n && is_invariant(gens, kernel)) return Reducible{std::move(kernel)};
    }
  }
  return IrreducibilityUnknown{"self-adjoint commutant has dimension " + std::to_string(symmetric_commutant.size()) +
                               " but no rational invariant subspace was extracted"};
}

// ---------------------------------------------------------------------------
// Family identification

HTypeFamilyId identify_family(const MetricStructure& ms) {
  if (!is_htype(ms)) throw std::invalid_argument("identify_family needs an H-type metric");
  const auto& alg = ms.algebra();
  const std::size_t dv = alg.dim_v();
  const std::size_t dz = alg.dim_z();
  switch (dz) {
    case 1:
      return {FamilyKind::HPrime, DivisionTag::C, {dv / 2, 0}};
    case 2:
      return {FamilyKind::H, DivisionTag::C, {dv / 4}};
    case 3: {
      // Orthogonal basis u_i of the center (Gram-Schmidt over Q) and the
      // volume element ω = J_{u1} J_{u2} J_{u3} / (|u1||u2||u3|), ω² = Id.
      std::vector<Vector> u;
      for (std::size_t k = 0; k < 3; ++k) {
        Vector w = unit_vector(3, k);
        for (const auto& prev : u) {
          const Rational f = dot(w, ms.gram_z() * prev) / dot(prev, ms.gram_z() * prev);
          w = sub(w, scale(f, prev));
        }
        u.push_back(std::move(w));
      }
      const Matrix vol = jz(ms, u[0]) * jz(ms, u[1]) * jz(ms, u[2]);
      Rational norms = 1;
      for (const auto& w : u) norms *= dot(w, ms.gram_z() * w);
      const Rational t = vol.trace();
      const Rational s2 = t * t / norms;  // (tr ω)²
      mpz_class num = s2.get_num(), root;
      if (s2.get_den() != 1 || !mpz_perfect_square_p(num.get_mpz_t())) {
        throw std::logic_error("volume element trace is not an integer");
      }
      mpz_sqrt(root.get_mpz_t(), num.get_mpz_t());
      const long s = root.get_si() * (t < 0 ? -1 : 1);
      const long plus = (static_cast<long>(dv) + s) / 2;
      const long minus = static_cast<long>(dv) - plus;
      return {FamilyKind::HPrime, DivisionTag::H,
              {static_cast<std::size_t>(plus / 4), static_cast<std::size_t>(minus / 4)}};
    }
    case 4:
      if (dv % 8 == 0) return {FamilyKind::H, DivisionTag::H, {dv / 8}};
      break;
    case 7:
      if (dv == 8) return {FamilyKind::HPrime, DivisionTag::O, {1, 0}};
      break;
    case 8:
      if (dv == 16) return {FamilyKind::H, DivisionTag::O, {1}};
      break;
    default:
      break;
  }
  return {FamilyKind::Other, DivisionTag::R, {}};
}

}  // namespace nilrad
