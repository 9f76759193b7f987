#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "nilrad/htype.hpp"

using namespace nilrad;
using nilrad::testing::Gen;

namespace {

const DivisionTag R = DivisionTag::R, C = DivisionTag::C, H = DivisionTag::H, O = DivisionTag::O;

// Every constructor output small enough for exhaustive checks.
std::vector<MetricStructure> fleet() {
  std::vector<MetricStructure> out;
  for (std::size_t n = 1; n <= 2; ++n)
    for (auto tag : {R, C, H}) out.push_back(make_h(tag, n));
  out.push_back(make_h(O, 1));
  for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {2, 0}, {1, 1}, {2, 1}}) {
    out.push_back(make_h_prime(C, p, q));
    out.push_back(make_h_prime(H, p, q));
  }
  out.push_back(make_h_prime(O, 1, 0));
  return out;
}

// Matrix of the R-linear map F → F, x ↦ f(x).
template <class F>
Matrix real_matrix(DivisionTag tag, F f) {
  const std::size_t d = dimension(tag);
  Matrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = f(DivisionElement::unit(tag, j));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

// (a, b) ↦ (s·u a v, t·v̄ b w), z ↦ s t |v|² u z w: an automorphism of h_1(H).
GradedMap random_h1h_automorphism(Gen& g) {
  const auto u = g.nonzero_element(H), v = g.nonzero_element(H), w = g.nonzero_element(H);
  const Rational s = g.nonzero_rational(3, 2), t = g.nonzero_rational(3, 2);
  const Matrix ma = real_matrix(H, [&](const DivisionElement& a) { return s * (u * a * v); });
  const Matrix mb = real_matrix(H, [&](const DivisionElement& b) { return t * (conj(v) * b * w); });
  const Rational c = s * t * norm(v);
  const Matrix mz = real_matrix(H, [&](const DivisionElement& z) { return c * (u * z * w); });
  Matrix mv(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      mv(i, j) = ma(i, j);
      mv(4 + i, 4 + j) = mb(i, j);
    }
  return {mv, mz};
}

Matrix permutation(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& swaps) {
  Matrix m = Matrix::identity(n);
  for (auto [a, b] : swaps) {
    m(a, a) = 0;
    m(b, b) = 0;
    m(a, b) = 1;
    m(b, a) = 1;
  }
  return m;
}

std::vector<Vector> units(std::size_t n, std::size_t from, std::size_t count) {
  std::vector<Vector> out;
  for (std::size_t i = from; i < from + count; ++i) out.push_back(unit_vector(n, i));
  return out;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return span_basis(all).size() == span_basis(a).size() && span_basis(a).size() == span_basis(b).size();
}

bool is_block_witness(const IrreducibilityVerdict& v, const std::vector<std::vector<Vector>>& blocks) {
  const auto* r = std::get_if<Reducible>(&v);
  if (!r) return false;
  for (const auto& b : blocks)
    if (same_span(r->invariant_subspace, b)) return true;
  return false;
}

}  // namespace

TEST_CASE("constructor dimensions") {
  const auto heis = make_h(R, 1);
  CHECK(heis.algebra().dim_v() == 2);
  CHECK(heis.algebra().dim_z() == 1);
  CHECK(make_h(O, 1).algebra().dim_v() == 16);
  CHECK(make_h(O, 1).algebra().dim_z() == 8);
  const auto h2h = make_h(H, 2);
  CHECK(h2h.algebra().dim_v() == 16);
  CHECK(h2h.algebra().dim_z() == 4);
  CHECK(is_htype(h2h));

  for (std::size_t n = 1; n <= 3; ++n) {
    const auto c = make_h_prime(C, n, 0).algebra();
    CHECK(c.dim() == 2 * n + 1);
  }
  CHECK(make_h_prime(H, 2, 1).algebra().dim_v() == 12);
  CHECK(make_h_prime(H, 2, 1).algebra().dim_z() == 3);
  CHECK(make_h_prime(O, 1, 0).algebra().dim_v() == 8);
  CHECK(make_h_prime(O, 1, 0).algebra().dim_z() == 7);
}

TEST_CASE("constructor parameter errors") {
  CHECK_THROWS_AS(make_h(O, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_h(C, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_h_prime(R, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_h_prime(O, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_h_prime(O, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_h_prime(H, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_clifford_module_algebra(5, {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_clifford_module_algebra(5, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_clifford_module_algebra(0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_clifford_module_algebra(9, {1}), std::invalid_argument);
}

TEST_CASE("h bracket matches the quaternion formula coordinatewise") {
  const auto alg = make_h(H, 1).algebra();
  // [(e_i, 0), (0, e_j)] = e_i e_j
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const auto up = unit_product(H, i, j);
      Vector expected(4);
      expected[up.index] = up.sign;
      CHECK(alg.basis_bracket(i, 4 + j) == expected);
    }
  // Nothing within a block.
  CHECK(is_zero(alg.basis_bracket(0, 1)));
  CHECK(is_zero(alg.basis_bracket(5, 6)));
}

TEST_CASE("Clifford module constructions") {
  const auto m5 = make_clifford_module_algebra(5, {1});
  CHECK(m5.algebra().dim_v() == 8);
  CHECK(m5.algebra().dim_z() == 5);
  CHECK(is_htype(m5));

  const auto m7 = make_clifford_module_algebra(7, {2});
  CHECK(m7.algebra().dim_v() == 16);
  CHECK(m7.algebra().dim_z() == 7);
  CHECK(identify_family(m7).kind == FamilyKind::Other);

  const auto m1 = make_clifford_module_algebra(1, {1});
  CHECK(m1.algebra().dim_v() == 2);
  CHECK(identify_family(m1).same_family({FamilyKind::HPrime, C, {1, 0}}));

  for (std::size_t m = 1; m <= 8; ++m) CHECK(is_htype(make_clifford_module_algebra(m, {1})));
  CHECK(identify_family(make_clifford_module_algebra(3, {1, 1})).same_family({FamilyKind::HPrime, H, {1, 1}}));
}

TEST_CASE("every constructor output is H-type") {
  for (const auto& ms : fleet()) {
    INFO(ms.algebra().name());
    CHECK(is_htype(ms));
  }
}

TEST_CASE("H-type negatives") {
  const auto heis = make_h(R, 1);
  const MetricStructure skewed(heis.algebra(), Matrix::diagonal(Vector{1, 4}), Matrix::identity(1));
  CHECK_FALSE(is_htype(skewed));
  CHECK_FALSE(is_htype(MetricStructure::standard(free_two_step(3))));
  CHECK_FALSE(is_htype(MetricStructure::standard(TwoStepAlgebra("abelian", 3, 0))));
}

TEST_CASE("metric validation") {
  const auto alg = make_h(R, 1).algebra();
  CHECK_THROWS_AS(MetricStructure(alg, Matrix::identity(3), Matrix::identity(1)), std::invalid_argument);
  CHECK_THROWS_AS(MetricStructure(alg, Matrix::diagonal(Vector{1, -1}), Matrix::identity(1)), std::invalid_argument);
  Matrix nonsym = Matrix::identity(2);
  nonsym(0, 1) = 1;
  CHECK_THROWS_AS(MetricStructure(alg, nonsym, Matrix::identity(1)), std::invalid_argument);
}

TEST_CASE("J_z examples") {
  const auto c1 = make_h_prime(C, 1, 0);
  const Matrix j = jz(c1, Vector{1});
  CHECK(j * j == Rational(-1) * Matrix::identity(2));
  CHECK(jz(c1, Vector{0}).is_zero());

  const auto m7 = make_clifford_module_algebra(7, {2});
  for (std::size_t k = 0; k < 7; ++k) {
    const Matrix jk = jz(m7, unit_vector(7, k));
    CHECK(jk * jk == Rational(-1) * Matrix::identity(16));
  }
  CHECK_THROWS_AS(jz(c1, Vector{1, 0}), std::invalid_argument);
}

TEST_CASE("J_z is skew, satisfies the Clifford relations and the defining identity") {
  Gen g(31);
  for (const auto& ms : fleet()) {
    INFO(ms.algebra().name());
    const auto& alg = ms.algebra();
    for (int t = 0; t < 4; ++t) {
      const Vector z = g.vector(alg.dim_z()), w = g.vector(alg.dim_z());
      const Matrix jzm = jz(ms, z), jwm = jz(ms, w);
      const Matrix gj = ms.gram_v() * jzm;
      CHECK(gj.transpose() == Rational(-1) * gj);
      const Rational zw = dot(z, ms.gram_z() * w);
      CHECK(jzm * jwm + jwm * jzm == Rational(-2 * zw) * Matrix::identity(alg.dim_v()));
      const Vector x = g.vector(alg.dim_v()), y = g.vector(alg.dim_v());
      CHECK(dot(ms.gram_z() * alg.bracket_v(x, y), z) == dot(ms.gram_v() * (jzm * x), y));
    }
  }
}

TEST_CASE("H-type metrics carry the nonsingularity certificate") {
  for (const auto& ms : fleet()) CHECK(std::holds_alternative<NonSingular>(is_nonsingular(ms)));
  CHECK(std::holds_alternative<Singular>(is_nonsingular(MetricStructure::standard(free_two_step(3)))));
}

TEST_CASE("automorphism checks and pullbacks") {
  const auto ms = make_h(C, 1);
  const auto& alg = ms.algebra();
  CHECK(is_automorphism(alg, GradedMap::identity(alg)));
  CHECK(is_automorphism(alg, dilation(alg, 3)));
  CHECK(is_isometry(ms, GradedMap::identity(alg)));
  CHECK_FALSE(is_isometry(ms, dilation(alg, 3)));
  GradedMap bad = GradedMap::identity(alg);
  bad.map_z = Rational(2) * bad.map_z;
  const auto v = automorphism_violation(alg, bad);
  REQUIRE(v);
  CHECK(!is_zero(alg.basis_bracket(v->i, v->j)));
  const auto pulled = pullback(ms, dilation(alg, 2));
  CHECK(pulled.gram_v() == Rational(4) * ms.gram_v());
  CHECK(pulled.gram_z() == Rational(16) * ms.gram_z());
  CHECK(compose(dilation(alg, 2), dilation(alg, 3)) == dilation(alg, 6));
}

TEST_CASE("transfer of a metric to itself is the identity") {
  const auto ms = make_h(H, 1);
  const auto rep = transfer_operator(ms, ms);
  CHECK(rep.passed());
  REQUIRE(rep.exact_p);
  CHECK(*rep.exact_p == GradedMap::identity(ms.algebra()));
  REQUIRE(rep.exact_lambda);
  CHECK(*rep.exact_lambda == 1);
}

TEST_CASE("transfer of a dilated metric is the dilation") {
  const auto ms = make_h(H, 1);
  const auto rep = transfer_operator(ms, pullback(ms, dilation(ms.algebra(), 2)));
  CHECK(rep.passed());
  REQUIRE(rep.exact_p);
  CHECK(*rep.exact_p == dilation(ms.algebra(), 2));
  CHECK(*rep.exact_lambda == 4);
}

TEST_CASE("transfer recovers a known positive automorphism") {
  const auto ms = make_h_prime(C, 1, 0);
  const GradedMap a{Matrix::diagonal(Vector{2, Rational(1, 2)}), Matrix::identity(1)};
  REQUIRE(is_automorphism(ms.algebra(), a));
  const auto rep = transfer_operator(ms, pullback(ms, a));
  CHECK(rep.passed());
  REQUIRE(rep.exact_p);
  CHECK(*rep.exact_p == a);
}

TEST_CASE("transfer rejects non-H-type metrics") {
  const auto heis = make_h(R, 1);
  const MetricStructure skewed(heis.algebra(), Matrix::diagonal(Vector{1, 4}), Matrix::identity(1));
  CHECK_THROWS_AS(transfer_operator(heis, skewed), std::invalid_argument);
  CHECK_THROWS_AS(transfer_operator(skewed, heis), std::invalid_argument);
  CHECK_THROWS_AS(transfer_operator(heis, make_h(C, 1)), std::invalid_argument);
}

TEST_CASE("transfer between random H-type metrics on h_1(H)") {
  Gen g(32);
  const auto ms = make_h(H, 1);
  const BigFloat bound("1e-20");
  for (int t = 0; t < 10; ++t) {
    const auto f = compose(random_h1h_automorphism(g), dilation(ms.algebra(), g.nonzero_rational(3, 3)));
    REQUIRE(is_automorphism(ms.algebra(), f));
    const auto rep = transfer_operator(ms, pullback(ms, f));
    CHECK(rep.passed());
    CHECK(rep.automorphism_residual < bound);
    CHECK(rep.center_scalar_residual < bound);
    CHECK(rep.center_ratio_residual < bound);
    CHECK(rep.relation_residual < bound);
    CHECK(rep.lambda > 0);
  }
}

TEST_CASE("sigma automorphism examples") {
  const auto c1 = make_h_prime(C, 1, 0);
  const auto s = sigma_automorphism(c1, Vector{1});
  CHECK(s.map_z == Matrix::identity(1));

  const auto h11 = make_h_prime(H, 1, 1);
  const auto s1 = sigma_automorphism(h11, unit_vector(3, 0));
  CHECK(s1.map_z == Matrix::diagonal(Vector{1, -1, -1}));

  const auto h1o = make_h(O, 1);
  for (std::size_t k = 0; k < 8; ++k) CHECK(is_automorphism(h1o.algebra(), sigma_automorphism(h1o, unit_vector(8, k))));

  CHECK_THROWS_AS(sigma_automorphism(c1, Vector{2}), std::invalid_argument);
}

TEST_CASE("sigma automorphisms on the fleet are orthogonal automorphisms") {
  for (const auto& ms : fleet()) {
    INFO(ms.algebra().name());
    const auto gens = sigma_generators(ms);
    CHECK(gens.size() == ms.algebra().dim_z());
    for (const auto& s : gens) {
      CHECK(is_automorphism(ms.algebra(), s));
      CHECK(s.map_v.transpose() * ms.gram_v() * s.map_v == ms.gram_v());
      CHECK(s.map_z * s.map_z == Matrix::identity(ms.algebra().dim_z()));
    }
  }
}

TEST_CASE("swap of the two coordinate blocks of h_2(C)") {
  const auto ms = make_h(C, 2);
  // a = (a1, a2) at 0..3, b = (b1, b2) at 4..7; slot k is (a_k, b_k).
  const std::vector<Vector> v1{unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 4), unit_vector(8, 5)};
  const std::vector<Vector> v2{unit_vector(8, 2), unit_vector(8, 3), unit_vector(8, 6), unit_vector(8, 7)};
  const GradedMap theta{permutation(8, {{0, 2}, {1, 3}, {4, 6}, {5, 7}}), Matrix::identity(2)};
  const auto res = build_swap_automorphism(ms, v1, v2, theta);
  REQUIRE(res.map);
  CHECK(is_automorphism(ms.algebra(), *res.map));
  CHECK(is_isometry(ms, *res.map));
  CHECK(res.map->map_v * v1[0] == v2[0]);
  CHECK(res.map->map_v * v2[3] == v1[3]);

  GradedMap scaled = theta;
  scaled.map_v = Rational(2) * scaled.map_v;
  CHECK_THROWS_AS(build_swap_automorphism(ms, v1, v2, scaled), std::invalid_argument);

  // A non-invariant subspace.
  CHECK_THROWS_AS(build_swap_automorphism(ms, {unit_vector(8, 0)}, {unit_vector(8, 2)}, theta),
                  std::invalid_argument);
}

TEST_CASE("swap with v1 = v2 and theta = Id is the identity") {
  const auto ms = make_h(H, 1);
  const auto all = units(8, 0, 8);
  const auto res = build_swap_automorphism(ms, all, all, GradedMap::identity(ms.algebra()));
  REQUIRE(res.map);
  CHECK(*res.map == GradedMap::identity(ms.algebra()));
  CHECK(res.sigma_word.empty());
}

TEST_CASE("conjugating swap of h'_{1,1}(H)") {
  const auto ms = make_h_prime(H, 1, 1);
  // θ(a, b) = (b̄, ā), −Id on the center.
  Matrix tv(8, 8);
  for (std::size_t k = 0; k < 4; ++k) {
    const Rational s = k == 0 ? 1 : -1;
    tv(4 + k, k) = s;
    tv(k, 4 + k) = s;
  }
  const GradedMap theta{tv, Rational(-1) * Matrix::identity(3)};
  const auto res = build_swap_automorphism(ms, units(8, 0, 4), units(8, 4, 4), theta);
  REQUIRE(res.map);
  CHECK(res.map->map_v == tv);
  CHECK(is_automorphism(ms.algebra(), *res.map));

  auto gens = sigma_generators(ms);
  CHECK(std::holds_alternative<Reducible>(irreducibility_probe(ms, gens)));
  gens.push_back(*res.map);
  CHECK(std::holds_alternative<Irreducible>(irreducibility_probe(ms, gens)));
}

TEST_CASE("irreducibility examples") {
  const auto c1 = make_h_prime(C, 1, 0);
  CHECK(std::holds_alternative<Irreducible>(irreducibility_probe(c1, sigma_generators(c1))));
  const auto o = make_h_prime(O, 1, 0);
  CHECK(std::holds_alternative<Irreducible>(irreducibility_probe(o, sigma_generators(o))));
  const auto h1h = make_h(H, 1);
  CHECK(std::holds_alternative<Irreducible>(irreducibility_probe(h1h, sigma_generators(h1h))));

  // The empty group leaves every line invariant.
  CHECK(std::holds_alternative<Reducible>(irreducibility_probe(c1, {})));
  // Non-automorphisms are rejected.
  CHECK_THROWS_AS(irreducibility_probe(c1, {dilation(c1.algebra(), 2)}), std::invalid_argument);
}

TEST_CASE("two copies of the C(7)-module: blocks, then a swap") {
  const auto ms = make_clifford_module_algebra(7, {2});
  const std::vector<std::vector<Vector>> blocks{units(16, 0, 8), units(16, 8, 8)};
  auto gens = sigma_generators(ms);
  const auto alone = irreducibility_probe(ms, gens);
  CHECK(is_block_witness(alone, blocks));

  std::vector<std::pair<std::size_t, std::size_t>> swaps;
  for (std::size_t i = 0; i < 8; ++i) swaps.emplace_back(i, 8 + i);
  const GradedMap theta{permutation(16, swaps), Matrix::identity(7)};
  const auto res = build_swap_automorphism(ms, blocks[0], blocks[1], theta);
  REQUIRE(res.map);
  gens.push_back(*res.map);
  const auto with_swap = irreducibility_probe(ms, gens);
  CHECK_FALSE(is_block_witness(with_swap, blocks));
  if (const auto* r = std::get_if<Reducible>(&with_swap)) {
    for (const auto& g : gens)
      for (const auto& b : r->invariant_subspace) {
        std::vector<Vector> grown = r->invariant_subspace;
        grown.push_back(g.map_v * b);
        CHECK(span_basis(grown).size() == r->invariant_subspace.size());
      }
  }
}

TEST_CASE("reducible verdicts carry genuinely invariant subspaces") {
  Gen g(33);
  for (const auto& ms : fleet()) {
    const auto gens = sigma_generators(ms);
    const auto v = irreducibility_probe(ms, gens, 8, static_cast<std::uint64_t>(g.integer(0, 1000)));
    if (const auto* r = std::get_if<Reducible>(&v)) {
      INFO(ms.algebra().name());
      CHECK(!r->invariant_subspace.empty());
      CHECK(r->invariant_subspace.size() < ms.algebra().dim_v());
      for (const auto& s : gens)
        for (const auto& b : r->invariant_subspace) {
          std::vector<Vector> grown = r->invariant_subspace;
          grown.push_back(s.map_v * b);
          CHECK(span_basis(grown).size() == r->invariant_subspace.size());
        }
    }
  }
}

TEST_CASE("family identification examples") {
  const auto h21 = identify_family(make_h_prime(H, 2, 1));
  CHECK(h21.same_family({FamilyKind::HPrime, H, {2, 1}}));
  CHECK(h21.same_family({FamilyKind::HPrime, H, {1, 2}}));
  CHECK_FALSE(h21.same_family({FamilyKind::HPrime, H, {3, 0}}));
  CHECK(identify_family(make_clifford_module_algebra(7, {2})).to_string() == "other");
  CHECK(identify_family(make_h(C, 3)) == HTypeFamilyId{FamilyKind::H, C, {3}});
  CHECK_THROWS_AS(identify_family(MetricStructure::standard(free_two_step(3))), std::invalid_argument);
}

TEST_CASE("identification inverts the constructors") {
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(identify_family(make_h(C, n)).same_family({FamilyKind::H, C, {n}}));
    CHECK(identify_family(make_h(H, n)).same_family({FamilyKind::H, H, {n}}));
  }
  CHECK(identify_family(make_h(O, 1)).same_family({FamilyKind::H, O, {1}}));
  for (std::size_t p = 0; p <= 4; ++p)
    for (std::size_t q = 0; p + q <= 4; ++q) {
      if (p + q == 0) continue;
      CHECK(identify_family(make_h_prime(C, p, q)).same_family({FamilyKind::HPrime, C, {p, q}}));
      CHECK(identify_family(make_h_prime(H, p, q)).same_family({FamilyKind::HPrime, H, {p, q}}));
    }
  CHECK(identify_family(make_h_prime(O, 1, 0)).same_family({FamilyKind::HPrime, O, {1, 0}}));
  // The real Heisenberg algebra h_n(R) is h'_n(C).
  CHECK(identify_family(make_h(R, 2)).same_family({FamilyKind::HPrime, C, {2, 0}}));
}

TEST_CASE("identification ignores the choice of H-type metric") {
  Gen g(34);
  const auto ms = make_h(H, 1);
  for (int t = 0; t < 5; ++t) {
    const auto f = compose(random_h1h_automorphism(g), dilation(ms.algebra(), g.nonzero_rational()));
    CHECK(identify_family(pullback(ms, f)).same_family({FamilyKind::H, H, {1}}));
  }
}

TEST_CASE("family ids") {
  CHECK(HTypeFamilyId{FamilyKind::H, H, {1}}.to_string() == "h_1(H)");
  CHECK(HTypeFamilyId{FamilyKind::HPrime, O, {1, 0}}.to_string() == "h'_{1,0}(O)");
  CHECK_THROWS_AS((HTypeFamilyId{FamilyKind::H, O, {2}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((HTypeFamilyId{FamilyKind::HPrime, R, {1, 0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((HTypeFamilyId{FamilyKind::HPrime, O, {0, 1}}.validate()), std::invalid_argument);
  CHECK_NOTHROW((HTypeFamilyId{FamilyKind::HPrime, H, {0, 2}}.validate()));
  CHECK(HTypeFamilyId{FamilyKind::HPrime, C, {1, 1}}.same_family({FamilyKind::HPrime, C, {2, 0}}));
  CHECK_FALSE(HTypeFamilyId{FamilyKind::H, C, {1}}.same_family({FamilyKind::HPrime, C, {2, 0}}));
}
