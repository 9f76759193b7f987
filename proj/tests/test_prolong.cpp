#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilrad/htype.hpp"
#include "nilrad/prolong.hpp"

using namespace nilrad;

namespace {

using Dims = std::vector<std::size_t>;

Dims dims_up_to(const TwoStepAlgebra& alg, int max_degree) {
  ProlongOptions o;
  o.max_degree = max_degree;
  return prolong(alg, o).dims();
}

// Weighted monomials x^a y^b z^c of weight a + b + 2c = k + 2: contact
// vector fields on the Heisenberg group in degree k.
std::size_t monomials(int k) {
  std::size_t count = 0;
  for (int c = 0; 2 * c <= k + 2; ++c) count += static_cast<std::size_t>(k + 2 - 2 * c + 1);
  return count;
}

}  // namespace

TEST_CASE("g0 examples") {
  CHECK(g0(make_h_prime(DivisionTag::C, 1, 0).algebra()).dim() == 4);
  CHECK(g0(TwoStepAlgebra("abelian", 3, 0)).dim() == 9);
  CHECK(g0(make_h_prime(DivisionTag::O, 1, 0).algebra()).dim() == 22);
}

TEST_CASE("g0 needs a fundamental algebra") {
  TwoStepAlgebra alg("t", 2, 2);
  alg.set_bracket(0, 1, Vector{1, 0});
  CHECK_THROWS_AS(g0(alg), std::invalid_argument);
}

TEST_CASE("g1 examples") {
  auto g1 = [](const TwoStepAlgebra& alg) {
    const auto l0 = g0(alg);
    return g_k(alg, 1, {l0}).dim();
  };
  CHECK(g1(make_clifford_module_algebra(5, {1}).algebra()) == 0);
  CHECK(g1(make_clifford_module_algebra(7, {2}).algebra()) == 0);
  CHECK(g1(make_h_prime(DivisionTag::C, 1, 0).algebra()) == 6);
}

TEST_CASE("prolongation verdicts") {
  const auto o = prolong(make_h_prime(DivisionTag::O, 1, 0).algebra());
  CHECK(o.dims() == Dims{22, 8, 7, 0});
  CHECK(o.verdict == ProlongationVerdictKind::NonTrivialFinite);
  CHECK(o.last_nonzero_degree == 2);

  ProlongOptions one;
  one.max_degree = 1;
  const auto m7 = prolong(make_clifford_module_algebra(7, {2}).algebra(), one);
  CHECK(m7.verdict == ProlongationVerdictKind::TrivialAtDegree1);

  ProlongOptions four;
  four.max_degree = 4;
  const auto heis = prolong(make_h_prime(DivisionTag::C, 1, 0).algebra(), four);
  CHECK(heis.dims() == Dims{4, 6, 9, 12, 16});
  CHECK(heis.verdict == ProlongationVerdictKind::NonTrivialUpToCutoff);
  CHECK(to_string(heis.verdict) == "NonTrivialUpToCutoff");
}

TEST_CASE("Heisenberg layers match the weighted-monomial count") {
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto d = dims_up_to(make_h_prime(DivisionTag::C, n, 0).algebra(), n == 1 ? 5 : 2);
    if (n == 1)
      for (int k = 1; k < static_cast<int>(d.size()); ++k) CHECK(d[k] == monomials(k));
    // Every layer of the contact algebra is nonzero.
    for (auto x : d) CHECK(x > 0);
  }
  CHECK(monomials(1) == 6);
}

TEST_CASE("finite-type families have g1 = n^-1 and g2 = n^-2") {
  for (const auto& ms : {make_h_prime(DivisionTag::H, 1, 1), make_h_prime(DivisionTag::H, 1, 0), make_h(DivisionTag::H, 1),
                         make_h_prime(DivisionTag::O, 1, 0)}) {
    INFO(ms.algebra().name());
    ProlongOptions opt;
    opt.max_degree = 3;
    const auto res = prolong(ms.algebra(), opt);
    const auto d = res.dims();
    CHECK(d[1] == ms.algebra().dim_v());
    CHECK(d[2] == ms.algebra().dim_z());
    CHECK(d[3] == 0);
  }
  CHECK(dims_up_to(make_h_prime(DivisionTag::H, 1, 1).algebra(), 3) == Dims{14, 8, 3, 0});
  CHECK(dims_up_to(make_h(DivisionTag::H, 1).algebra(), 3) == Dims{11, 8, 4, 0});
}

TEST_CASE("complex Heisenberg has nonzero g3") {
  CHECK(dims_up_to(make_h(DivisionTag::C, 1).algebra(), 3) == Dims{8, 12, 18, 24});
}

TEST_CASE("trivial prolongations") {
  CHECK(dims_up_to(make_clifford_module_algebra(5, {1}).algebra(), 1) == Dims{12, 0});
  CHECK(dims_up_to(make_clifford_module_algebra(7, {2}).algebra(), 1) == Dims{23, 0});
  // Every derivation of a free algebra comes from gl(n⁻¹).
  CHECK(dims_up_to(free_two_step(3), 1)[0] == 9);
}

TEST_CASE("every layer re-verifies by substitution") {
  for (const auto& ms : {make_h_prime(DivisionTag::C, 1, 0), make_h_prime(DivisionTag::H, 1, 0), make_h(DivisionTag::C, 1)}) {
    ProlongOptions opt;
    opt.max_degree = 3;
    const auto res = prolong(ms.algebra(), opt);
    for (int k = 0; k < static_cast<int>(res.layers.size()); ++k) CHECK(verify_layer(ms.algebra(), res.layers, k));
  }
}

TEST_CASE("verify_layer catches a corrupted element") {
  const auto alg = make_h_prime(DivisionTag::C, 1, 0).algebra();
  auto res = prolong(alg);
  REQUIRE(res.layers[1].dim() > 0);
  res.layers[1].a[0](0, 0) += 1;
  CHECK_FALSE(verify_layer(alg, res.layers, 1));
  CHECK_THROWS_AS(verify_layer(alg, res.layers, 9), std::invalid_argument);
}

TEST_CASE("raising the cutoff keeps the lower layers") {
  const auto alg = make_h_prime(DivisionTag::C, 2, 0).algebra();
  ProlongOptions a, b;
  a.max_degree = 1;
  b.max_degree = 2;
  const auto ra = prolong(alg, a), rb = prolong(alg, b);
  for (std::size_t k = 0; k < ra.layers.size(); ++k) {
    CHECK(ra.layers[k].a == rb.layers[k].a);
    CHECK(ra.layers[k].b == rb.layers[k].b);
  }
}

TEST_CASE("stop when zero") {
  ProlongOptions opt;
  opt.max_degree = 6;
  opt.stop_when_zero = true;
  const auto res = prolong(make_h_prime(DivisionTag::H, 1, 0).algebra(), opt);
  CHECK(res.dims().back() == 0);
  CHECK(res.dims().size() == 4);
}

TEST_CASE("argument and resource errors") {
  const auto alg = make_h_prime(DivisionTag::C, 1, 0).algebra();
  const auto l0 = g0(alg);
  CHECK_THROWS_AS(g_k(alg, 2, {l0}), std::invalid_argument);
  ProlongOptions zero;
  zero.max_degree = 0;
  CHECK_THROWS_AS(prolong(alg, zero), std::invalid_argument);

  CHECK(unknown_count(alg, 1, {l0}) == 2 * 4 + 1 * 2);
  ProlongOptions tight;
  tight.max_entries = 50;
  CHECK_THROWS_AS(prolong(alg, tight), ResourceGuardError);
}
