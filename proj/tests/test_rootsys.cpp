#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "nilrad/rootsys.hpp"

using namespace nilrad;

namespace {

struct Case {
  RootType type;
  std::size_t rank;
};

std::vector<Case> all_cases() {
  std::vector<Case> out;
  for (std::size_t n = 1; n <= 8; ++n) {
    out.push_back({RootType::A, n});
    out.push_back({RootType::BC, n});
    if (n >= 2) out.push_back({RootType::B, n});
    if (n >= 2) out.push_back({RootType::C, n});
    if (n >= 4) out.push_back({RootType::D, n});
  }
  for (auto t : {RootType::E6, RootType::E7, RootType::E8, RootType::F4, RootType::G2}) out.push_back({t, 0});
  return out;
}

// Classical root counts.
std::size_t expected_roots(RootType t, std::size_t n) {
  switch (t) {
    case RootType::A: return n * (n + 1);
    case RootType::B:
    case RootType::C: return 2 * n * n;
    case RootType::D: return 2 * n * (n - 1);
    case RootType::BC: return 2 * n * n + 2 * n;
    case RootType::E6: return 72;
    case RootType::E7: return 126;
    case RootType::E8: return 240;
    case RootType::F4: return 48;
    case RootType::G2: return 12;
  }
  return 0;
}

// Bourbaki highest roots.
RootCoeffs expected_highest(RootType t, std::size_t n) {
  switch (t) {
    case RootType::A: return RootCoeffs(n, 1);
    case RootType::B: {
      RootCoeffs r(n, 2);
      r[0] = 1;
      return r;
    }
    case RootType::C: {
      RootCoeffs r(n, 2);
      r[n - 1] = 1;
      return r;
    }
    case RootType::D: {
      RootCoeffs r(n, 2);
      r[0] = r[n - 2] = r[n - 1] = 1;
      return r;
    }
    case RootType::BC: return RootCoeffs(n, 2);
    case RootType::E6: return {1, 2, 2, 3, 2, 1};
    case RootType::E7: return {2, 2, 3, 4, 3, 2, 1};
    case RootType::E8: return {2, 3, 4, 6, 5, 4, 3, 2};
    case RootType::F4: return {2, 3, 4, 2};
    case RootType::G2: return {3, 2};
  }
  return {};
}

std::vector<PhiSet> all_subsets(std::size_t rank) {
  std::vector<PhiSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << rank); ++mask) {
    PhiSet s;
    for (std::size_t i = 0; i < rank; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

RootCoeffs minus(const RootCoeffs& a, const RootCoeffs& b) {
  RootCoeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RootCoeffs negate(const RootCoeffs& a) { return minus(RootCoeffs(a.size()), a); }

}  // namespace

TEST_CASE("build examples") {
  const auto a2 = build_root_system(RootType::A, 2);
  CHECK(a2.roots.size() == 6);
  CHECK(a2.roots[a2.highest] == RootCoeffs{1, 1});

  const auto bc1 = build_root_system(RootType::BC, 1);
  std::set<RootCoeffs> got(bc1.roots.begin(), bc1.roots.end());
  CHECK(got == std::set<RootCoeffs>{{1}, {2}, {-1}, {-2}});
  CHECK(bc1.roots[bc1.highest] == RootCoeffs{2});
  CHECK(bc1.is_divisible({2}));
  CHECK_FALSE(bc1.is_divisible({1}));

  const auto g2 = build_root_system(RootType::G2);
  CHECK(g2.roots.size() == 12);
  CHECK(g2.roots[g2.highest] == RootCoeffs{3, 2});
  CHECK(g2.length2({1, 0}) < g2.length2({0, 1}));
  CHECK(g2.label() == "G2");
  CHECK(build_root_system(RootType::BC, 3).label() == "BC3");
}

TEST_CASE("invalid ranks are rejected") {
  CHECK_THROWS_AS(build_root_system(RootType::A, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootType::B, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootType::C, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootType::D, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootType::E6, 7), std::invalid_argument);
  CHECK(build_root_system(RootType::E7, 7).rank == 7);
  CHECK_THROWS_AS(parse_root_type("Z"), std::invalid_argument);
  for (auto t : {RootType::A, RootType::BC, RootType::E8, RootType::G2}) CHECK(parse_root_type(to_string(t)) == t);
}

TEST_CASE("root counts and highest roots match the classical data") {
  for (const auto& c : all_cases()) {
    const auto sys = build_root_system(c.type, c.rank);
    INFO(sys.label());
    CHECK(sys.roots.size() == expected_roots(sys.type, sys.rank));
    CHECK(sys.positives.size() * 2 == sys.roots.size());
    CHECK(sys.roots[sys.highest] == expected_highest(sys.type, sys.rank));
    CHECK(sys.simples.size() == sys.rank);
  }
}

TEST_CASE("roots are closed under negation and positives are non-negative combinations") {
  for (const auto& c : all_cases()) {
    const auto sys = build_root_system(c.type, c.rank);
    INFO(sys.label());
    for (const auto& r : sys.roots) CHECK(sys.is_root(negate(r)));
    for (auto p : sys.positives) {
      const auto& r = sys.roots[p];
      CHECK(std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }));
    }
    for (std::size_t i = 0; i < sys.rank; ++i) {
      RootCoeffs e(sys.rank);
      e[i] = 1;
      CHECK(sys.roots[sys.simples[i]] == e);
    }
  }
}

TEST_CASE("BC contains both alpha and 2 alpha for short roots") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto sys = build_root_system(RootType::BC, n);
    std::size_t divisible = 0;
    for (auto p : sys.positives)
      if (sys.is_divisible(sys.roots[p])) ++divisible;
    CHECK(divisible == n);
    // e_n = α_n and 2 e_n.
    RootCoeffs en(n), two_en(n);
    en[n - 1] = 1;
    two_en[n - 1] = 2;
    CHECK(sys.is_root(en));
    CHECK(sys.is_root(two_en));
  }
}

TEST_CASE("phi height examples") {
  CHECK(phi_height({0, 2}, {1, 1, 1}) == 2);
  CHECK(phi_height({}, {1, 1, 1}) == 0);
  CHECK(phi_height({0}, {2, 2}) == 2);  // 2e_1 in BC2
}

TEST_CASE("two-step examples") {
  const auto a2 = build_root_system(RootType::A, 2);
  CHECK(is_two_step(a2, {0, 1}));
  CHECK_FALSE(is_two_step(a2, {0}));
  const auto a1 = build_root_system(RootType::A, 1);
  CHECK_FALSE(is_two_step(a1, {0}));
  CHECK_THROWS_AS(is_two_step(a2, {}), std::invalid_argument);
}

TEST_CASE("combinatorial nonsingularity examples") {
  const auto a3 = build_root_system(RootType::A, 3);
  CHECK(is_nonsingular_combinatorial(a3, {0, 2}));
  CHECK_FALSE(is_nonsingular_combinatorial(a3, {0, 1}));
  CHECK(is_nonsingular_combinatorial(build_root_system(RootType::BC, 1), {0}));
  CHECK_THROWS_AS(is_nonsingular_combinatorial(a3, {1}), std::invalid_argument);
}

TEST_CASE("heights are additive along root differences") {
  for (const auto& c : all_cases()) {
    const auto sys = build_root_system(c.type, c.rank);
    const auto& gamma = sys.roots[sys.highest];
    for (const auto& phi : all_subsets(std::min<std::size_t>(sys.rank, 5))) {
      for (auto p : sys.positives) {
        const auto diff = minus(gamma, sys.roots[p]);
        if (!sys.is_root(diff)) continue;
        CHECK(phi_height(phi, gamma) == phi_height(phi, diff) + phi_height(phi, sys.roots[p]));
      }
    }
  }
}

TEST_CASE("the highest root dominates every phi height") {
  for (const auto& c : all_cases()) {
    const auto sys = build_root_system(c.type, c.rank);
    if (sys.rank > 6) continue;
    for (const auto& phi : all_subsets(sys.rank)) {
      CHECK(max_phi_height(sys, phi) == phi_height(phi, sys.roots[sys.highest]));
    }
  }
}

TEST_CASE("diagram automorphisms") {
  CHECK(diagram_automorphisms(build_root_system(RootType::A, 1)).size() == 1);
  CHECK(diagram_automorphisms(build_root_system(RootType::A, 4)).size() == 2);
  CHECK(diagram_automorphisms(build_root_system(RootType::D, 4)).size() == 6);
  CHECK(diagram_automorphisms(build_root_system(RootType::D, 5)).size() == 2);
  CHECK(diagram_automorphisms(build_root_system(RootType::E6)).size() == 2);
  CHECK(diagram_automorphisms(build_root_system(RootType::BC, 3)).size() == 1);
  CHECK(diagram_automorphisms(build_root_system(RootType::E8)).size() == 1);
  CHECK(apply_permutation({2, 1, 0}, {0}) == PhiSet{2});
}

TEST_CASE("diagram automorphisms preserve the form") {
  for (const auto& c : all_cases()) {
    const auto sys = build_root_system(c.type, c.rank);
    const auto autos = diagram_automorphisms(sys);
    REQUIRE(!autos.empty());
    for (std::size_t i = 0; i < sys.rank; ++i) CHECK(autos[0][i] == i);
    for (const auto& perm : autos)
      for (std::size_t i = 0; i < sys.rank; ++i)
        for (std::size_t j = 0; j < sys.rank; ++j) CHECK(sys.form[perm[i]][perm[j]] == sys.form[i][j]);
  }
}

TEST_CASE("scan results") {
  auto only = [](RootType t, std::size_t n) {
    const auto rep = scan(build_root_system(t, n));
    return rep.orbits.size() == 1 ? rep.orbits[0] : std::vector<PhiSet>{};
  };
  CHECK(scan(build_root_system(RootType::A, 1)).passing.empty());
  for (std::size_t n = 2; n <= 8; ++n) {
    CHECK(only(RootType::A, n) == std::vector<PhiSet>{{0, n - 1}});
    CHECK(only(RootType::C, n) == std::vector<PhiSet>{{0}});
    CHECK(only(RootType::B, n) == std::vector<PhiSet>{{1}});
  }
  for (std::size_t n = 1; n <= 8; ++n) CHECK(only(RootType::BC, n) == std::vector<PhiSet>{{0}});
  for (std::size_t n = 4; n <= 8; ++n) CHECK(only(RootType::D, n) == std::vector<PhiSet>{{1}});
  CHECK(only(RootType::G2, 0) == std::vector<PhiSet>{{1}});
  CHECK(only(RootType::F4, 0) == std::vector<PhiSet>{{0}});
  CHECK(only(RootType::E6, 0) == std::vector<PhiSet>{{1}});
  CHECK(only(RootType::E7, 0) == std::vector<PhiSet>{{0}});
  CHECK(only(RootType::E8, 0) == std::vector<PhiSet>{{7}});
  CHECK(format_phi({0, 2}) == "{α1, α3}");
}

TEST_CASE("scans are exhaustive and automorphism invariant") {
  for (const auto& c : all_cases()) {
    const auto sys = build_root_system(c.type, c.rank);
    INFO(sys.label());
    const auto rep = scan(sys);
    CHECK(rep.subsets_checked == (std::size_t{1} << sys.rank) - 1);
    CHECK(rep.automorphism_invariant);
    CHECK(rep.orbits.size() == (sys.label() == "A1" ? 0u : 1u));
    for (const auto& phi : rep.passing) {
      for (const auto& perm : diagram_automorphisms(sys)) {
        const auto image = apply_permutation(perm, phi);
        CHECK(std::find(rep.passing.begin(), rep.passing.end(), image) != rep.passing.end());
      }
    }
  }
}

TEST_CASE("curated table profiles") {
  const auto table = load_real_forms(default_real_forms_path());
  REQUIRE(table.size() >= 20);
  auto row = [&](const std::string& name) {
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.name == name; });
    REQUIRE(it != table.end());
    return *it;
  };
  for (const auto& [name, dv, dz] : std::vector<std::tuple<std::string, std::size_t, std::size_t>>{
           {"sp(2,1)", 4, 3}, {"sp(3,2)", 12, 3}, {"EIV", 16, 8}, {"FII", 8, 7}, {"sl(3,H)", 8, 4}, {"sl(4,H)", 16, 4}}) {
    const auto prof = nilradical_profile(row(name));
    CHECK(prof.dim_v == dv);
    CHECK(prof.dim_z == dz);
  }
  for (const auto& e : table) {
    INFO(e.name);
    CHECK(check_real_form(e).empty());
    if (e.family) {
      const auto prof = nilradical_profile(e);
      CHECK(std::pair{prof.dim_v, prof.dim_z} == family_dims(*e.family));
    }
  }
  CHECK(row("FII").type == RootType::BC);
  CHECK(row("FII").paper_labels == "nilpotent Iwasawa subalgebras");
}

TEST_CASE("a bad row is a data error") {
  const std::string good =
      R"json([{"name": "sp(2,1)", "series": "sp(p+1,q+1)", "restricted": {"type": "BC", "rank": 1},
          "multiplicities": {"all": [4, 3]}, "phi": [1],
          "family": {"kind": "hprime", "field": "H", "params": [1, 0]}, "abelianOnly": false,
          "paperLabels": "{α_2}"}])json";
  const auto rows = parse_real_forms(good);
  REQUIRE(rows.size() == 1);
  CHECK_NOTHROW(nilradical_profile(rows[0]));

  auto bad = rows[0];
  bad.multiplicities["all"] = {4, 2};
  CHECK_THROWS_AS(nilradical_profile(bad), DataError);
  CHECK_FALSE(check_real_form(bad).empty());

  auto missing = rows[0];
  missing.multiplicities.clear();
  CHECK_THROWS_AS(nilradical_profile(missing), DataError);

  CHECK_THROWS_AS(parse_real_forms("{}"), DataError);
  CHECK_THROWS_AS(parse_real_forms("[{\"name\": 3}]"), DataError);
  CHECK_THROWS_AS(load_real_forms("/nonexistent/table.json"), DataError);
}

TEST_CASE("A1 exception") {
  const auto table = load_real_forms(default_real_forms_path());
  const auto rep = a1_exception_report(table);
  CHECK(rep.consistent());
  CHECK(rep.a1_scan_empty);
  CHECK(rep.a1_max_height == 1);
  CHECK(rep.a1_rows == rep.so_n1_rows);
  CHECK(rep.a1_rows.size() >= 1);

  const auto a1 = build_root_system(RootType::A, 1);
  CHECK(max_phi_height(a1, {0}) == 1);
  const auto bc1 = build_root_system(RootType::BC, 1);
  CHECK(max_phi_height(bc1, {0}) == 2);

  auto broken = table;
  for (auto& e : broken)
    if (e.name == "EIV") e.type = RootType::A, e.rank = 1;
  CHECK_FALSE(a1_exception_report(broken).consistent());
}
