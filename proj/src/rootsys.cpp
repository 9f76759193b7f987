#include "nilrad/rootsys.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nilrad {

std::string to_string(RootType type) {
  switch (type) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
    case RootType::E6: return "E6";
    case RootType::E7: return "E7";
    case RootType::E8: return "E8";
    case RootType::F4: return "F4";
    case RootType::G2: return "G2";
    case RootType::BC: return "BC";
  }
  return "?";
}

RootType parse_root_type(std::string_view text) {
  for (auto t : {RootType::A, RootType::B, RootType::C, RootType::D, RootType::E6, RootType::E7, RootType::E8,
                 RootType::F4, RootType::G2, RootType::BC}) {
    if (text == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown root system type '" + std::string(text) + "'");
}

std::string RootSystem::label() const {
  switch (type) {
    case RootType::E6:
    case RootType::E7:
    case RootType::E8:
    case RootType::F4:
    case RootType::G2:
      return to_string(type);
    default:
      return to_string(type) + std::to_string(rank);
  }
}

std::optional<std::size_t> RootSystem::index_of(const RootCoeffs& coeffs) const {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] == coeffs) return i;
  }
  return std::nullopt;
}

int RootSystem::inner(const RootCoeffs& a, const RootCoeffs& b) const {
  int s = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank; ++j) s += a[i] * form[i][j] * b[j];
  }
  return s;
}

bool RootSystem::is_divisible(const RootCoeffs& a) const {
  RootCoeffs half(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] % 2 != 0) return false;
    half[i] = a[i] / 2;
  }
  return is_root(half);
}

namespace {

std::size_t natural_rank(RootType type) {
  switch (type) {
    case RootType::E6: return 6;
    case RootType::E7: return 7;
    case RootType::E8: return 8;
    case RootType::F4: return 4;
    case RootType::G2: return 2;
    default: return 0;
  }
}

// Gram matrix of the simple roots.
std::vector<std::vector<int>> simple_form(RootType type, std::size_t n) {
  std::vector<std::vector<int>> f(n, std::vector<int>(n, 0));
  auto link = [&](std::size_t i, std::size_t j, int v) {
    f[i][j] = v;
    f[j][i] = v;
  };
  for (std::size_t i = 0; i < n; ++i) f[i][i] = 2;
  switch (type) {
    case RootType::A:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case RootType::B:
    case RootType::BC:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      f[n - 1][n - 1] = 1;
      break;
    case RootType::C:
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      f[n - 1][n - 1] = 4;
      link(n - 2, n - 1, -2);
      break;
    case RootType::D:
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case RootType::E6:
    case RootType::E7:
    case RootType::E8:
      // Bourbaki: chain 1-3-4-5-6-7-8, with 2 attached to 4.
      link(0, 2, -1);
      link(1, 3, -1);
      for (std::size_t i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case RootType::F4:
      // α1, α2 long; α3, α4 short.
      f[0][0] = f[1][1] = 4;
      link(0, 1, -2);
      link(1, 2, -2);
      link(2, 3, -1);
      break;
    case RootType::G2:
      // α1 short, α2 long.
      f[1][1] = 6;
      link(0, 1, -3);
      break;
  }
  return f;
}

int height(const RootCoeffs& r) { return std::accumulate(r.begin(), r.end(), 0); }

}  // namespace

RootSystem build_root_system(RootType type, std::size_t rank) {
  const std::size_t fixed = natural_rank(type);
  if (fixed != 0) {
    if (rank != 0 && rank != fixed) {
      throw std::invalid_argument(to_string(type) + " has rank " + std::to_string(fixed));
    }
    rank = fixed;
  }
  const std::size_t min_rank = type == RootType::B || type == RootType::C ? 2 : type == RootType::D ? 4 : 1;
  if (rank < min_rank) {
    throw std::invalid_argument("invalid rank " + std::to_string(rank) + " for type " + to_string(type));
  }
  RootSystem sys;
  sys.type = type;
  sys.rank = rank;
  sys.form = simple_form(type, rank);

  // Positive roots by root strings: β + α_i is a root iff q ≥ 1 where
  // q = p − ⟨β, α_i∨⟩ and p is the length of the string below β.
  std::set<RootCoeffs> positive;
  std::vector<RootCoeffs> level;
  for (std::size_t i = 0; i < rank; ++i) {
    RootCoeffs e(rank, 0);
    e[i] = 1;
    level.push_back(e);
    positive.insert(e);
  }
  while (!level.empty()) {
    std::vector<RootCoeffs> next;
    for (const auto& beta : level) {
      for (std::size_t i = 0; i < rank; ++i) {
        int p = 0;
        RootCoeffs down = beta;
        while (true) {
          down[i] -= 1;
          if (!positive.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (std::size_t j = 0; j < rank; ++j) pairing += beta[j] * sys.form[j][i];
        const int cartan = 2 * pairing / sys.form[i][i];
        if (p - cartan >= 1) {
          RootCoeffs up = beta;
          up[i] += 1;
          if (positive.insert(up).second) next.push_back(up);
        }
      }
    }
    level = std::move(next);
  }
  if (type == RootType::BC) {
    // Twice the short roots e_i = α_i + ... + α_n.
    for (std::size_t i = 0; i < rank; ++i) {
      RootCoeffs r(rank, 0);
      for (std::size_t j = i; j < rank; ++j) r[j] = 2;
      positive.insert(r);
    }
  }

  std::vector<RootCoeffs> pos(positive.begin(), positive.end());
  // By height, then so that the simple roots come out as α_1, ..., α_n.
  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
    return height(a) != height(b) ? height(a) < height(b) : a > b;
  });
  for (std::size_t i = 0; i < pos.size(); ++i) {
    sys.roots.push_back(pos[i]);
    sys.positives.push_back(i);
    if (height(pos[i]) == 1) sys.simples.push_back(i);
  }
  for (const auto& r : pos) {
    RootCoeffs neg(r.size());
    std::transform(r.begin(), r.end(), neg.begin(), [](int c) { return -c; });
    sys.roots.push_back(std::move(neg));
  }
  sys.highest = pos.size() - 1;
  const auto& gamma = pos.back();
  for (const auto& r : pos) {
    for (std::size_t i = 0; i < rank; ++i) {
      if (r[i] > gamma[i]) throw std::logic_error("highest root does not dominate " + sys.label());
    }
  }
  return sys;
}

int phi_height(const PhiSet& phi, const RootCoeffs& root) {
  int s = 0;
  for (auto i : phi) s += root.at(i);
  return s;
}

int max_phi_height(const RootSystem& sys, const PhiSet& phi) {
  int best = 0;
  for (auto i : sys.positives) best = std::max(best, phi_height(phi, sys.roots[i]));
  return best;
}

bool is_two_step(const RootSystem& sys, const PhiSet& phi) {
  if (phi.empty()) throw std::invalid_argument("empty Φ");
  return phi_height(phi, sys.roots[sys.highest]) == 2;
}

bool is_nonsingular_combinatorial(const RootSystem& sys, const PhiSet& phi) {
  if (!is_two_step(sys, phi)) throw std::invalid_argument("Φ does not give a two-step nilradical");
  const auto& gamma = sys.roots[sys.highest];
  for (auto i : sys.positives) {
    const auto& alpha = sys.roots[i];
    if (phi_height(phi, alpha) != 1) continue;
    RootCoeffs diff(sys.rank);
    for (std::size_t k = 0; k < sys.rank; ++k) diff[k] = gamma[k] - alpha[k];
    if (!sys.is_root(diff) || phi_height(phi, diff) != 1) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> diagram_automorphisms(const RootSystem& sys) {
  const std::size_t n = sys.rank;
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<std::size_t>> gens;
  switch (sys.type) {
    case RootType::A:
      if (n >= 2) {
        auto flip = id;
        std::reverse(flip.begin(), flip.end());
        gens.push_back(flip);
      }
      break;
    case RootType::D: {
      auto flip = id;
      std::swap(flip[n - 2], flip[n - 1]);
      gens.push_back(flip);
      if (n == 4) gens.push_back({2, 1, 3, 0});  // α1 → α3 → α4 → α1
      break;
    }
    case RootType::E6:
      gens.push_back({5, 1, 4, 3, 2, 0});
      break;
    default:
      break;
  }
  std::vector<std::vector<std::size_t>> group{id};
  for (std::size_t k = 0; k < group.size(); ++k) {
    for (const auto& g : gens) {
      std::vector<std::size_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = g[group[k][i]];
      if (std::find(group.begin(), group.end(), c) == group.end()) group.push_back(c);
    }
  }
  return group;
}

PhiSet apply_permutation(const std::vector<std::size_t>& perm, const PhiSet& phi) {
  PhiSet out;
  for (auto i : phi) out.push_back(perm.at(i));
  std::sort(out.begin(), out.end());
  return out;
}

ScanReport scan(const RootSystem& sys) {
  ScanReport rep;
  rep.system = sys.label();
  const std::size_t n = sys.rank;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    PhiSet phi;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) phi.push_back(i);
    ++rep.subsets_checked;
    if (is_two_step(sys, phi) && is_nonsingular_combinatorial(sys, phi)) rep.passing.push_back(phi);
  }
  const auto group = diagram_automorphisms(sys);
  std::set<PhiSet> seen;
  const std::set<PhiSet> passing(rep.passing.begin(), rep.passing.end());
  for (const auto& phi : rep.passing) {
    if (seen.count(phi)) continue;
    std::set<PhiSet> orbit;
    for (const auto& g : group) orbit.insert(apply_permutation(g, phi));
    for (const auto& o : orbit) {
      if (!passing.count(o)) rep.automorphism_invariant = false;
      seen.insert(o);
    }
    rep.orbits.emplace_back(orbit.begin(), orbit.end());
  }
  return rep;
}

std::string format_phi(const PhiSet& phi) {
  std::string s = "{";
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (k) s += ", ";
    s += "α" + std::to_string(phi[k] + 1);
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// Curated real forms

std::string length_class(const RootSystem& sys, const RootCoeffs& root) {
  std::set<int> lengths;
  for (auto i : sys.positives) {
    if (!sys.is_divisible(sys.roots[i])) lengths.insert(sys.length2(sys.roots[i]));
  }
  if (lengths.size() == 1) return "all";
  const int l = sys.length2(root);
  return l == *lengths.rbegin() ? "long" : "short";
}

int multiplicity(const RootSystem& sys, const RealFormEntry& entry, const RootCoeffs& root) {
  const bool divisible = sys.is_divisible(root);
  RootCoeffs base = root;
  if (divisible)
    for (auto& c : base) c /= 2;
  const std::string cls = length_class(sys, base);
  const auto it = entry.multiplicities.find(cls);
  if (it == entry.multiplicities.end()) {
    throw DataError(entry.name + ": no multiplicity for root class '" + cls + "'");
  }
  return divisible ? it->second.m_2alpha : it->second.m_alpha;
}

std::pair<std::size_t, std::size_t> family_dims(const HTypeFamilyId& id) {
  id.validate();
  const std::size_t d = dimension(id.tag);
  switch (id.kind) {
    case FamilyKind::H: return {2 * id.params[0] * d, d};
    case FamilyKind::HPrime: return {(id.params[0] + id.params[1]) * d, d - 1};
    case FamilyKind::Other: break;
  }
  throw std::invalid_argument("family 'other' has no fixed dimensions");
}

NilradicalProfile nilradical_profile(const RealFormEntry& entry) {
  const auto sys = build_root_system(entry.type, entry.rank);
  NilradicalProfile prof;
  for (auto i : sys.positives) {
    const auto& r = sys.roots[i];
    const int h = phi_height(entry.phi, r);
    const int m = multiplicity(sys, entry, r);
    if (h == 1) {
      prof.layer1.push_back(r);
      prof.dim_v += static_cast<std::size_t>(m);
    } else if (h == 2) {
      prof.layer2.push_back(r);
      prof.dim_z += static_cast<std::size_t>(m);
    } else if (h > 2) {
      throw DataError(entry.name + ": Φ " + format_phi(entry.phi) + " gives a nilradical of step > 2");
    }
  }
  if (entry.abelian_only) {
    if (prof.dim_z != 0) throw DataError(entry.name + ": abelian-only row has a nonzero second layer");
    return prof;
  }
  if (!entry.family) throw DataError(entry.name + ": row has no nilradical family");
  const auto [dv, dz] = family_dims(*entry.family);
  if (dv != prof.dim_v || dz != prof.dim_z) {
    std::ostringstream msg;
    msg << entry.name << ": multiplicities give (" << prof.dim_v << ", " << prof.dim_z << ") but "
        << entry.family->to_string() << " has (" << dv << ", " << dz << ")";
    throw DataError(msg.str());
  }
  return prof;
}

namespace {

using nlohmann::json;

HTypeFamilyId parse_family(const json& j, const std::string& where) {
  HTypeFamilyId id;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "h") id.kind = FamilyKind::H;
  else if (kind == "hprime") id.kind = FamilyKind::HPrime;
  else throw DataError(where + ": unknown family kind '" + kind + "'");
  id.tag = parse_division_tag(j.at("field").get<std::string>());
  id.params = j.at("params").get<std::vector<std::size_t>>();
  id.validate();
  return id;
}

RealFormEntry parse_entry(const json& j, std::size_t index) {
  const std::string where = "row " + std::to_string(index);
  RealFormEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    e.series = j.value("series", e.name);
    const auto& restricted = j.at("restricted");
    e.type = parse_root_type(restricted.at("type").get<std::string>());
    e.rank = restricted.at("rank").get<std::size_t>();
    for (const auto& [cls, m] : j.at("multiplicities").items()) {
      const auto v = m.get<std::vector<int>>();
      if (v.empty() || v.size() > 2) throw DataError(where + ": multiplicity '" + cls + "' needs 1 or 2 numbers");
      e.multiplicities[cls] = Multiplicity{v[0], v.size() == 2 ? v[1] : 0};
    }
    for (auto k : j.at("phi").get<std::vector<std::size_t>>()) {
      if (k < 1 || k > e.rank) throw DataError(where + ": Φ index " + std::to_string(k) + " out of range");
      e.phi.push_back(k - 1);
    }
    std::sort(e.phi.begin(), e.phi.end());
    if (j.contains("family") && !j.at("family").is_null()) e.family = parse_family(j.at("family"), where);
    e.abelian_only = j.value("abelianOnly", false);
    e.paper_labels = j.value("paperLabels", "");
  } catch (const json::exception& ex) {
    throw DataError(where + ": " + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw DataError(where + ": " + ex.what());
  }
  return e;
}

}  // namespace

std::vector<RealFormEntry> parse_real_forms(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw DataError(std::string("real forms table: ") + ex.what());
  }
  if (!doc.is_array()) throw DataError("real forms table must be a JSON array");
  std::vector<RealFormEntry> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_entry(doc[i], i));
  return out;
}

std::vector<RealFormEntry> load_real_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open real forms table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_real_forms(buf.str());
}

std::string default_real_forms_path() {
#ifdef NILRAD_DATA_DIR
  return std::string(NILRAD_DATA_DIR) + "/real_forms.json";
#else
  return "data/real_forms.json";
#endif
}

namespace {

bool is_so_n1(const std::string& name) {
  return name.rfind("so(", 0) == 0 && name.size() > 5 && name.compare(name.size() - 3, 3, ",1)") == 0;
}

}  // namespace

A1ExceptionReport a1_exception_report(const std::vector<RealFormEntry>& table) {
  A1ExceptionReport rep;
  for (const auto& e : table) {
    const bool a1 = e.type == RootType::A && e.rank == 1;
    if (a1) rep.a1_rows.push_back(e.name);
    if (is_so_n1(e.name)) rep.so_n1_rows.push_back(e.name);
    if (a1 != is_so_n1(e.name)) {
      rep.problems.push_back(e.name + (a1 ? " has type A1 but is not so(n,1)" : " is so(n,1) but not of type A1"));
    }
    if (a1 && !e.abelian_only) rep.problems.push_back(e.name + " has type A1 but is not flagged abelian-only");
  }
  const auto a1 = build_root_system(RootType::A, 1);
  rep.a1_scan_empty = scan(a1).passing.empty();
  rep.a1_max_height = max_phi_height(a1, {0});
  if (!rep.a1_scan_empty) rep.problems.emplace_back("scan(A1) is not empty");
  if (rep.a1_max_height != 1) rep.problems.emplace_back("A1 with Φ = {α1} is not abelian");
  return rep;
}

std::vector<std::string> check_real_form(const RealFormEntry& entry) {
  std::vector<std::string> problems;
  try {
    nilradical_profile(entry);
    const auto sys = build_root_system(entry.type, entry.rank);
    if (entry.abelian_only) {
      if (max_phi_height(sys, entry.phi) != 1) problems.push_back(entry.name + ": abelian-only row is not abelian");
    } else {
      const auto rep = scan(sys);
      if (std::find(rep.passing.begin(), rep.passing.end(), entry.phi) == rep.passing.end()) {
        problems.push_back(entry.name + ": Φ " + format_phi(entry.phi) + " does not pass the scan on " + sys.label());
      }
    }
  } catch (const std::exception& ex) {
    problems.emplace_back(ex.what());
  }
  return problems;
}

}  // namespace nilrad
