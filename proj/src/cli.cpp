#include "nilrad/cli.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilrad/htype.hpp"
#include "nilrad/prolong.hpp"
#include "nilrad/rootsys.hpp"

namespace nilrad::cli {

namespace {

using nlohmann::ordered_json;

// Input that cannot be used: exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::string bigfloat_string(const BigFloat& x) {
  std::ostringstream s;
  s << std::setprecision(12) << std::scientific << x;
  return s.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MetricStructure load_metric(const std::string& path) {
  try {
    auto file = read_algebra_file(path);
    // Unnamed algebras are reported under their file name.
    if (file.algebra.name().empty()) file.algebra.set_name(std::filesystem::path(path).stem().string());
    return MetricStructure::from_file(file);
  } catch (const FormatError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

Matrix parse_matrix_field(const nlohmann::json& j, const std::string& field, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InputError("field '" + field + "' must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw InputError("field '" + field + "[" + std::to_string(i) + "]' has the wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      try {
        m(i, k) = parse_rational(j[i][k].is_string() ? j[i][k].get<std::string>() : j[i][k].dump());
      } catch (const std::exception& e) {
        throw InputError("field '" + field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]': " + e.what());
      }
    }
  }
  return m;
}

// A second metric: either a full algebra file with a gram block (same
// algebra), or a bare {"v": ..., "z": ...} object.
MetricStructure load_second_metric(const std::string& path, const MetricStructure& first) {
  const std::string text = read_text(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    if (doc.contains("brackets")) {
      const auto file = parse_algebra(text);
      if (!file.gram) throw InputError(path + ": algebra file has no gram block");
      if (!(file.algebra == first.algebra())) throw InputError(path + ": algebra differs from the first file");
      return {first.algebra(), file.gram->v, file.gram->z};
    }
    const auto& alg = first.algebra();
    return {alg, parse_matrix_field(doc.at("v"), "v", alg.dim_v()), parse_matrix_field(doc.at("z"), "z", alg.dim_z())};
  } catch (const FormatError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Text tables use Unicode: "BC₁", "{α₁}", "h′_{1,0}(𝕆)".
std::string subscript(const std::string& digits) {
  static const char* const kSub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : digits) out += std::isdigit(static_cast<unsigned char>(c)) ? kSub[c - '0'] : std::string(1, c);
  return out;
}

std::string pretty_system(const std::string& label) {
  const auto k = label.find_first_of("0123456789");
  return label.substr(0, k) + subscript(label.substr(k));
}

std::string pretty_phi(const PhiSet& phi) {
  std::string out = "{";
  for (std::size_t i = 0; i < phi.size(); ++i) out += (i ? ", α" : "α") + subscript(std::to_string(phi[i] + 1));
  return out + "}";
}

std::string pretty_family(const HTypeFamilyId& id) {
  static const char* const kField[] = {"ℝ", "ℂ", "ℍ", "𝕆"};
  std::string s = id.to_string();
  if (id.kind == FamilyKind::Other) return s;
  if (id.kind == FamilyKind::HPrime) s.replace(1, 1, "′");
  const auto open = s.rfind('(');
  return s.substr(0, open + 1) + kField[static_cast<int>(id.tag)] + ")";
}

std::string family_label(const RealFormEntry& e) {
  return e.family ? pretty_family(*e.family) : std::string("abelian only");
}

ordered_json phi_json(const PhiSet& phi) {
  ordered_json out = ordered_json::array();
  for (auto i : phi) out.push_back(i + 1);
  return out;
}

ordered_json scan_json(const ScanReport& rep) {
  ordered_json orbits = ordered_json::array();
  for (const auto& orbit : rep.orbits) {
    ordered_json o = ordered_json::array();
    for (const auto& phi : orbit) o.push_back(phi_json(phi));
    orbits.push_back(std::move(o));
  }
  ordered_json passing = ordered_json::array();
  for (const auto& phi : rep.passing) passing.push_back(phi_json(phi));
  return {{"system", rep.system},
          {"subsetsChecked", rep.subsets_checked},
          {"passing", passing},
          {"orbits", orbits},
          {"automorphismInvariant", rep.automorphism_invariant}};
}

void print_scan(std::ostream& out, const ScanReport& rep) {
  out << rep.system << ": " << rep.subsets_checked << " subsets, ";
  if (rep.passing.empty()) {
    out << "none\n";
    return;
  }
  out << rep.orbits.size() << (rep.orbits.size() == 1 ? " orbit" : " orbits") << ":";
  for (const auto& orbit : rep.orbits) {
    out << " [";
    for (std::size_t k = 0; k < orbit.size(); ++k) out << (k ? " ~ " : "") << format_phi(orbit[k]);
    out << "]";
  }
  out << "\n";
}

std::vector<RootSystem> default_scan_systems(std::size_t max_rank) {
  std::vector<RootSystem> out;
  for (std::size_t n = 1; n <= max_rank; ++n) out.push_back(build_root_system(RootType::A, n));
  for (std::size_t n = 2; n <= max_rank; ++n) out.push_back(build_root_system(RootType::B, n));
  for (std::size_t n = 2; n <= max_rank; ++n) out.push_back(build_root_system(RootType::C, n));
  for (std::size_t n = 4; n <= max_rank; ++n) out.push_back(build_root_system(RootType::D, n));
  for (std::size_t n = 1; n <= max_rank; ++n) out.push_back(build_root_system(RootType::BC, n));
  for (auto t : {RootType::G2, RootType::F4, RootType::E6, RootType::E7, RootType::E8}) {
    out.push_back(build_root_system(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verbs

struct Options {
  bool json = false;
  std::string file;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t trials = 64;
  std::size_t jobs = 1;

  // construct
  std::string family;
  std::string field;
  std::size_t n = 1, p = 1, q = 0;
  std::size_t center_dim = 1;
  std::vector<std::size_t> multiplicities;

  // classify / scan-all / table
  std::string type;
  std::size_t rank = 0;
  std::size_t max_rank = 8;
  std::string table_path;

  // prolong
  int max_degree = 3;
  bool stop_when_zero = false;
  bool basis = false;
  std::size_t guard = kDefaultProlongGuard;

  // transfer
  std::string gram2;
  unsigned precision = kDefaultPrecisionBits;
};

int cmd_construct(const Options& o, std::ostream& out) {
  MetricStructure ms = [&] {
    try {
      if (o.family == "h") return make_h(parse_division_tag(o.field), o.n);
      if (o.family == "hprime") return make_h_prime(parse_division_tag(o.field), o.p, o.q);
      if (o.family == "clifford") {
        return make_clifford_module_algebra(o.center_dim, o.multiplicities.empty() ? std::vector<std::size_t>{1}
                                                                                   : o.multiplicities);
      }
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    throw InputError("unknown family '" + o.family + "' (expected h, hprime or clifford)");
  }();
  const std::string text = serialize_algebra(ms.to_file());
  if (o.output.empty()) {
    out << text << "\n";
    return kOk;
  }
  write_algebra_file(o.output, ms.to_file());
  if (o.json) {
    out << ordered_json{{"file", o.output},
                        {"name", ms.algebra().name()},
                        {"dimV", ms.algebra().dim_v()},
                        {"dimZ", ms.algebra().dim_z()}}
               .dump(2)
        << "\n";
  } else {
    out << "wrote " << o.output << ": " << ms.algebra().name() << " (" << ms.algebra().dim_v() << ", "
        << ms.algebra().dim_z() << ")\n";
  }
  return kOk;
}

int cmd_verify_htype(const Options& o, std::ostream& out) {
  const auto ms = load_metric(o.file);
  const bool ok = is_htype(ms);
  if (o.json) {
    out << ordered_json{{"name", ms.algebra().name()},
                        {"dimV", ms.algebra().dim_v()},
                        {"dimZ", ms.algebra().dim_z()},
                        {"htype", ok}}
               .dump(2)
        << "\n";
  } else {
    out << ms.algebra().name() << ": " << (ok ? "H-type" : "not H-type") << "\n";
  }
  return ok ? kOk : kFalse;
}

int cmd_nonsingular(const Options& o, std::ostream& out) {
  const auto ms = load_metric(o.file);
  const auto verdict = is_nonsingular(ms, NonsingularOptions{o.trials, o.seed});
  ordered_json j{{"name", ms.algebra().name()}};
  int code = kOk;
  std::string text;
  if (const auto* ns = std::get_if<NonSingular>(&verdict)) {
    j["verdict"] = "NonSingular";
    j["certificate"] = ns->certificate;
    text = "NonSingular: " + ns->certificate;
  } else if (const auto* s = std::get_if<Singular>(&verdict)) {
    j["verdict"] = "Singular";
    j["witness"] = {{"v", vector_json(s->witness.v)}, {"z", vector_json(s->witness.z)}};
    j["rank"] = s->rank;
    text = "Singular: ad X has rank " + std::to_string(s->rank) + " < dimZ = " + std::to_string(ms.algebra().dim_z());
    code = kFalse;
  } else {
    const auto& inc = std::get<Inconclusive>(verdict);
    j["verdict"] = "Inconclusive";
    j["trials"] = inc.trials;
    text = "Inconclusive after " + std::to_string(inc.trials) + " random trials";
    code = kUndecided;
  }
  if (o.json) out << j.dump(2) << "\n";
  else out << ms.algebra().name() << ": " << text << "\n";
  return code;
}

int cmd_classify(const Options& o, std::ostream& out) {
  RootSystem sys;
  try {
    sys = build_root_system(parse_root_type(o.type), o.rank);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto rep = scan(sys);
  if (o.json) out << scan_json(rep).dump(2) << "\n";
  else print_scan(out, rep);
  return kOk;
}

int cmd_scan_all(const Options& o, std::ostream& out) {
  const auto systems = default_scan_systems(o.max_rank);
  std::vector<ScanReport> reports(systems.size());
  const std::size_t jobs = std::max<std::size_t>(1, o.jobs);
  for (std::size_t start = 0; start < systems.size(); start += jobs) {
    std::vector<std::future<ScanReport>> batch;
    for (std::size_t i = start; i < std::min(systems.size(), start + jobs); ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&systems, i] { return scan(systems[i]); }));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) reports[start + k] = batch[k].get();
  }
  bool unique = true;
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const bool a1 = systems[i].type == RootType::A && systems[i].rank == 1;
    const bool ok = reports[i].automorphism_invariant && reports[i].orbits.size() == (a1 ? 0u : 1u);
    unique = unique && ok;
    auto j = scan_json(reports[i]);
    j["expected"] = ok;
    list.push_back(std::move(j));
    if (!o.json) print_scan(out, reports[i]);
  }
  if (o.json) out << ordered_json{{"systems", list}, {"uniqueness", unique}}.dump(2) << "\n";
  else out << (unique ? "uniqueness holds: one orbit per system, none for A1\n" : "uniqueness FAILS\n");
  return unique ? kOk : kFalse;
}

int cmd_table(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<RealFormEntry> table;
  try {
    table = load_real_forms(o.table_path.empty() ? default_real_forms_path() : o.table_path);
  } catch (const DataError& e) {
    throw InputError(e.what());
  }
  for (const auto& e : table) {
    const auto problems = check_real_form(e);
    if (!problems.empty()) {
      err << "error: inconsistent table row '" << e.name << "': " << problems.front() << "\n";
      return kFalse;
    }
  }
  const auto a1 = a1_exception_report(table);
  ordered_json rows = ordered_json::array();
  for (const auto& e : table) {
    const auto prof = nilradical_profile(e);
    const auto sys = build_root_system(e.type, e.rank);
    ordered_json row{{"name", e.name},
                     {"series", e.series},
                     {"restricted", sys.label()},
                     {"phi", phi_json(e.phi)},
                     {"paperLabels", e.paper_labels},
                     {"family", e.family ? ordered_json(e.family->to_string()) : ordered_json(nullptr)},
                     {"abelianOnly", e.abelian_only},
                     {"dimV", prof.dim_v},
                     {"dimZ", prof.dim_z}};
    rows.push_back(std::move(row));
    if (!o.json) {
      out << e.name << " | " << pretty_system(sys.label()) << " | " << pretty_phi(e.phi) << " | '" << e.paper_labels << "' | "
          << family_label(e) << " | (" << prof.dim_v << "," << prof.dim_z << ")" << (e.abelian_only ? " *" : "")
          << "\n";
    }
  }
  if (o.json) {
    out << ordered_json{{"rows", rows},
                        {"a1Exception", {{"a1Rows", a1.a1_rows}, {"consistent", a1.consistent()}}}}
               .dump(2)
        << "\n";
  } else {
    out << "* restricted type A₁: the only parabolic has an abelian nilradical; exactly the so(n,1) rows ("
        << a1.a1_rows.size() << ") have this type" << (a1.consistent() ? "" : " [INCONSISTENT]") << "\n";
  }
  return a1.consistent() ? kOk : kFalse;
}

int cmd_prolong(const Options& o, std::ostream& out) {
  const auto ms = load_metric(o.file);
  ProlongOptions po;
  po.max_degree = o.max_degree;
  po.stop_when_zero = o.stop_when_zero;
  po.max_entries = o.guard;
  ProlongationResult res;
  try {
    res = prolong(ms.algebra(), po);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto dims = res.dims();
  if (o.json) {
    ordered_json layers = ordered_json::array();
    for (const auto& l : res.layers) {
      ordered_json lj{{"degree", l.degree}, {"dim", l.dim()}};
      if (o.basis) {
        ordered_json b = ordered_json::array();
        for (std::size_t c = 0; c < l.dim(); ++c) b.push_back({{"a", matrix_json(l.a[c])}, {"b", matrix_json(l.b[c])}});
        lj["basis"] = std::move(b);
      }
      layers.push_back(std::move(lj));
    }
    ordered_json j{{"name", ms.algebra().name()}, {"dims", dims}, {"verdict", to_string(res.verdict)}};
    if (res.verdict == ProlongationVerdictKind::NonTrivialFinite) j["lastNonzeroDegree"] = res.last_nonzero_degree;
    j["layers"] = std::move(layers);
    out << j.dump(2) << "\n";
  } else {
    out << ms.algebra().name() << ": dims";
    for (auto d : dims) out << " " << d;
    out << "; " << to_string(res.verdict);
    if (res.verdict == ProlongationVerdictKind::NonTrivialFinite) out << "(" << res.last_nonzero_degree << ")";
    out << "\n";
  }
  return kOk;
}

int cmd_transfer(const Options& o, std::ostream& out) {
  const auto ms1 = load_metric(o.file);
  const auto ms2 = load_second_metric(o.gram2, ms1);
  if (o.precision < 64) throw InputError("precision must be at least 64 bits");
  if (!is_htype(ms1) || !is_htype(ms2)) {
    out << "transfer: both metrics must be H-type (" << (is_htype(ms1) ? "second" : "first") << " is not)\n";
    return kFalse;
  }
  const auto rep = transfer_operator(ms1, ms2, o.precision);
  if (o.json) {
    ordered_json j{{"name", ms1.algebra().name()},
                   {"precision", o.precision},
                   {"lambda", bigfloat_string(rep.lambda)},
                   {"exact", rep.exact_p.has_value()},
                   {"automorphismResidual", bigfloat_string(rep.automorphism_residual)},
                   {"centerScalarResidual", bigfloat_string(rep.center_scalar_residual)},
                   {"metricResidual", bigfloat_string(rep.metric_residual)},
                   {"centerRatioResidual", bigfloat_string(rep.center_ratio_residual)},
                   {"relationResidual", bigfloat_string(rep.relation_residual)},
                   {"tolerance", bigfloat_string(rep.tolerance)},
                   {"passed", rep.passed()}};
    if (rep.exact_lambda) j["exactLambda"] = to_string(*rep.exact_lambda);
    if (rep.exact_p) j["p"] = {{"v", matrix_json(rep.exact_p->map_v)}, {"z", matrix_json(rep.exact_p->map_z)}};
    out << j.dump(2) << "\n";
  } else {
    out << "lambda = " << (rep.exact_lambda ? to_string(*rep.exact_lambda) : bigfloat_string(rep.lambda))
        << (rep.exact_p ? " (P rational, verified exactly)" : "") << "\n"
        << "automorphism residual   " << bigfloat_string(rep.automorphism_residual) << "\n"
        << "center scalar residual  " << bigfloat_string(rep.center_scalar_residual) << "\n"
        << "metric residual         " << bigfloat_string(rep.metric_residual) << "\n"
        << "center ratio residual   " << bigfloat_string(rep.center_ratio_residual) << "\n"
        << "P^2 K_z = J_{P^2 z}     " << bigfloat_string(rep.relation_residual) << "\n"
        << "tolerance               " << bigfloat_string(rep.tolerance) << "\n"
        << (rep.passed() ? "passed" : "FAILED") << "\n";
  }
  return rep.passed() ? kOk : kFalse;
}

int cmd_identify(const Options& o, std::ostream& out) {
  const auto ms = load_metric(o.file);
  if (!is_htype(ms)) {
    out << ms.algebra().name() << ": not H-type\n";
    return kFalse;
  }
  const auto id = identify_family(ms);
  if (o.json) {
    out << ordered_json{{"name", ms.algebra().name()}, {"family", id.to_string()}}.dump(2) << "\n";
  } else {
    out << ms.algebra().name() << ": " << id.to_string() << "\n";
  }
  return kOk;
}

int cmd_probe(const Options& o, std::ostream& out) {
  const auto ms = load_metric(o.file);
  if (!is_htype(ms)) {
    out << ms.algebra().name() << ": not H-type, no sigma generators\n";
    return kFalse;
  }
  const auto verdict = irreducibility_probe(ms, sigma_generators(ms), o.trials, o.seed);
  ordered_json j{{"name", ms.algebra().name()}};
  int code = kOk;
  std::string text;
  if (const auto* irr = std::get_if<Irreducible>(&verdict)) {
    j["verdict"] = "Irreducible";
    j["certificate"] = irr->certificate;
    text = "Irreducible: " + irr->certificate;
  } else if (const auto* red = std::get_if<Reducible>(&verdict)) {
    j["verdict"] = "Reducible";
    ordered_json w = ordered_json::array();
    for (const auto& v : red->invariant_subspace) w.push_back(vector_json(v));
    j["invariantSubspace"] = std::move(w);
    text = "Reducible: invariant subspace of dimension " + std::to_string(red->invariant_subspace.size());
    code = kFalse;
  } else {
    j["verdict"] = "Inconclusive";
    j["reason"] = std::get<IrreducibilityUnknown>(verdict).reason;
    text = "Inconclusive: " + std::get<IrreducibilityUnknown>(verdict).reason;
    code = kUndecided;
  }
  if (o.json) out << j.dump(2) << "\n";
  else out << ms.algebra().name() << ": " << text << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heisenberg-type nilpotent Lie algebras, parabolic nilradicals and Tanaka prolongation", "nilrad"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "algebra file")->required(); };

  auto* construct = app.add_subcommand("construct", "build h_n(F), h'_{p,q}(F) or a Clifford-module algebra");
  construct->add_option("--family", o.family, "h | hprime | clifford")->required();
  construct->add_option("--field", o.field, "R | C | H | O");
  construct->add_option("--n", o.n, "n for h_n");
  construct->add_option("--p", o.p, "p for h'_{p,q}");
  construct->add_option("--q", o.q, "q for h'_{p,q}");
  construct->add_option("--center-dim", o.center_dim, "center dimension m for clifford (1..8)");
  construct->add_option("--multiplicities", o.multiplicities, "copies of each irreducible C(m)-module")->delimiter(',');
  construct->add_option("-o,--output", o.output, "output file (default: standard output)");
  add_json(construct);

  auto* verify = app.add_subcommand("verify-htype", "check the Clifford relations exactly");
  add_file(verify);
  add_json(verify);

  auto* nonsing = app.add_subcommand("nonsingular", "certificate or randomized falsifier for non-singularity");
  add_file(nonsing);
  nonsing->add_option("--trials", o.trials, "random trials");
  nonsing->add_option("--seed", o.seed, "random seed");
  add_json(nonsing);

  auto* classify = app.add_subcommand("classify", "scan all parabolic subsets of one root system");
  classify->add_option("--type", o.type, "A B C D E6 E7 E8 F4 G2 BC")->required();
  classify->add_option("--rank", o.rank, "rank (optional for exceptional types)");
  add_json(classify);

  auto* scan_all = app.add_subcommand("scan-all", "scan every type up to a rank cutoff");
  scan_all->add_option("--max-rank", o.max_rank, "rank cutoff for the classical series");
  scan_all->add_option("--jobs", o.jobs, "parallel workers");
  add_json(scan_all);

  auto* table = app.add_subcommand("table", "real forms, restricted systems and their H-type nilradicals");
  table->add_option("--table", o.table_path, "curated table (default: the shipped data file)");
  add_json(table);

  auto* prolong_cmd = app.add_subcommand("prolong", "Tanaka prolongation layer dimensions");
  add_file(prolong_cmd);
  prolong_cmd->add_option("--max-degree", o.max_degree, "highest degree k")->check(CLI::PositiveNumber);
  prolong_cmd->add_flag("--stop-when-zero", o.stop_when_zero, "stop at the first zero layer");
  prolong_cmd->add_flag("--basis", o.basis, "include basis blocks in JSON output");
  prolong_cmd->add_option("--guard", o.guard, "bound on unknowns^2 per degree");
  add_json(prolong_cmd);

  auto* transfer = app.add_subcommand("transfer", "isometric isomorphism between two H-type metrics");
  add_file(transfer);
  transfer->add_option("--gram2", o.gram2, "second metric: algebra file with gram block, or {v, z}")->required();
  transfer->add_option("--precision", o.precision, "bits of floating-point precision");
  add_json(transfer);

  auto* identify = app.add_subcommand("identify", "family of an H-type algebra");
  add_file(identify);
  add_json(identify);

  auto* probe = app.add_subcommand("probe-irreducible", "irreducibility of the sigma automorphisms on n^-1");
  add_file(probe);
  probe->add_option("--trials", o.trials, "random orbit starts")->default_val(16);
  probe->add_option("--seed", o.seed, "random seed");
  add_json(probe);

  std::vector<const char*> argv{"nilrad"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return cmd_construct(o, out);
    if (*verify) return cmd_verify_htype(o, out);
    if (*nonsing) return cmd_nonsingular(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*scan_all) return cmd_scan_all(o, out);
    if (*table) return cmd_table(o, out, err);
    if (*prolong_cmd) return cmd_prolong(o, out);
    if (*transfer) return cmd_transfer(o, out);
    if (*identify) return cmd_identify(o, out);
    if (*probe) return cmd_probe(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kUndecided;
  }
  return kUsage;
}

}  // namespace nilrad::cli
