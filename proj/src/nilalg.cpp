#include "nilrad/nilalg.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nilrad {

TwoStepAlgebra::TwoStepAlgebra(std::string name, std::size_t dim_v, std::size_t dim_z)
    : name_(std::move(name)), dim_v_(dim_v), dim_z_(dim_z), constants_(dim_v * dim_v * dim_z) {}

void TwoStepAlgebra::set_bracket(std::size_t i, std::size_t j, const Vector& value) {
  if (i >= dim_v_ || j >= dim_v_) throw std::out_of_range("bracket index out of range");
  if (i == j) throw std::invalid_argument("[e_i, e_i] is always zero");
  if (value.size() != dim_z_) throw std::invalid_argument("bracket value has wrong length");
  for (std::size_t k = 0; k < dim_z_; ++k) {
    constants_[(i * dim_v_ + j) * dim_z_ + k] = value[k];
    constants_[(j * dim_v_ + i) * dim_z_ + k] = -value[k];
  }
}

Vector TwoStepAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  Vector out(dim_z_);
  for (std::size_t k = 0; k < dim_z_; ++k) out[k] = constant(i, j, k);
  return out;
}

Vector TwoStepAlgebra::bracket_v(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != dim_v_ || y.size() != dim_v_) {
    throw std::invalid_argument("bracket argument dimension mismatch");
  }
  Vector out(dim_z_);
  for (std::size_t i = 0; i < dim_v_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_v_; ++j) {
      if (y[j] == 0 || i == j) continue;
      const Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_z_; ++k) {
        const Rational& c = constant(i, j, k);
        if (c != 0) out[k] += xy * c;
      }
    }
  }
  return out;
}

AlgebraElement TwoStepAlgebra::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  if (x.z.size() != dim_z_ || y.z.size() != dim_z_) {
    throw std::invalid_argument("bracket argument dimension mismatch");
  }
  return {Vector(dim_v_), bracket_v(x.v, y.v)};
}

Matrix TwoStepAlgebra::ad_matrix(std::span<const Rational> x) const {
  Matrix m(dim_z_, dim_v_);
  for (std::size_t j = 0; j < dim_v_; ++j) {
    for (std::size_t i = 0; i < dim_v_; ++i) {
      if (x[i] == 0 || i == j) continue;
      for (std::size_t k = 0; k < dim_z_; ++k) m(k, j) += x[i] * constant(i, j, k);
    }
  }
  return m;
}

bool TwoStepAlgebra::is_fundamental() const {
  std::vector<Vector> values;
  for (std::size_t i = 0; i < dim_v_; ++i)
    for (std::size_t j = i + 1; j < dim_v_; ++j) values.push_back(basis_bracket(i, j));
  return span_basis(values).size() == dim_z_;
}

AlgebraElement TwoStepAlgebra::zero_element() const { return {Vector(dim_v_), Vector(dim_z_)}; }

std::vector<Vector> first_layer_center(const TwoStepAlgebra& alg) {
  // v is central iff [v, e_b] = 0 for all b: rows indexed by (b, k).
  const std::size_t n = alg.dim_v();
  Matrix m(n * alg.dim_z(), n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t k = 0; k < alg.dim_z(); ++k)
      for (std::size_t a = 0; a < n; ++a) m(b * alg.dim_z() + k, a) = alg.constant(a, b, k);
  return nullspace(m);
}

std::vector<Vector> center(const TwoStepAlgebra& alg) {
  std::vector<Vector> out;
  for (const auto& v : first_layer_center(alg)) {
    Vector w(alg.dim());
    std::copy(v.begin(), v.end(), w.begin());
    out.push_back(std::move(w));
  }
  for (std::size_t k = 0; k < alg.dim_z(); ++k) out.push_back(unit_vector(alg.dim(), alg.dim_v() + k));
  return out;
}

namespace {

bool in_span(std::span<const Vector> basis, const Vector& v) {
  if (basis.empty()) return is_zero(v);
  std::vector<Vector> all(basis.begin(), basis.end());
  const std::size_t r = span_basis(all).size();
  all.push_back(v);
  return span_basis(all).size() == r;
}

}  // namespace

bool is_singular_witness(const TwoStepAlgebra& alg, const AlgebraElement& x) {
  if (x.v.size() != alg.dim_v() || x.z.size() != alg.dim_z()) return false;
  const auto vcenter = first_layer_center(alg);
  if (in_span(vcenter, x.v)) return false;  // x is central
  return rank(alg.ad_matrix(x.v)) < alg.dim_z();
}

NonsingularVerdict is_nonsingular(const TwoStepAlgebra& alg, const NonsingularOptions& options) {
  if (alg.dim_z() == 0) {
    return NonSingular{"abelian: the center is the whole algebra, so the condition is vacuous"};
  }
  if (alg.dim_z() == 1) {
    return NonSingular{
        "one-dimensional center: ad X is nonzero for X outside the center, hence onto n^-2"};
  }
  const auto vcenter = first_layer_center(alg);
  auto try_candidate = [&](const Vector& v) -> std::optional<Singular> {
    if (is_zero(v) || in_span(vcenter, v)) return std::nullopt;
    const std::size_t r = rank(alg.ad_matrix(v));
    if (r >= alg.dim_z()) return std::nullopt;
    AlgebraElement x{v, Vector(alg.dim_z())};
    if (!is_singular_witness(alg, x)) return std::nullopt;
    return Singular{std::move(x), r};
  };
  for (std::size_t i = 0; i < alg.dim_v(); ++i) {
    if (auto s = try_candidate(unit_vector(alg.dim_v(), i))) return *s;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t t = 0; t < options.trials; ++t) {
    Vector v(alg.dim_v());
    for (auto& c : v) c = coeff(rng);
    if (auto s = try_candidate(v)) return *s;
  }
  return Inconclusive{options.trials};
}

TwoStepAlgebra free_two_step(std::size_t generators) {
  const std::size_t dz = generators * (generators - 1) / 2;
  TwoStepAlgebra alg("free2step(" + std::to_string(generators) + ")", generators, dz);
  std::size_t k = 0;
  for (std::size_t i = 0; i < generators; ++i)
    for (std::size_t j = i + 1; j < generators; ++j) alg.set_bracket(i, j, unit_vector(dz, k++));
  return alg;
}

TwoStepAlgebra direct_sum(const TwoStepAlgebra& a, const TwoStepAlgebra& b, std::string name) {
  if (name.empty()) name = a.name() + "+" + b.name();
  TwoStepAlgebra out(std::move(name), a.dim_v() + b.dim_v(), a.dim_z() + b.dim_z());
  for (std::size_t i = 0; i < a.dim_v(); ++i)
    for (std::size_t j = i + 1; j < a.dim_v(); ++j) {
      Vector value(out.dim_z());
      for (std::size_t k = 0; k < a.dim_z(); ++k) value[k] = a.constant(i, j, k);
      out.set_bracket(i, j, value);
    }
  for (std::size_t i = 0; i < b.dim_v(); ++i)
    for (std::size_t j = i + 1; j < b.dim_v(); ++j) {
      Vector value(out.dim_z());
      for (std::size_t k = 0; k < b.dim_z(); ++k) value[a.dim_z() + k] = b.constant(i, j, k);
      out.set_bracket(a.dim_v() + i, a.dim_v() + j, value);
    }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw FormatError("field '" + field + "': " + what);
}

Rational rational_field(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(field, "expected a rational string like \"-3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

std::size_t count_field(const json& obj, const char* key) {
  if (!obj.contains(key)) fail(key, "missing");
  const auto& j = obj.at(key);
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(key, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Matrix matrix_field(const json& j, std::size_t n, const std::string& field) {
  if (!j.is_array() || j.size() != n) fail(field, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n) fail(row_field, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      m(i, k) = rational_field(j[i][k], row_field + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

}  // namespace

std::string serialize_algebra(const AlgebraFile& file) {
  const auto& alg = file.algebra;
  json out;
  out["name"] = alg.name();
  out["dimV"] = alg.dim_v();
  out["dimZ"] = alg.dim_z();
  json brackets = json::array();
  for (std::size_t i = 0; i < alg.dim_v(); ++i) {
    for (std::size_t j = i + 1; j < alg.dim_v(); ++j) {
      const Vector value = alg.basis_bracket(i, j);
      if (is_zero(value)) continue;
      json coords = json::array();
      for (const auto& c : value) coords.push_back(to_string(c));
      brackets.push_back(json::array({i, j, std::move(coords)}));
    }
  }
  out["brackets"] = std::move(brackets);
  if (file.gram) {
    out["gram"] = json{{"v", matrix_to_json(file.gram->v)}, {"z", matrix_to_json(file.gram->z)}};
  }
  return out.dump(2) + "\n";
}

AlgebraFile parse_algebra(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("top level must be a JSON object");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  const std::size_t dim_v = count_field(doc, "dimV");
  const std::size_t dim_z = count_field(doc, "dimZ");
  AlgebraFile file{TwoStepAlgebra(name, dim_v, dim_z), std::nullopt};
  if (!doc.contains("brackets")) fail("brackets", "missing");
  const auto& brackets = doc["brackets"];
  if (!brackets.is_array()) fail("brackets", "expected an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < brackets.size(); ++n) {
    const std::string field = "brackets[" + std::to_string(n) + "]";
    const auto& entry = brackets[n];
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer() || !entry[2].is_array()) {
      fail(field, "expected [i, j, [rationals]]");
    }
    const long i = entry[0].get<long>();
    const long j = entry[1].get<long>();
    if (i < 0 || j < 0 || static_cast<std::size_t>(j) >= dim_v || i >= j) {
      fail(field, "indices must satisfy 0 <= i < j < dimV");
    }
    if (!seen.emplace(i, j).second) fail(field, "duplicate pair");
    if (entry[2].size() != dim_z) fail(field, "value must have dimZ = " + std::to_string(dim_z) + " entries");
    Vector value(dim_z);
    for (std::size_t k = 0; k < dim_z; ++k) {
      value[k] = rational_field(entry[2][k], field + "[2][" + std::to_string(k) + "]");
    }
    file.algebra.set_bracket(static_cast<std::size_t>(i), static_cast<std::size_t>(j), value);
  }
  if (doc.contains("gram")) {
    const auto& g = doc["gram"];
    if (!g.is_object() || !g.contains("v") || !g.contains("z")) fail("gram", "expected {\"v\": ..., \"z\": ...}");
    file.gram = GramPair{matrix_field(g["v"], dim_v, "gram.v"), matrix_field(g["z"], dim_z, "gram.z")};
  }
  return file;
}

AlgebraFile read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_algebra(buffer.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_algebra_file(const std::string& path, const AlgebraFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_algebra(file);
}

}  // namespace nilrad
