#include "nilrad/prolong.hpp"

#include <map>

namespace nilrad {

std::vector<std::size_t> ProlongationResult::dims() const {
  std::vector<std::size_t> d;
  for (const auto& l : layers) d.push_back(l.dim());
  return d;
}

std::string to_string(ProlongationVerdictKind kind) {
  switch (kind) {
    case ProlongationVerdictKind::TrivialAtDegree1: return "TrivialAtDegree1";
    case ProlongationVerdictKind::NonTrivialFinite: return "NonTrivialFinite";
    case ProlongationVerdictKind::NonTrivialUpToCutoff: return "NonTrivialUpToCutoff";
  }
  return "?";
}

namespace {

// A basis vector of m: layer −1 (index into n⁻¹) or −2 (index into n⁻²).
struct NegBasis {
  int degree;
  std::size_t index;
};

class Tower {
 public:
  Tower(const TwoStepAlgebra& alg, const std::vector<ProlongationLayer>& layers) : alg_(alg), layers_(layers) {}

  std::size_t dim(int j) const {
    if (j >= 0) return static_cast<std::size_t>(j) < layers_.size() ? layers_[j].dim() : 0;
    if (j == -1) return alg_.dim_v();
    if (j == -2) return alg_.dim_z();
    return 0;
  }

  // [w_c, y] for basis element c of g_j and basis vector y of m; lies in
  // g_{j + y.degree}.
  Vector act(int j, std::size_t c, const NegBasis& y) const {
    const std::size_t out = dim(j + y.degree);
    if (out == 0) return {};
    if (j >= 0) {
      const auto& layer = layers_[j];
      return (y.degree == -1 ? layer.a[c] : layer.b[c]).column(y.index);
    }
    if (j == -1 && y.degree == -1) return alg_.basis_bracket(c, y.index);
    return Vector(out);
  }

 private:
  const TwoStepAlgebra& alg_;
  const std::vector<ProlongationLayer>& layers_;
};

std::vector<NegBasis> negative_basis(const TwoStepAlgebra& alg) {
  std::vector<NegBasis> out;
  for (std::size_t x = 0; x < alg.dim_v(); ++x) out.push_back({-1, x});
  for (std::size_t z = 0; z < alg.dim_z(); ++z) out.push_back({-2, z});
  return out;
}

void check_previous(int k, const std::vector<ProlongationLayer>& previous) {
  if (k < 0 || previous.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("g_" + std::to_string(k) + " needs exactly the layers g_0 .. g_" +
                                std::to_string(k - 1));
  }
  for (std::size_t j = 0; j < previous.size(); ++j) {
    if (previous[j].degree != static_cast<int>(j)) throw std::invalid_argument("previous layers out of order");
  }
}

// Coordinates of u(y) for a degree-k map u given by a flattened unknown
// vector: A(c, x) at c·dimV + x, B(c, z) at offset_b + c·dimZ + z.
struct Layout {
  std::size_t dim_v, dim_z, rows_a, rows_b;
  std::size_t offset_b() const { return rows_a * dim_v; }
  std::size_t total() const { return rows_a * dim_v + rows_b * dim_z; }
  std::size_t slot(const NegBasis& y, std::size_t c) const {
    return y.degree == -1 ? c * dim_v + y.index : offset_b() + c * dim_z + y.index;
  }
  std::size_t rows(const NegBasis& y) const { return y.degree == -1 ? rows_a : rows_b; }
};

}  // namespace

std::size_t unknown_count(const TwoStepAlgebra& alg, int k, const std::vector<ProlongationLayer>& previous) {
  const Tower tower(alg, previous);
  return alg.dim_v() * tower.dim(k - 1) + alg.dim_z() * tower.dim(k - 2);
}

ProlongationLayer g_k(const TwoStepAlgebra& alg, int k, const std::vector<ProlongationLayer>& previous,
                      std::size_t max_entries) {
  check_previous(k, previous);
  const Tower tower(alg, previous);
  const Layout layout{alg.dim_v(), alg.dim_z(), tower.dim(k - 1), tower.dim(k - 2)};
  const std::size_t unknowns = layout.total();
  if (unknowns != 0 && unknowns > max_entries / unknowns) {
    throw ResourceGuardError("prolongation degree " + std::to_string(k) + " needs " + std::to_string(unknowns) +
                             " unknowns; unknowns^2 exceeds the guard " + std::to_string(max_entries));
  }

  // For each pair p < q of basis vectors of m:
  //   u([p, q]) − [u(p), q] + [u(q), p] = 0   in g_{k + deg p + deg q}.
  const auto basis = negative_basis(alg);
  std::vector<std::map<std::size_t, Rational>> equations;
  for (std::size_t ip = 0; ip < basis.size(); ++ip) {
    for (std::size_t iq = ip + 1; iq < basis.size(); ++iq) {
      const NegBasis& p = basis[ip];
      const NegBasis& q = basis[iq];
      const int target = k + p.degree + q.degree;
      const std::size_t out = tower.dim(target);
      if (out == 0) continue;
      std::vector<std::map<std::size_t, Rational>> rows(out);
      if (p.degree == -1 && q.degree == -1) {
        const Vector br = alg.basis_bracket(p.index, q.index);
        for (std::size_t z = 0; z < br.size(); ++z) {
          if (br[z] == 0) continue;
          for (std::size_t r = 0; r < out; ++r) rows[r][layout.offset_b() + r * layout.dim_z + z] += br[z];
        }
      }
      for (std::size_t c = 0; c < layout.rows(p); ++c) {
        const Vector w = tower.act(k + p.degree, c, q);
        for (std::size_t r = 0; r < out; ++r)
          if (w[r] != 0) rows[r][layout.slot(p, c)] -= w[r];
      }
      for (std::size_t c = 0; c < layout.rows(q); ++c) {
        const Vector w = tower.act(k + q.degree, c, p);
        for (std::size_t r = 0; r < out; ++r)
          if (w[r] != 0) rows[r][layout.slot(q, c)] += w[r];
      }
      for (auto& row : rows) {
        std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
        if (!row.empty()) equations.push_back(std::move(row));
      }
    }
  }

  Matrix system(equations.size(), unknowns);
  for (std::size_t r = 0; r < equations.size(); ++r)
    for (const auto& [c, v] : equations[r]) system(r, c) = v;
  const auto kernel = nullspace(system);

  ProlongationLayer layer;
  layer.degree = k;
  for (const auto& v : kernel) {
    Matrix a(layout.rows_a, layout.dim_v), b(layout.rows_b, layout.dim_z);
    for (std::size_t c = 0; c < layout.rows_a; ++c)
      for (std::size_t x = 0; x < layout.dim_v; ++x) a(c, x) = v[c * layout.dim_v + x];
    for (std::size_t c = 0; c < layout.rows_b; ++c)
      for (std::size_t z = 0; z < layout.dim_z; ++z) b(c, z) = v[layout.offset_b() + c * layout.dim_z + z];
    layer.a.push_back(std::move(a));
    layer.b.push_back(std::move(b));
  }
  return layer;
}

ProlongationLayer g0(const TwoStepAlgebra& alg, std::size_t max_entries) {
  if (!alg.is_fundamental()) throw std::invalid_argument("prolongation needs a fundamental algebra");
  return g_k(alg, 0, {}, max_entries);
}

bool verify_layer(const TwoStepAlgebra& alg, const std::vector<ProlongationLayer>& layers, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= layers.size()) throw std::invalid_argument("no such layer");
  const std::vector<ProlongationLayer> lower(layers.begin(), layers.begin() + k);
  const Tower tower(alg, lower);
  const auto basis = negative_basis(alg);
  const auto& layer = layers[k];
  for (std::size_t e = 0; e < layer.dim(); ++e) {
    auto image = [&](const NegBasis& y) {
      return y.degree == -1 ? layer.a[e].column(y.index) : layer.b[e].column(y.index);
    };
    // [u(p), q] as an element of g_{k + deg p + deg q}.
    auto bracket_image = [&](const NegBasis& p, const NegBasis& q) {
      const Vector up = image(p);
      Vector acc(tower.dim(k + p.degree + q.degree));
      for (std::size_t c = 0; c < up.size(); ++c) {
        if (up[c] == 0 || acc.empty()) continue;
        acc = add(acc, scale(up[c], tower.act(k + p.degree, c, q)));
      }
      return acc;
    };
    for (const auto& p : basis) {
      for (const auto& q : basis) {
        Vector lhs(tower.dim(k + p.degree + q.degree));
        if (lhs.empty()) continue;
        if (p.degree == -1 && q.degree == -1) lhs = layer.b[e] * alg.basis_bracket(p.index, q.index);
        const Vector rhs = sub(bracket_image(p, q), bracket_image(q, p));
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

ProlongationResult prolong(const TwoStepAlgebra& alg, const ProlongOptions& options) {
  if (options.max_degree < 1) throw std::invalid_argument("max degree must be at least 1");
  ProlongationResult result;
  result.algebra = alg;
  result.layers.push_back(g0(alg, options.max_entries));
  int first_zero = -1;
  for (int k = 1; k <= options.max_degree; ++k) {
    if (first_zero > 0 && options.stop_when_zero) break;
    result.layers.push_back(g_k(alg, k, result.layers, options.max_entries));
    const bool zero = result.layers.back().dim() == 0;
    if (zero && first_zero < 0) first_zero = k;
    if (!zero && first_zero > 0) {
      throw std::logic_error("prolongation layer " + std::to_string(k) + " is nonzero after g_" +
                             std::to_string(first_zero) + " = 0");
    }
  }
  if (result.layers[1].dim() == 0) {
    result.verdict = ProlongationVerdictKind::TrivialAtDegree1;
  } else if (first_zero > 0) {
    result.verdict = ProlongationVerdictKind::NonTrivialFinite;
    result.last_nonzero_degree = first_zero - 1;
  } else {
    result.verdict = ProlongationVerdictKind::NonTrivialUpToCutoff;
    result.last_nonzero_degree = options.max_degree;
  }
  return result;
}

}  // namespace nilrad
