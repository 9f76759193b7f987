#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nilrad/exactlin.hpp"

namespace nilrad {

/// x = v + z with v in the first layer n⁻¹ and z in the center layer n⁻².
struct AlgebraElement {
  Vector v;
  Vector z;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// A graded 2-step nilpotent Lie algebra n = n⁻¹ ⊕ n⁻² given by the
/// brackets [e_i, e_j] ∈ n⁻² of basis vectors of n⁻¹. Only pairs i < j are
/// stored; [e_j, e_i] = -[e_i, e_j] and every bracket with n⁻² vanishes, so
/// the Jacobi identity holds for any choice of constants.
class TwoStepAlgebra {
 public:
  TwoStepAlgebra() = default;
  TwoStepAlgebra(std::string name, std::size_t dim_v, std::size_t dim_z);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t dim_v() const { return dim_v_; }
  std::size_t dim_z() const { return dim_z_; }
  std::size_t dim() const { return dim_v_ + dim_z_; }

  /// Sets [e_i, e_j] = value (and [e_j, e_i] = -value). Requires i ≠ j.
  void set_bracket(std::size_t i, std::size_t j, const Vector& value);
  /// Coordinate k of [e_i, e_j].
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim_v_ + j) * dim_z_ + k];
  }
  Vector basis_bracket(std::size_t i, std::size_t j) const;

  /// [x, y] restricted to first-layer arguments.
  Vector bracket_v(std::span<const Rational> x, std::span<const Rational> y) const;
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

  /// The dimZ × dimV matrix of y ↦ [x, y] on n⁻¹.
  Matrix ad_matrix(std::span<const Rational> x) const;

  /// True when the bracket values span n⁻².
  bool is_fundamental() const;

  AlgebraElement zero_element() const;

  friend bool operator==(const TwoStepAlgebra&, const TwoStepAlgebra&) = default;

 private:
  std::string name_;
  std::size_t dim_v_ = 0;
  std::size_t dim_z_ = 0;
  std::vector<Rational> constants_;  // dense [i][j][k], antisymmetric in (i, j)
};

/// Basis of the center, as vectors of length dimV + dimZ (first-layer
/// coordinates first).
std::vector<Vector> center(const TwoStepAlgebra& alg);

/// Basis of {v ∈ n⁻¹ : [v, n⁻¹] = 0}.
std::vector<Vector> first_layer_center(const TwoStepAlgebra& alg);

struct NonSingular {
  std::string certificate;
};
struct Singular {
  AlgebraElement witness;
  std::size_t rank;  // rank of ad(witness) onto n⁻², < dimZ
};
struct Inconclusive {
  std::size_t trials;
};
using NonsingularVerdict = std::variant<NonSingular, Singular, Inconclusive>;

struct NonsingularOptions {
  std::size_t trials = 64;
  std::uint64_t seed = 0;
};

/// Decides whether ad X : n → n⁻² is onto for every X outside the center.
/// NonSingular is only returned with a certificate (here: dimZ ≤ 1);
/// otherwise a randomized search for a rank-deficient X either finds an
/// exactly re-verified witness or gives up as Inconclusive. The H-type
/// certificate lives in htype.hpp.
NonsingularVerdict is_nonsingular(const TwoStepAlgebra& alg, const NonsingularOptions& options = {});

/// True when `x` is a verified singular witness: x ∉ center and
/// rank(ad x) < dimZ, checked exactly.
bool is_singular_witness(const TwoStepAlgebra& alg, const AlgebraElement& x);

/// Free 2-step nilpotent algebra on `generators` generators: n⁻² = Λ²(n⁻¹).
TwoStepAlgebra free_two_step(std::size_t generators);

/// Direct sum of two algebras (layers concatenated).
TwoStepAlgebra direct_sum(const TwoStepAlgebra& a, const TwoStepAlgebra& b, std::string name = {});

// ---------------------------------------------------------------------------
// File format

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GramPair {
  Matrix v;
  Matrix z;
};

struct AlgebraFile {
  TwoStepAlgebra algebra;
  std::optional<GramPair> gram;
};

/// {"name", "dimV", "dimZ", "brackets": [[i, j, [dimZ rationals]], ...], "gram"?: {"v", "z"}}
/// Brackets are written for i < j only; zero brackets are omitted.
std::string serialize_algebra(const AlgebraFile& file);
/// Throws FormatError naming the offending field (and line/column for
/// malformed JSON).
AlgebraFile parse_algebra(const std::string& text);

AlgebraFile read_algebra_file(const std::string& path);
void write_algebra_file(const std::string& path, const AlgebraFile& file);

}  // namespace nilrad
