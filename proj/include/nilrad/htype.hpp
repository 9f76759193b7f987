#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilrad/bigfloat.hpp"
#include "nilrad/division.hpp"
#include "nilrad/exactlin.hpp"
#include "nilrad/nilalg.hpp"

namespace nilrad {

/// A graded positive-definite inner product on a 2-step algebra:
/// gram_v on n⁻¹, gram_z on n⁻², no cross terms.
class MetricStructure {
 public:
  /// Throws std::invalid_argument unless both Gram matrices have the right
  /// size and are symmetric positive definite.
  MetricStructure(TwoStepAlgebra algebra, Matrix gram_v, Matrix gram_z);

  /// Identity Gram matrices in the given basis.
  static MetricStructure standard(TwoStepAlgebra algebra);

  const TwoStepAlgebra& algebra() const { return algebra_; }
  const Matrix& gram_v() const { return gram_v_; }
  const Matrix& gram_z() const { return gram_z_; }

  AlgebraFile to_file() const { return {algebra_, GramPair{gram_v_, gram_z_}}; }
  /// Uses identity Gram matrices when the file has none.
  static MetricStructure from_file(const AlgebraFile& file);

 private:
  TwoStepAlgebra algebra_;
  Matrix gram_v_;
  Matrix gram_z_;
};

/// A linear map of n preserving the grading.
struct GradedMap {
  Matrix map_v;
  Matrix map_z;

  static GradedMap identity(const TwoStepAlgebra& alg);
  friend bool operator==(const GradedMap&, const GradedMap&) = default;
};

/// (a ∘ b)(x) = a(b(x)).
GradedMap compose(const GradedMap& a, const GradedMap& b);

/// A basis pair (i, j) with [f e_i, f e_j] ≠ f[e_i, e_j].
struct BracketViolation {
  std::size_t i;
  std::size_t j;
};

/// Exact check of [f x, f y] = f[x, y] over all basis pairs of n⁻¹.
std::optional<BracketViolation> automorphism_violation(const TwoStepAlgebra& alg, const GradedMap& f);
bool is_automorphism(const TwoStepAlgebra& alg, const GradedMap& f);
/// f preserves both Gram matrices exactly.
bool is_isometry(const MetricStructure& ms, const GradedMap& f);

/// The metric ⟨x, y⟩' = ⟨f x, f y⟩.
MetricStructure pullback(const MetricStructure& ms, const GradedMap& f);

/// The grading dilation: t on n⁻¹, t² on n⁻².
GradedMap dilation(const TwoStepAlgebra& alg, const Rational& t);

// ---------------------------------------------------------------------------
// Families

enum class FamilyKind { H, HPrime, Other };

/// h_n(F), h'_{p,q}(F) or "other".
struct HTypeFamilyId {
  FamilyKind kind = FamilyKind::Other;
  DivisionTag tag = DivisionTag::R;
  std::vector<std::size_t> params;  // {n} or {p, q}

  /// Throws std::invalid_argument when the parameters are not allowed:
  /// h over O needs n = 1, h' needs F ∈ {C, H, O}, h' over O needs (1, 0).
  void validate() const;
  std::string to_string() const;
  /// Same family, with (p, q) and (q, p) identified; over C only p + q counts.
  bool same_family(const HTypeFamilyId& other) const;

  friend bool operator==(const HTypeFamilyId&, const HTypeFamilyId&) = default;
};

/// h_n(F) = F^{2n} ⊕ F with [(a, b), (c, d)] = aᵗd − cᵗb. n⁻¹ coordinates
/// are (a_1, ..., a_n, b_1, ..., b_n), each a block of dim F reals.
/// Gram matrices are the identity.
MetricStructure make_h(DivisionTag tag, std::size_t n);

/// h'_{p,q}(F) = F^{p+q} ⊕ Im F with
/// [(a, b), (c, d)] = aᵗc̄ − cᵗā − (b̄ᵗd − d̄ᵗb), n⁻² coordinates e_1..e_{dim-1}.
/// The q-block sign matters: with + instead, b ↦ b̄ turns the q-block into a
/// copy of the p-block and the algebra is h'_{p+q,0}(F). With −, J_z acts as
/// the two inequivalent C(3)-modules on the blocks when F = H.
/// The bracket carries a factor 2 (a c̄ − c ā = 2 Im(a c̄)), so the first
/// layer gets gram 2·Id to make J_z² = −|z|²; the center gram is the identity.
MetricStructure make_h_prime(DivisionTag tag, std::size_t p, std::size_t q);

/// H-type algebra built from a Clifford module: n⁻² = R^m, n⁻¹ a sum of
/// irreducible C(m)-modules, ⟨[x, y], z⟩ = ⟨J_z x, y⟩. `multiplicities`
/// has one entry, or two when m ≡ 3 (mod 4) (the two inequivalent
/// irreducible modules). Supports 1 ≤ m ≤ 8.
MetricStructure make_clifford_module_algebra(std::size_t center_dim,
                                             const std::vector<std::size_t>& multiplicities);

// ---------------------------------------------------------------------------
// J_z and the H-type condition

/// The endomorphism of n⁻¹ with ⟨J_z x, y⟩ = ⟨z, [x, y]⟩.
Matrix jz(const MetricStructure& ms, std::span<const Rational> z);

/// True iff dimZ ≥ 1 and J_{z_i} J_{z_j} + J_{z_j} J_{z_i} = −2 gramZ(z_i, z_j) Id
/// for all basis pairs, exactly.
bool is_htype(const MetricStructure& ms);

/// Non-singularity with the H-type certificate tried first: for H-type
/// metrics J_z x ≠ 0 whenever x, z ≠ 0, which makes ad x onto n⁻².
NonsingularVerdict is_nonsingular(const MetricStructure& ms, const NonsingularOptions& options = {});

// ---------------------------------------------------------------------------
// Isometric isomorphism between two H-type metrics

struct TransferReport {
  /// P restricted to each layer; always filled.
  FloatMatrix p_v;
  FloatMatrix p_z;
  BigFloat lambda;
  /// Set when P turned out to be rational and was verified exactly.
  std::optional<GradedMap> exact_p;
  std::optional<Rational> exact_lambda;

  BigFloat automorphism_residual;   // max |P[x,y] − [Px,Py]|
  BigFloat center_scalar_residual;  // max |P_z − λ Id|
  BigFloat metric_residual;         // max |Pᵗ gram1 P − gram2|
  BigFloat center_ratio_residual;   // max |gramZ2 − λ² gramZ1|
  BigFloat relation_residual;       // max |P² K_z − J_{P² z}| over basis z
  BigFloat tolerance;

  bool passed() const;
};

/// The positive square root P of gram1⁻¹ gram2 (blockwise). For two H-type
/// metrics it is an automorphism with P|n⁻² = λ Id.
/// Both metrics must be H-type on the same algebra (std::invalid_argument
/// otherwise).
TransferReport transfer_operator(const MetricStructure& ms1, const MetricStructure& ms2,
                                 unsigned precision_bits = kDefaultPrecisionBits);

// ---------------------------------------------------------------------------
// Automorphisms and irreducibility

/// diag(J_z, R_z) with R_z = 2 z zᵗ gramZ − Id, the reflection fixing z. For
/// H-type metrics [J_z x, J_z y] = −[x, y] + 2⟨z, [x, y]⟩ z, so this is an
/// automorphism; it is verified exactly on every call (std::logic_error on
/// failure). z must have gramZ(z, z) = 1 (std::invalid_argument otherwise).
GradedMap sigma_automorphism(const MetricStructure& ms, std::span<const Rational> z);

struct SwapResult {
  std::optional<GradedMap> map;
  /// Indices of the center basis vectors whose σ maps were precomposed with
  /// θ (empty when θ worked as given).
  std::vector<std::size_t> sigma_word;
  /// First violating basis pair of the uncorrected Θ, when it failed.
  std::optional<BracketViolation> violation;
};

/// Θ = θ on v1, θ⁻¹ on v2, identity on the orthogonal complement of
/// v1 ⊕ v2, θ on n⁻². v1 and v2 are given by bases of n⁻¹ vectors; θ must be
/// an isometric isomorphism v1 ⊕ n⁻² → v2 ⊕ n⁻² (std::invalid_argument
/// otherwise). If Θ is not an automorphism, θ is precomposed with words of
/// up to `search_depth` σ maps (center basis vectors) and retried.
SwapResult build_swap_automorphism(const MetricStructure& ms, const std::vector<Vector>& v1,
                                   const std::vector<Vector>& v2, const GradedMap& theta,
                                   std::size_t search_depth = 2);

struct Irreducible {
  std::string certificate;
};
struct Reducible {
  std::vector<Vector> invariant_subspace;
};
struct IrreducibilityUnknown {
  std::string reason;
};
using IrreducibilityVerdict = std::variant<Irreducible, Reducible, IrreducibilityUnknown>;

/// Action of the group generated by `generators` on n⁻¹. Generators must be
/// orthogonal automorphisms (std::invalid_argument otherwise).
IrreducibilityVerdict irreducibility_probe(const MetricStructure& ms,
                                           const std::vector<GradedMap>& generators,
                                           std::size_t trials = 16, std::uint64_t seed = 0);

/// {σ_z : z a gramZ-unit basis vector}.
std::vector<GradedMap> sigma_generators(const MetricStructure& ms);

/// Family up to isomorphism, read off from layer dimensions and the
/// signature of the Clifford volume element. Requires is_htype.
HTypeFamilyId identify_family(const MetricStructure& ms);

}  // namespace nilrad
