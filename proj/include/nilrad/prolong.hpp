#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilrad/exactlin.hpp"
#include "nilrad/nilalg.hpp"

namespace nilrad {

/// g_k of the Tanaka prolongation of m = g₋₂ ⊕ g₋₁ (g₋₁ = n⁻¹, g₋₂ = n⁻²).
/// Basis element c is the pair of blocks
///   a[c] : n⁻¹ → g_{k−1}   (dim g_{k−1} × dimV)
///   b[c] : n⁻² → g_{k−2}   (dim g_{k−2} × dimZ)
/// written in the stored bases of the lower layers.
struct ProlongationLayer {
  int degree = 0;
  std::vector<Matrix> a;
  std::vector<Matrix> b;

  std::size_t dim() const { return a.size(); }
};

enum class ProlongationVerdictKind { TrivialAtDegree1, NonTrivialFinite, NonTrivialUpToCutoff };

struct ProlongationResult {
  TwoStepAlgebra algebra;
  std::vector<ProlongationLayer> layers;  // g_0, g_1, ...
  ProlongationVerdictKind verdict = ProlongationVerdictKind::NonTrivialUpToCutoff;
  int last_nonzero_degree = 0;  // meaningful for NonTrivialFinite

  std::vector<std::size_t> dims() const;
};

std::string to_string(ProlongationVerdictKind kind);

class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default bound on unknowns², the size of a square system in the unknowns.
inline constexpr std::size_t kDefaultProlongGuard = 1'000'000;

struct ProlongOptions {
  int max_degree = 3;
  bool stop_when_zero = false;
  std::size_t max_entries = kDefaultProlongGuard;
};

/// dimV · dim g_{k−1} + dimZ · dim g_{k−2}, given g_0 .. g_{k−1}.
std::size_t unknown_count(const TwoStepAlgebra& alg, int k, const std::vector<ProlongationLayer>& previous);

/// Graded derivations (A, B) with B[x, y] = [Ax, y] + [x, Ay].
/// Requires a fundamental algebra (std::invalid_argument otherwise).
ProlongationLayer g0(const TwoStepAlgebra& alg, std::size_t max_entries = kDefaultProlongGuard);

/// g_k from g_0 .. g_{k−1}: all degree-k maps u with
/// u([x, y]) = [u(x), y] + [x, u(y)] for x, y ∈ m, brackets of g_j (j ≥ 0)
/// with m evaluated through the stored blocks. One exact nullspace.
/// Throws std::invalid_argument when `previous` is not exactly g_0..g_{k−1}
/// and ResourceGuardError when unknowns² exceeds `max_entries`.
ProlongationLayer g_k(const TwoStepAlgebra& alg, int k, const std::vector<ProlongationLayer>& previous,
                      std::size_t max_entries = kDefaultProlongGuard);

/// Re-checks the defining identity for every basis element of layers[k] on
/// all pairs of basis vectors of m, evaluating brackets directly.
bool verify_layer(const TwoStepAlgebra& alg, const std::vector<ProlongationLayer>& layers, int k);

/// g_0 .. g_{max_degree} (fewer with stop_when_zero). Once a layer k ≥ 1
/// vanishes, every later computed layer is checked to vanish too.
ProlongationResult prolong(const TwoStepAlgebra& alg, const ProlongOptions& options = {});

}  // namespace nilrad
