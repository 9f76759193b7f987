#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nilrad/htype.hpp"

namespace nilrad {

enum class RootType { A, B, C, D, E6, E7, E8, F4, G2, BC };

std::string to_string(RootType type);
/// Accepts the names printed by to_string. Throws std::invalid_argument.
RootType parse_root_type(std::string_view text);

/// A root as its coefficients in the simple roots.
using RootCoeffs = std::vector<int>;

/// Simple-root indices, 0-based and sorted.
using PhiSet = std::vector<std::size_t>;

/// An irreducible root system, possibly non-reduced (BC). Roots are stored
/// in the simple-root basis together with the Gram matrix of the invariant
/// form on the simple roots, which is all the root-string algorithm needs.
struct RootSystem {
  RootType type = RootType::A;
  std::size_t rank = 0;
  std::vector<std::vector<int>> form;  // (α_i, α_j), integer valued
  std::vector<RootCoeffs> roots;       // positives first, then their negatives
  std::vector<std::size_t> simples;
  std::vector<std::size_t> positives;
  std::size_t highest = 0;

  /// "A3", "BC2", "E6".
  std::string label() const;
  std::optional<std::size_t> index_of(const RootCoeffs& coeffs) const;
  bool is_root(const RootCoeffs& coeffs) const { return index_of(coeffs).has_value(); }
  int inner(const RootCoeffs& a, const RootCoeffs& b) const;
  /// Squared length of a root in the form's normalization.
  int length2(const RootCoeffs& a) const { return inner(a, a); }
  /// True when a/2 is also a root (only happens for BC).
  bool is_divisible(const RootCoeffs& a) const;
};

/// Bourbaki numbering. Valid ranks: A ≥ 1, B ≥ 2, C ≥ 2, D ≥ 4, BC ≥ 1,
/// exceptional types at their own rank (rank 0 means "the natural one").
/// Throws std::invalid_argument otherwise.
RootSystem build_root_system(RootType type, std::size_t rank = 0);

/// Sum of the root's coefficients over Φ.
int phi_height(const PhiSet& phi, const RootCoeffs& root);
int max_phi_height(const RootSystem& sys, const PhiSet& phi);

/// φ-height of the highest root is 2. Throws on empty Φ.
bool is_two_step(const RootSystem& sys, const PhiSet& phi);

/// For every positive root α of Φ-height 1, γ − α is a root of Φ-height 1.
/// Requires is_two_step (std::invalid_argument otherwise).
bool is_nonsingular_combinatorial(const RootSystem& sys, const PhiSet& phi);

/// The group of Dynkin diagram automorphisms as permutations of the simple
/// roots, identity first.
std::vector<std::vector<std::size_t>> diagram_automorphisms(const RootSystem& sys);

PhiSet apply_permutation(const std::vector<std::size_t>& perm, const PhiSet& phi);

struct ScanReport {
  std::string system;
  std::size_t subsets_checked = 0;
  std::vector<PhiSet> passing;
  /// Orbits of the passing sets under diagram automorphisms.
  std::vector<std::vector<PhiSet>> orbits;
  /// The passing sets form a union of orbits.
  bool automorphism_invariant = true;
};

/// Exhaustive over the 2^rank − 1 nonempty subsets.
ScanReport scan(const RootSystem& sys);

/// "{α1, α3}", 1-based.
std::string format_phi(const PhiSet& phi);

// ---------------------------------------------------------------------------
// Curated real forms

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multiplicities of an indivisible root class and of twice such roots.
struct Multiplicity {
  int m_alpha = 0;
  int m_2alpha = 0;
};

struct RealFormEntry {
  std::string name;
  std::string series;
  RootType type = RootType::A;
  std::size_t rank = 0;
  /// Keyed by length class of indivisible roots: "all" for one length,
  /// "long"/"short" for two.
  std::map<std::string, Multiplicity> multiplicities;
  PhiSet phi;
  std::optional<HTypeFamilyId> family;  // absent for abelian-only rows
  bool abelian_only = false;
  std::string paper_labels;
};

struct NilradicalProfile {
  std::size_t dim_v = 0;
  std::size_t dim_z = 0;
  std::vector<RootCoeffs> layer1;  // positive roots of Φ-height 1
  std::vector<RootCoeffs> layer2;  // positive roots of Φ-height 2
};

/// "all", "long" or "short" for an indivisible root.
std::string length_class(const RootSystem& sys, const RootCoeffs& root);
int multiplicity(const RootSystem& sys, const RealFormEntry& entry, const RootCoeffs& root);

/// Layer dimensions from multiplicities. Throws DataError when they differ
/// from the declared family's (or when an abelian-only row has dimZ ≠ 0).
NilradicalProfile nilradical_profile(const RealFormEntry& entry);

/// (dimV, dimZ) of a family member.
std::pair<std::size_t, std::size_t> family_dims(const HTypeFamilyId& id);

std::vector<RealFormEntry> parse_real_forms(const std::string& text);
std::vector<RealFormEntry> load_real_forms(const std::string& path);
std::string default_real_forms_path();

struct A1ExceptionReport {
  std::vector<std::string> a1_rows;
  std::vector<std::string> so_n1_rows;
  bool a1_scan_empty = false;
  int a1_max_height = 0;
  std::vector<std::string> problems;
  bool consistent() const { return problems.empty(); }
};

/// Exactly the so(n,1) rows have restricted type A1, scan(A1) is empty and
/// the only Φ on A1 has max height 1.
A1ExceptionReport a1_exception_report(const std::vector<RealFormEntry>& table);

/// Row checks: profile matches the family, Φ is two-step and nonsingular and
/// lies in the scan's passing set. Returns the problems found.
std::vector<std::string> check_real_form(const RealFormEntry& entry);

}  // namespace nilrad
