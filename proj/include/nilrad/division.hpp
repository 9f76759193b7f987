#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nilrad/exactlin.hpp"

namespace nilrad {

/// The four real normed division algebras.
enum class DivisionTag { R, C, H, O };

std::size_t dimension(DivisionTag tag);
std::string to_string(DivisionTag tag);
/// "R", "C", "H", "O"; throws std::invalid_argument otherwise.
DivisionTag parse_division_tag(std::string_view text);

/// An element of R, C, H or O with rational coordinates in the basis
/// {e_0 = 1, e_1, ..., e_{dim-1}}.
///
/// Multiplication follows the Cayley-Dickson doubling
///   (a, b)(c, d) = (ac - d̄b, da + bc̄),
/// where an element of the doubled algebra is written a + b·u with u the new
/// unit. Applied R → C → H → O this gives, with u = e_1, e_2, e_4:
///   e_1 e_2 = e_3,   e_{4+k} = e_k e_4  (k = 1, 2, 3).
/// The full octonion table is in docs/octonions.md.
class DivisionElement {
 public:
  DivisionElement() = default;
  explicit DivisionElement(DivisionTag tag);
  DivisionElement(DivisionTag tag, Vector coords);

  static DivisionElement unit(DivisionTag tag, std::size_t index);
  static DivisionElement real(DivisionTag tag, const Rational& value);

  DivisionTag tag() const { return tag_; }
  std::size_t dim() const { return coords_.size(); }
  const Vector& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;

  friend bool operator==(const DivisionElement& a, const DivisionElement& b) = default;

 private:
  DivisionTag tag_ = DivisionTag::R;
  Vector coords_ = Vector(1);
};

DivisionElement operator+(const DivisionElement& x, const DivisionElement& y);
DivisionElement operator-(const DivisionElement& x, const DivisionElement& y);
DivisionElement operator-(const DivisionElement& x);
DivisionElement operator*(const Rational& s, const DivisionElement& x);

/// Algebra product; throws std::invalid_argument when the tags differ.
DivisionElement mul(const DivisionElement& x, const DivisionElement& y);
inline DivisionElement operator*(const DivisionElement& x, const DivisionElement& y) {
  return mul(x, y);
}

DivisionElement conj(const DivisionElement& x);
Rational re(const DivisionElement& x);
DivisionElement im(const DivisionElement& x);
/// Sum of squared coordinates.
Rational norm(const DivisionElement& x);

/// Product of basis units: e_i e_j = sign · e_index.
struct UnitProduct {
  int sign;
  std::size_t index;
};
UnitProduct unit_product(DivisionTag tag, std::size_t i, std::size_t j);

}  // namespace nilrad
