#include "nilrad/division.hpp"

#include <array>
#include <stdexcept>

namespace nilrad {

std::size_t dimension(DivisionTag tag) {
  switch (tag) {
    case DivisionTag::R: return 1;
    case DivisionTag::C: return 2;
    case DivisionTag::H: return 4;
    case DivisionTag::O: return 8;
  }
  throw std::invalid_argument("unknown division algebra tag");
}

std::string to_string(DivisionTag tag) {
  switch (tag) {
    case DivisionTag::R: return "R";
    case DivisionTag::C: return "C";
    case DivisionTag::H: return "H";
    case DivisionTag::O: return "O";
  }
  return "?";
}

DivisionTag parse_division_tag(std::string_view text) {
  if (text == "R") return DivisionTag::R;
  if (text == "C") return DivisionTag::C;
  if (text == "H") return DivisionTag::H;
  if (text == "O") return DivisionTag::O;
  throw std::invalid_argument("unknown division algebra '" + std::string(text) + "'");
}

namespace {

// Cayley-Dickson product on signed unit vectors, computed recursively on
// coordinate arrays. Only used to build the unit tables below.
using Coords = std::vector<int>;

Coords cd_conj(const Coords& x) {
  Coords r(x.size());
  r[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

Coords cd_mul(const Coords& x, const Coords& y) {
  const std::size_t n = x.size();
  if (n == 1) return {x[0] * y[0]};
  const std::size_t h = n / 2;
  Coords a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  Coords c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  // (a, b)(c, d) = (ac - d̄b, da + bc̄)
  Coords ac = cd_mul(a, c), db = cd_mul(cd_conj(d), b);
  Coords da = cd_mul(d, a), bc = cd_mul(b, cd_conj(c));
  Coords r(n);
  for (std::size_t i = 0; i < h; ++i) {
    r[i] = ac[i] - db[i];
    r[h + i] = da[i] + bc[i];
  }
  return r;
}

template <std::size_t N>
std::array<std::array<UnitProduct, N>, N> build_table() {
  std::array<std::array<UnitProduct, N>, N> table{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      Coords x(N, 0), y(N, 0);
      x[i] = 1;
      y[j] = 1;
      Coords p = cd_mul(x, y);
      for (std::size_t k = 0; k < N; ++k) {
        if (p[k] != 0) table[i][j] = UnitProduct{p[k], k};
      }
    }
  }
  return table;
}

const auto kTable1 = build_table<1>();
const auto kTable2 = build_table<2>();
const auto kTable4 = build_table<4>();
const auto kTable8 = build_table<8>();

}  // namespace

UnitProduct unit_product(DivisionTag tag, std::size_t i, std::size_t j) {
  switch (tag) {
    case DivisionTag::R: return kTable1.at(i).at(j);
    case DivisionTag::C: return kTable2.at(i).at(j);
    case DivisionTag::H: return kTable4.at(i).at(j);
    case DivisionTag::O: return kTable8.at(i).at(j);
  }
  throw std::invalid_argument("unknown division algebra tag");
}

DivisionElement::DivisionElement(DivisionTag tag) : tag_(tag), coords_(dimension(tag)) {}

DivisionElement::DivisionElement(DivisionTag tag, Vector coords)
    : tag_(tag), coords_(std::move(coords)) {
  if (coords_.size() != dimension(tag)) {
    throw std::invalid_argument("coordinate count does not match division algebra " +
                                to_string(tag));
  }
}

DivisionElement DivisionElement::unit(DivisionTag tag, std::size_t index) {
  DivisionElement e(tag);
  e.coords_.at(index) = 1;
  return e;
}

DivisionElement DivisionElement::real(DivisionTag tag, const Rational& value) {
  DivisionElement e(tag);
  e.coords_[0] = value;
  return e;
}

bool DivisionElement::is_zero() const { return nilrad::is_zero(coords_); }

namespace {

void require_same_tag(const DivisionElement& x, const DivisionElement& y) {
  if (x.tag() != y.tag()) {
    throw std::invalid_argument("division algebra mismatch: " + to_string(x.tag()) + " vs " +
                                to_string(y.tag()));
  }
}

}  // namespace

DivisionElement operator+(const DivisionElement& x, const DivisionElement& y) {
  require_same_tag(x, y);
  return {x.tag(), add(x.coords(), y.coords())};
}

DivisionElement operator-(const DivisionElement& x, const DivisionElement& y) {
  require_same_tag(x, y);
  return {x.tag(), sub(x.coords(), y.coords())};
}

DivisionElement operator-(const DivisionElement& x) { return {x.tag(), scale(-1, x.coords())}; }

DivisionElement operator*(const Rational& s, const DivisionElement& x) {
  return {x.tag(), scale(s, x.coords())};
}

DivisionElement mul(const DivisionElement& x, const DivisionElement& y) {
  require_same_tag(x, y);
  const std::size_t n = x.dim();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      const auto p = unit_product(x.tag(), i, j);
      if (p.sign > 0) out[p.index] += x[i] * y[j];
      else out[p.index] -= x[i] * y[j];
    }
  }
  return {x.tag(), std::move(out)};
}

DivisionElement conj(const DivisionElement& x) {
  Vector c = x.coords();
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = -c[i];
  return {x.tag(), std::move(c)};
}

Rational re(const DivisionElement& x) { return x[0]; }

DivisionElement im(const DivisionElement& x) {
  Vector c = x.coords();
  c[0] = 0;
  return {x.tag(), std::move(c)};
}

Rational norm(const DivisionElement& x) { return dot(x.coords(), x.coords()); }

}  // namespace nilrad
