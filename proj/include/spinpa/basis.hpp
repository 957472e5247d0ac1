#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinpa/diagram.hpp"

namespace spinpa {

/// Shape of a basis element:
///   EvenPlus  e^{i}_{j}        colour (2m,+)
///   EvenMinus e[p)^{i}_{j}(q]  colour (2m+2,-)
///   OddPlus   e^{i}_{j}(q]     colour (2m+1,+)
///   OddMinus  e[p)^{i}_{j}     colour (2m+1,-)
///   Point     S(p)             colour (0,-)
enum class Family : std::uint8_t { EvenPlus, EvenMinus, OddPlus, OddMinus, Point };

struct BasisIndex {
  Family family = Family::EvenPlus;
  Label p = 0;
  std::vector<Label> upper;
  std::vector<Label> lower;
  Label q = 0;

  int m() const { return static_cast<int>(upper.size()); }
  bool has_p() const { return family == Family::EvenMinus || family == Family::OddMinus || family == Family::Point; }
  bool has_q() const { return family == Family::EvenMinus || family == Family::OddPlus; }

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

Colour colour_of(const BasisIndex& idx);
Family family_for(Colour c);
/// Checks shape against the family and labels against 1..n.
void validate(const BasisIndex& idx, int n);

/// `e[p)^{i1 i2}_{j1 j2}(q]`, decorations omitted where the family lacks them; `s(p)` for (0,-).
std::string to_text(const BasisIndex& idx);
BasisIndex parse_basis_index(const std::string& text);
/// Parses a basis literal starting at `pos` and advances `pos` past it.
BasisIndex parse_basis_index_at(std::string_view text, std::size_t& pos);

/// The labelled flat diagram drawn for idx, without the (sqrt n)^m weight.
FlatDiagram basis_layout(const BasisIndex& idx);
/// (sqrt n)^m times the layout.
Element basis_diagram(int n, const BasisIndex& idx);

/// The n^k indices of B_(k,eps) (1 for (0,+), n for (0,-)) in lexicographic order.
std::vector<BasisIndex> enumerate_basis(int n, int k, Sign eps);

struct UnitProduct {
  Scalar coeff;
  std::optional<BasisIndex> index;
};

/// Product of two basis elements by the matrix-unit delta rules.
UnitProduct unit_product(const BasisIndex& a, const BasisIndex& b);

using Coordinates = std::map<BasisIndex, Scalar>;

/// Coordinates on B_(k,eps) via the trace pairing: c_e = tau(e* x) / tau(e* e).
Coordinates to_basis(const Element& x);
Element from_basis(int n, Colour c, const Coordinates& coords);
/// Bilinear extension of unit_product.
Coordinates convolve(const Coordinates& x, const Coordinates& y);

/// (1/sqrt n) times the diagram with a cap and cup joining strands pos, pos+1.
Element jones_projection(int n, int pos, int k, Sign eps);

/// The trace value tau(e) for a basis element: delta times n^-m, n^-m-2, n^-m-1, n^-m-1.
Scalar stated_trace(const BasisIndex& idx, int n);

}  // namespace spinpa
