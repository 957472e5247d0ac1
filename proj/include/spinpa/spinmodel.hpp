#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinpa/basis.hpp"

namespace spinpa {

/// A closed walk on the star graph: vertex 0 is the centre w, vertex i the leaf v_i.
struct GraphLoop {
  std::vector<int> vertices;  // first == last

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  friend auto operator<=>(const GraphLoop&, const GraphLoop&) = default;
  friend bool operator==(const GraphLoop&, const GraphLoop&) = default;
};

/// The based loop attached to a basis index. Caps are read left to right,
/// cups right to left, so e^{i}_{j} is w v_i1 .. w v_jm .. v_j1 w.
GraphLoop loop_encode(const BasisIndex& idx);
/// Inverse of loop_encode for a walk of length 2k; throws ValidationError for
/// anything that is not a closed alternating walk with labels in 1..n.
BasisIndex loop_decode(const GraphLoop& loop, int n);

/// `w v3 w v1 w`
std::string to_text(const GraphLoop& loop);
GraphLoop parse_loop(const std::string& text);

/// Every closed walk of length 2k on the star graph based at w (+) or at a leaf (-).
std::vector<GraphLoop> enumerate_loops(int n, int k, Sign eps);

/// Element of the loop algebra of the star graph, on the index set of its colour.
struct ModelElement {
  int n = 0;
  Colour colour;
  Coordinates coeffs;

  friend bool operator==(const ModelElement&, const ModelElement&) = default;
};

ModelElement model_identity(int n, Colour c);
ModelElement model_mul(const ModelElement& x, const ModelElement& y);
ModelElement model_add(const ModelElement& x, const ModelElement& y);
ModelElement model_star(const ModelElement& x);
Scalar model_tau(const ModelElement& x);

/// Coordinates of x transported to the loop model.
ModelElement iso_to_model(const Element& x);
Element iso_from_model(const ModelElement& x);

/// Squares of the spin function on the star graph: the Perron-Frobenius
/// eigenvector (sqrt n at w, 1 at each leaf).
struct SpinFunction {
  Scalar mu_w_sq;
  Scalar mu_v_sq;
};

SpinFunction spin_function(int n);

struct SpinCheck {
  std::string name;
  Scalar expected;
  Scalar actual;
  bool ok = false;
};

/// Loop values and the (0,-) trace recovered from the spin function and
/// compared with the diagram engine.
std::vector<SpinCheck> spin_consistency(int n);

}  // namespace spinpa
