#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spinpa/diagram.hpp"

namespace spinpa {

/// E and N of a closed diagram: non-external regions without and with labels.
struct EvalCounts {
  int empty_regions = 0;     // E
  int labelled_regions = 0;  // N
  bool consistent = true;
  std::optional<Label> external_label;
};

EvalCounts eval_counts(const ClosedDiagram& d);

/// lambda_+ on a (0,+) closed diagram: 0 if inconsistently labelled, else (sqrt n)^(E-N).
Scalar lambda_plus(const ClosedDiagram& d, int n);
/// lambda_{-,i} on a (0,-) closed diagram; also vetoed when the external
/// region holds a label other than i.
Scalar lambda_minus(const ClosedDiagram& d, Label i, int n);

/// lambda_+ for (0,+), or the n values lambda_{-,1..n} for (0,-).
std::vector<Scalar> lambda_values(const ClosedDiagram& d, int n);

/// Coordinates of the image in P_(0,-) on the basis S(1..n).
std::vector<Scalar> project_0minus(const ClosedDiagram& d, int n);

/// Normalised trace: (sqrt n)^-k lambda_+ of the trace closure for (k,+), and
/// (sqrt n)^-k tr of the projection (tr S(i) = 1/n) for (k,-).
Scalar tau(const Element& x);

/// tau(y* x).
Scalar pairing(const Element& x, const Element& y);

}  // namespace spinpa
