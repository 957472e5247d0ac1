#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spinpa/diagram.hpp"

namespace spinpa {

/// An annular labelled tangle with one unlabelled hole of colour `hole` and
/// closed outer boundary.
///
/// For k >= 1 the hole content is rotated `rotation` times, the labelled flat
/// tangle `cap` is stacked on top of it and the result is trace-closed; this
/// reaches every way the hole strings can be joined outside together with
/// every choice of region for the outer boundary. The `steps` then either
/// merge a labelled closed diagram into the external region or surround
/// everything by one more loop, which places the hole at any depth.
struct Annulus {
  struct Step {
    bool wrap = false;
    ClosedDiagram sibling;   // merged when !wrap
    LabelBag inner_labels;   // wrap: added to the region just inside the new loop
    LabelBag outer_labels;   // wrap: labels of the new external region
  };

  Colour hole;
  int rotation = 0;
  Tangle cap;
  std::vector<Step> steps;

  /// Colour of the cap: the hole colour after `rotation` rotations.
  Colour cap_colour() const;
  Sign outer_sign() const;

  ClosedDiagram apply(const Tangle& x) const;
  ClosedDiagram apply(const FlatDiagram& x) const { return apply(Tangle::of(x)); }

  std::string describe() const;
};

/// Raw (unresolved) rotation of a tangle.
Tangle rotate_raw(const Tangle& x, int times = 1);
/// Raw stacking, x above y.
Tangle stack_raw(const Tangle& x, const Tangle& y);
ClosedDiagram trace_raw(const Tangle& x);

/// A side of a relation: a formal combination of raw tangles of one colour.
using RawCombination = std::vector<std::pair<Tangle, Scalar>>;

/// lambda values (one for a (0,+) closure, n for a (0,-) closure) of the
/// closure of every term, summed with coefficients.
std::vector<Scalar> closure_values(const Annulus& a, const RawCombination& side, int n);

}  // namespace spinpa
