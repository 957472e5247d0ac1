#pragma once

#include <random>

#include "spinpa/annulus.hpp"
#include "spinpa/diagram.hpp"

namespace spinpa {

using Rng = std::mt19937_64;

/// Knobs for the random diagram generators.
struct GenOptions {
  double label_prob = 0.5;     // chance that a black face gets labels
  double second_label = 0.15;  // chance of a second label (possibly conflicting)
  int max_loops = 3;           // loops floating per face, per nesting level
  int max_depth = 2;
};

int uniform(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p);

/// Uniform-ish random non-crossing perfect matching on 2k points.
std::vector<int> random_matching(Rng& rng, int k);

/// Random label bag for a black face; may be empty.
LabelBag random_bag(Rng& rng, int n, const GenOptions& opt);

/// Random forest of loops sitting in a face of the given colour.
std::vector<Loop> random_forest(Rng& rng, int n, bool face_black, int depth, const GenOptions& opt);

/// Random loop-free diagram; canonical when opt.second_label == 0.
FlatDiagram random_flat(Rng& rng, int n, Colour c, const GenOptions& opt = {});
/// Random diagram with loops floating in its faces.
Tangle random_tangle(Rng& rng, int n, Colour c, const GenOptions& opt = {});
ClosedDiagram random_closed(Rng& rng, int n, Sign eps, const GenOptions& opt = {});

/// Random element with up to `max_terms` canonical terms and small integer/sqrt coefficients.
Element random_element(Rng& rng, int n, Colour c, int max_terms = 3);

/// Random annular tangle with the given hole; `outer`, if set, forces the
/// colour of the outer boundary.
Annulus random_annulus(Rng& rng, int n, Colour hole, std::optional<Sign> outer = std::nullopt,
                       const GenOptions& opt = {});

}  // namespace spinpa
