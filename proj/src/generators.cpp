#include "spinpa/generators.hpp"

#include <functional>

namespace spinpa {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<int> random_matching(Rng& rng, int k) {
  std::vector<int> partner(static_cast<std::size_t>(2 * k), 0);
  // points lo..hi (an even count) are matched recursively: lo pairs with some
  // point at odd distance, splitting the rest into two independent blocks
  std::function<void(int, int)> fill = [&](int lo, int hi) {
    if (lo > hi) return;
    const int span = (hi - lo + 1) / 2;
    const int j = uniform(rng, 0, span - 1);
    const int mate = lo + 2 * j + 1;
    partner[static_cast<std::size_t>(lo - 1)] = mate;
    partner[static_cast<std::size_t>(mate - 1)] = lo;
    fill(lo + 1, mate - 1);
    fill(mate + 1, hi);
  };
  fill(1, 2 * k);
  return partner;
}

LabelBag random_bag(Rng& rng, int n, const GenOptions& opt) {
  LabelBag bag;
  if (!coin(rng, opt.label_prob)) return bag;
  insert_label(bag, uniform(rng, 1, n));
  if (coin(rng, opt.second_label)) insert_label(bag, uniform(rng, 1, n));
  return bag;
}

std::vector<Loop> random_forest(Rng& rng, int n, bool face_black, int depth, const GenOptions& opt) {
  std::vector<Loop> forest;
  if (depth <= 0) return forest;
  const int count = uniform(rng, 0, opt.max_loops);
  for (int i = 0; i < count; ++i) {
    Loop l;
    const bool inside_black = !face_black;
    if (inside_black) l.labels = random_bag(rng, n, opt);
    l.children = random_forest(rng, n, inside_black, depth - 1, opt);
    forest.push_back(std::move(l));
  }
  return forest;
}

FlatDiagram random_flat(Rng& rng, int n, Colour c, const GenOptions& opt) {
  FlatDiagram d;
  d.colour = c;
  d.partner = random_matching(rng, c.k);
  for (const auto& f : faces(d)) {
    if (!f.black) continue;
    auto bag = random_bag(rng, n, opt);
    if (!bag.empty()) d.labels[f.address] = std::move(bag);
  }
  return d;
}

Tangle random_tangle(Rng& rng, int n, Colour c, const GenOptions& opt) {
  Tangle t = Tangle::of(random_flat(rng, n, c, opt));
  for (const auto& f : faces(t.flat)) {
    auto forest = random_forest(rng, n, f.black, opt.max_depth, opt);
    if (!forest.empty()) t.loops[f.address] = std::move(forest);
  }
  return t;
}

ClosedDiagram random_closed(Rng& rng, int n, Sign eps, const GenOptions& opt) {
  return to_closed(random_tangle(rng, n, Colour{0, eps}, opt));
}

Element random_element(Rng& rng, int n, Colour c, int max_terms) {
  GenOptions opt;
  opt.second_label = 0.0;
  Element x(n, c);
  const int terms = uniform(rng, 1, max_terms);
  for (int i = 0; i < terms; ++i) {
    Scalar coeff(Rational(uniform(rng, -3, 3), uniform(rng, 1, 2)));
    if (coin(rng, 0.3)) coeff += Scalar(0, uniform(rng, -2, 2), n);
    if (coeff.is_zero()) coeff = 1;
    x.add_term(random_flat(rng, n, c, opt), coeff);
  }
  return x;
}

Annulus random_annulus(Rng& rng, int n, Colour hole, std::optional<Sign> outer, const GenOptions& opt) {
  GenOptions light = opt;
  light.max_loops = 2;
  light.max_depth = 1;
  Annulus a;
  a.hole = hole;
  a.rotation = hole.k > 0 ? uniform(rng, 0, 2 * hole.k - 1) : 0;
  a.cap = random_tangle(rng, n, a.cap_colour(), light);
  const int steps = uniform(rng, 0, 3);
  for (int i = 0; i < steps; ++i) {
    Annulus::Step st;
    st.wrap = coin(rng, 0.5);
    const Sign current = a.outer_sign();
    if (st.wrap) {
      // the region just inside the new loop keeps the current external colour
      if (current == Sign::Minus) st.inner_labels = random_bag(rng, n, light);
      if (current == Sign::Plus) st.outer_labels = random_bag(rng, n, light);
    } else {
      st.sibling = random_closed(rng, n, current, light);
    }
    a.steps.push_back(std::move(st));
  }
  if (outer && a.outer_sign() != *outer) {
    Annulus::Step st;
    st.wrap = true;
    if (a.outer_sign() == Sign::Minus) st.inner_labels = random_bag(rng, n, light);
    if (a.outer_sign() == Sign::Plus) st.outer_labels = random_bag(rng, n, light);
    a.steps.push_back(std::move(st));
  }
  return a;
}

}  // namespace spinpa
