#include "spinpa/annulus.hpp"

#include <sstream>

#include "spinpa/evalfun.hpp"

namespace spinpa {

Tangle rotate_raw(const Tangle& x, int times) {
  Tangle cur = x;
  for (int i = 0; i < times; ++i) {
    const Wiring w = rotate_wiring(cur.flat.colour);
    cur = glue(w, {&cur});
  }
  return cur;
}

Tangle stack_raw(const Tangle& x, const Tangle& y) {
  const Wiring w = stack_wiring(x.flat.colour);
  return glue(w, {&x, &y});
}

ClosedDiagram trace_raw(const Tangle& x) {
  const Wiring w = trace_wiring(x.flat.colour);
  return to_closed(glue(w, {&x}));
}

Colour Annulus::cap_colour() const {
  Colour c = hole;
  if (c.k > 0 && rotation % 2 != 0) c.eps = flip(c.eps);
  return c;
}

Sign Annulus::outer_sign() const {
  Sign s = cap_colour().eps;
  for (const auto& st : steps) {
    if (st.wrap) s = flip(s);
  }
  return s;
}

ClosedDiagram Annulus::apply(const Tangle& x) const {
  if (x.flat.colour != hole) throw ArityError("annulus: hole is " + to_string(hole) + ", got " + to_string(x.flat.colour));
  ClosedDiagram c;
  if (hole.k == 0) {
    // a (0,eps) cap is simply more content in the hole's region
    c = to_closed(x);
    if (cap.flat.colour == hole) c = merge_closed(to_closed(cap), c);
  } else {
    const Tangle z = rotate_raw(x, rotation);
    c = trace_raw(stack_raw(cap, z));
  }
  for (const auto& st : steps) {
    c = st.wrap ? wrap_closed(c, st.inner_labels, st.outer_labels) : merge_closed(st.sibling, c);
  }
  return c;
}

std::string Annulus::describe() const {
  std::ostringstream os;
  os << "annulus hole " << to_string(hole) << " rotation " << rotation << '\n' << to_text(cap.flat);
  for (const auto& [address, forest] : cap.loops) {
    ClosedDiagram c;
    c.loops = forest;
    os << "cap loops at " << address << ": " << to_text(c) << '\n';
  }
  for (const auto& st : steps) {
    if (st.wrap) {
      ClosedDiagram in, out;
      in.external = st.inner_labels;
      out.external = st.outer_labels;
      os << "wrap inner " << to_text(in) << " outer " << to_text(out) << '\n';
    } else {
      os << "merge " << to_text(st.sibling) << '\n';
    }
  }
  return os.str();
}

std::vector<Scalar> closure_values(const Annulus& a, const RawCombination& side, int n) {
  const std::size_t width = a.outer_sign() == Sign::Plus ? 1 : static_cast<std::size_t>(n);
  std::vector<Scalar> total(width, Scalar(0));
  for (const auto& [t, coeff] : side) {
    const auto v = lambda_values(a.apply(t), n);
    for (std::size_t i = 0; i < width; ++i) total[i] += coeff * v[i];
  }
  return total;
}

}  // namespace spinpa
