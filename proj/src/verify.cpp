#include "spinpa/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "spinpa/basis.hpp"
#include "spinpa/evalfun.hpp"
#include "spinpa/spinmodel.hpp"

namespace spinpa {

namespace {

// ---------------------------------------------------------------------------
// Small builders

FlatDiagram point(Label i) {
  FlatDiagram d = FlatDiagram::empty(Sign::Minus);
  d.labels[0] = {i};
  return d;
}

Tangle closed_tangle(Sign eps, LabelBag external, std::vector<Loop> loops) {
  ClosedDiagram c;
  c.eps = eps;
  c.external = std::move(external);
  c.loops = std::move(loops);
  return to_tangle(c);
}

// cup-cap in (2,+): black faces 1 (under the top cap) and 3 (over the bottom cup)
FlatDiagram cupcap(Colour c) { return FlatDiagram::from_pairs(c, {{1, 2}, {3, 4}}); }
FlatDiagram through(Colour c) { return FlatDiagram::from_pairs(c, {{1, 4}, {2, 3}}); }

RawCombination raw_of(const Element& x) {
  RawCombination out;
  for (const auto& [d, c] : x.terms()) out.emplace_back(Tangle::of(d), c);
  return out;
}

std::string join(const std::vector<Scalar>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
  return out + ")";
}

std::vector<Scalar> scaled(std::vector<Scalar> v, const Scalar& s) {
  for (auto& x : v) x *= s;
  return v;
}

void accumulate(std::vector<Scalar>& into, const std::vector<Scalar>& v) {
  if (into.empty()) into.assign(v.size(), Scalar(0));
  for (std::size_t i = 0; i < v.size(); ++i) into[i] += v[i];
}

std::string tangle_text(const Tangle& t) {
  std::string out = to_text(t.flat);
  for (const auto& [address, forest] : t.loops) {
    ClosedDiagram c;
    c.loops = forest;
    out += "loops at " + std::to_string(address) + ": " + to_text(c) + "\n";
  }
  return out;
}

std::string side_text(const char* name, const RawCombination& side) {
  std::string out = std::string(name) + ": " + std::to_string(side.size()) + " terms\n";
  for (const auto& [t, c] : side) out += "coeff " + c.to_string() + "\n" + tangle_text(t);
  return out;
}

// Accumulates cases and keeps the first failure.
class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  bool failed() const { return !result_.passed; }
  void pass() { ++result_.cases; }
  void note(std::string s) { result_.notes.push_back(std::move(s)); }

  /// Records a case; on the first failure stores `detail()` as the counterexample.
  bool expect(bool ok, const std::function<std::string()>& detail) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = detail();
    }
    return ok;
  }

  CheckResult finish() { return std::move(result_); }

 private:
  CheckResult result_;
};

bool check_relation(Tally& tally, const Relation& r, const Annulus& a, int n) {
  const auto lhs = closure_values(a, r.lhs, n);
  const auto rhs = closure_values(a, r.rhs, n);
  return tally.expect(lhs == rhs, [&] {
    return "relation " + r.name + "\n" + a.describe() + side_text("lhs", r.lhs) + side_text("rhs", r.rhs) +
           "lhs value " + join(lhs) + "\nrhs value " + join(rhs) + "\n";
  });
}

// ---------------------------------------------------------------------------
// Annular families for a (0, eps) hole

std::vector<LabelBag> bag_choices(int n) {
  std::vector<LabelBag> out{{}};
  for (Label j = 1; j <= n; ++j) out.push_back({j});
  return out;
}

/// Contents merged into the hole region, steps to a depth of two, with every
/// label choice on the black side.
std::vector<Annulus> point_closures(int n, Sign hole) {
  std::vector<Tangle> caps;
  caps.push_back(closed_tangle(hole, {}, {}));
  if (hole == Sign::Minus) {
    for (Label j = 1; j <= n; ++j) caps.push_back(closed_tangle(hole, {j}, {}));
    caps.push_back(closed_tangle(hole, {}, {Loop{}}));
  } else {
    for (const auto& bag : bag_choices(n)) caps.push_back(closed_tangle(hole, {}, {Loop{bag, {}}}));
  }

  std::vector<std::vector<Annulus::Step>> step_lists{{}};
  std::function<void(std::vector<Annulus::Step>&, Sign, int)> grow = [&](std::vector<Annulus::Step>& cur, Sign outer,
                                                                         int depth) {
    if (depth == 0) return;
    for (const auto& bag : bag_choices(n)) {
      Annulus::Step st;
      st.wrap = true;
      (outer == Sign::Minus ? st.inner_labels : st.outer_labels) = bag;
      cur.push_back(st);
      step_lists.push_back(cur);
      grow(cur, flip(outer), depth - 1);
      cur.pop_back();
    }
    Annulus::Step sib;
    sib.sibling.eps = outer;
    sib.sibling.loops.push_back(Loop{outer == Sign::Plus ? LabelBag{1} : LabelBag{}, {}});
    cur.push_back(sib);
    step_lists.push_back(cur);
    cur.pop_back();
  };
  std::vector<Annulus::Step> cur;
  grow(cur, hole, 2);

  std::vector<Annulus> out;
  for (const auto& cap : caps) {
    for (const auto& steps : step_lists) {
      Annulus a;
      a.hole = Colour{0, hole};
      a.cap = cap;
      a.steps = steps;
      out.push_back(std::move(a));
    }
  }
  return out;
}

void relation_suite(Tally& tally, const Relation& r, int n, Rng& rng, int random_cases) {
  if (r.colour.k == 0) {
    for (const auto& a : point_closures(n, r.colour.eps)) {
      if (!check_relation(tally, r, a, n)) return;
    }
  }
  for (int i = 0; i < random_cases; ++i) {
    if (!check_relation(tally, r, random_annulus(rng, n, r.colour), n)) return;
  }
}

// ---------------------------------------------------------------------------
// Checks

CheckResult check_modulus(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("modulus");
  const Scalar root = Scalar::sqrtn(n);

  const Element one_plus = Element::identity(n, {1, Sign::Plus});
  const Element one_minus = Element::identity(n, {1, Sign::Minus});
  t.expect(cap_right(one_plus) == Element::identity(n, {0, Sign::Plus}) * root,
           [&] { return "capR(id(1,+))\n" + to_text(cap_right(one_plus)); });
  t.expect(cap_right(one_minus) == Element::identity(n, {0, Sign::Minus}) * root,
           [&] { return "capR(id(1,-))\n" + to_text(cap_right(one_minus)); });
  for (Label i = 1; i <= n; ++i) {
    FlatDiagram d = FlatDiagram::identity({1, Sign::Plus});
    d.labels[1] = {i};
    const Element x = cap_right(Element::from_diagram(n, d));
    t.expect(x == Element::identity(n, {0, Sign::Plus}) * root.inverse(), [&] {
      return "capR of\n" + to_text(d) + "gives\n" + to_text(x);
    });
  }

  Relation white{"white modulus", {0, Sign::Minus}, {{closed_tangle(Sign::Minus, {}, {Loop{}}), 1}},
                 {{closed_tangle(Sign::Minus, {}, {}), root}}};
  relation_suite(t, white, n, rng, cfg.random_cases);
  for (Label i = 1; i <= n && !t.failed(); ++i) {
    Relation black{"black modulus s(" + std::to_string(i) + ")", {0, Sign::Plus},
                   {{closed_tangle(Sign::Plus, {}, {Loop{{i}, {}}}), 1}},
                   {{closed_tangle(Sign::Plus, {}, {}), root.inverse()}}};
    relation_suite(t, black, n, rng, cfg.random_cases / n + 1);
  }
  return t.finish();
}

CheckResult check_multiplication(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("multiplication");
  for (Label i = 1; i <= n; ++i) {
    for (Label j = 1; j <= n; ++j) {
      const Element prod = stack(Element::generator(n, i), Element::generator(n, j));
      const Element want = i == j ? Element::generator(n, i) : Element(n, {0, Sign::Minus});
      t.expect(prod == want, [&] { return "s(" + std::to_string(i) + ") * s(" + std::to_string(j) + ")\n" + to_text(prod); });
      FlatDiagram w = FlatDiagram::empty(Sign::Minus);
      w.labels[0] = {std::min(i, j), std::max(i, j)};
      t.expect(canonicalize(n, w, 1) == want, [&] { return "canonicalize\n" + to_text(w); });
    }
  }
  const int per_pair = std::max(1, cfg.random_cases / (n * n));
  for (Label i = 1; i <= n && !t.failed(); ++i) {
    for (Label j = 1; j <= n && !t.failed(); ++j) {
      Relation r{"two labels " + std::to_string(i) + "," + std::to_string(j), {0, Sign::Minus},
                 {{closed_tangle(Sign::Minus, {std::min(i, j), std::max(i, j)}, {}), 1}},
                 {}};
      if (i == j) r.rhs.emplace_back(closed_tangle(Sign::Minus, {i}, {}), 1);
      relation_suite(t, r, n, rng, per_pair);
    }
  }
  return t.finish();
}

}  // namespace

Relation black_channel_relation(int n, const Scalar& constant) {
  const Colour c{2, Sign::Plus};
  Relation r{"black channel", c, {}, {}};
  for (Label i = 1; i <= n; ++i) {
    FlatDiagram d = cupcap(c);
    d.labels[1] = {i};
    d.labels[3] = {i};
    r.lhs.emplace_back(Tangle::of(d), 1);
  }
  r.rhs.emplace_back(Tangle::of(through(c)), constant);
  return r;
}

std::vector<ClassifiedAnnulus> channel_closures(int n) {
  const Colour hole{2, Sign::Plus};
  std::vector<ClassifiedAnnulus> out;
  for (int r = 0; r < 4; ++r) {
    const Colour cc{2, r % 2 == 0 ? Sign::Plus : Sign::Minus};
    for (bool caps : {true, false}) {
      const FlatDiagram base = caps ? cupcap(cc) : through(cc);
      // the outside joins hole points {1,2},{3,4} or {1,4},{2,3}; the outer
      // boundary sits in the region touching hole interval r (4 when r = 0)
      const bool pairs12 = caps == (r % 2 == 0);
      const int interval = r == 0 ? 4 : r;
      std::string region;
      if (pairs12) {
        region = interval == 1 ? "{1}" : interval == 3 ? "{3}" : "{2,4}";
      } else {
        region = interval == 2 ? "{2}" : interval == 4 ? "{4}" : "{1,3}";
      }
      const std::string cls = std::string(pairs12 ? "pairs 12|34" : "pairs 14|23") + ", outside region " + region;

      std::vector<int> black;
      for (const auto& f : faces(base)) {
        if (f.black) black.push_back(f.address);
      }
      std::vector<Label> pick(black.size(), 0);
      while (true) {
        Annulus a;
        a.hole = hole;
        a.rotation = r;
        FlatDiagram d = base;
        for (std::size_t i = 0; i < black.size(); ++i) {
          if (pick[i] != 0) d.labels[black[i]] = {pick[i]};
        }
        a.cap = Tangle::of(d);
        out.push_back({a, cls});
        // the same closure seen from one loop further out
        for (const auto& bag : bag_choices(n)) {
          Annulus w = a;
          Annulus::Step st;
          st.wrap = true;
          (a.outer_sign() == Sign::Minus ? st.inner_labels : st.outer_labels) = bag;
          w.steps.push_back(st);
          out.push_back({w, cls});
        }
        std::size_t pos = 0;
        while (pos < pick.size() && pick[pos] == n) pick[pos++] = 0;
        if (pos == pick.size()) break;
        ++pick[pos];
      }
    }
  }
  return out;
}

Annulus channel_witness_annulus() {
  Annulus a;
  a.hole = Colour{2, Sign::Plus};
  a.rotation = 1;
  a.cap = Tangle::of(cupcap(Colour{2, Sign::Minus}));
  return a;
}

namespace {

CheckResult check_black_channel(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("black-channel");
  const Scalar constant = cfg.channel_constant.value_or(Scalar::sqrtn(n).inverse());
  const Relation r = black_channel_relation(n, constant);

  std::set<std::string> classes;
  long enumerated = 0;
  for (const auto& ca : channel_closures(n)) {
    if (!check_relation(t, r, ca.annulus, n)) {
      t.note("failing closure class: " + ca.closure_class);
      return t.finish();
    }
    classes.insert(ca.closure_class);
    ++enumerated;
  }
  t.note("closure classes covered: " + std::to_string(classes.size()) + " (" + std::to_string(enumerated) +
         " enumerated closures)");

  const Annulus w = channel_witness_annulus();
  const auto lhs = closure_values(w, r.lhs, n);
  const auto rhs = closure_values(w, r.rhs, n);
  // the outer region is black here, so every lambda_{-,i} must be sqrt n
  const std::vector<Scalar> root(static_cast<std::size_t>(w.outer_sign() == Sign::Plus ? 1 : n), Scalar::sqrtn(n));
  t.expect(lhs == root && rhs == root, [&] {
    return "witness closure should give sqrt n on both sides\n" + w.describe() + "lhs value " + join(lhs) +
           "\nrhs value " + join(rhs) + "\n";
  });
  t.note("cup-cap witness closure: lhs " + join(lhs) + ", rhs " + join(rhs));

  for (int i = 0; i < cfg.random_cases && !t.failed(); ++i) {
    check_relation(t, r, random_annulus(rng, n, r.colour), n);
  }
  return t.finish();
}

CheckResult check_unit(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("unit");
  const Scalar root = Scalar::sqrtn(n);

  Element sum_points(n, {0, Sign::Minus});
  for (Label i = 1; i <= n; ++i) sum_points += Element::generator(n, i);
  const Element empty_black = Element::identity(n, {0, Sign::Minus});
  t.expect(expand_units(empty_black) == sum_points, [&] { return "expand(id(0,-))\n" + to_text(expand_units(empty_black)); });

  Relation unit{"unit", {0, Sign::Minus}, {{closed_tangle(Sign::Minus, {}, {}), 1}}, {}};
  for (Label i = 1; i <= n; ++i) unit.rhs.emplace_back(closed_tangle(Sign::Minus, {i}, {}), 1);
  relation_suite(t, unit, n, rng, cfg.random_cases);

  Relation black_loop{"unlabelled black loop", {0, Sign::Plus}, {{closed_tangle(Sign::Plus, {}, {Loop{}}), 1}},
                      {{closed_tangle(Sign::Plus, {}, {}), root}}};
  if (!t.failed()) relation_suite(t, black_loop, n, rng, cfg.random_cases);

  // an unlabelled black face of a box equals the sum of its labellings
  const std::vector<Colour> boxes{{1, Sign::Plus}, {1, Sign::Minus}, {2, Sign::Plus}, {2, Sign::Minus}};
  for (const Colour& c : boxes) {
    if (t.failed()) break;
    const Element id = Element::identity(n, c);
    Relation r{"unit in " + to_string(c), c, raw_of(id), raw_of(expand_units(id))};
    relation_suite(t, r, n, rng, cfg.random_cases / 4);
  }

  const int top = std::min(cfg.max_k, 3);
  for (int i = 0; i < cfg.random_cases && !t.failed(); ++i) {
    const Colour c{uniform(rng, 0, top), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c, 2);
    Relation r{"expand_units on a random element", c, raw_of(x), raw_of(expand_units(x))};
    check_relation(t, r, random_annulus(rng, n, c), n);
  }
  return t.finish();
}

CheckResult check_multiplicativity(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("multiplicativity");
  const Scalar root = Scalar::sqrtn(n);
  const char* part_names[] = {"(a) hole (0,+), outside (0,+)", "(b) hole (0,-), outside (0,+)",
                              "(c) hole (0,+), outside (0,-)", "(d) hole (0,-), outside (0,-)"};

  for (int part = 0; part < 4 && !t.failed(); ++part) {
    const Sign hole = part % 2 == 0 ? Sign::Plus : Sign::Minus;
    const Sign outer = part < 2 ? Sign::Plus : Sign::Minus;
    for (int i = 0; i < cfg.random_cases && !t.failed(); ++i) {
      const Annulus a = random_annulus(rng, n, Colour{0, hole}, outer);
      const ClosedDiagram u = random_closed(rng, n, hole);
      const auto lhs = lambda_values(a.apply(to_tangle(u)), n);
      std::vector<Scalar> rhs;
      if (hole == Sign::Plus) {
        rhs = scaled(lambda_values(a.apply(FlatDiagram::empty(Sign::Plus)), n), lambda_plus(u, n));
      } else {
        for (Label j = 1; j <= n; ++j) accumulate(rhs, scaled(lambda_values(a.apply(point(j)), n), lambda_minus(u, j, n)));
      }
      t.expect(lhs == rhs, [&] {
        return std::string("part ") + part_names[part] + "\n" + a.describe() + "inner " + to_text(u) + "\nlhs " +
               join(lhs) + "\nrhs " + join(rhs) + "\n";
      });
    }
    t.note(std::string("part ") + part_names[part] + ": " + std::to_string(cfg.random_cases) + " pairs");
  }

  auto t_of = [](Label k) {
    Annulus a;
    a.hole = Colour{0, Sign::Minus};
    a.cap = Tangle::of(FlatDiagram::empty(Sign::Minus));
    Annulus::Step st;
    st.wrap = true;
    st.inner_labels = {k};
    a.steps.push_back(st);
    return a;
  };
  for (int i = 0; i < cfg.random_cases && !t.failed(); ++i) {
    const ClosedDiagram u = random_closed(rng, n, Sign::Minus);
    const Label k = uniform(rng, 1, n);
    const Annulus a = t_of(k);
    const Scalar lhs = lambda_minus(u, k, n);
    const Scalar rhs = root * lambda_plus(a.apply(to_tangle(u)), n);
    t.expect(lhs == rhs, [&] {
      return "T(" + std::to_string(k) + ") identity\n" + a.describe() + "inner " + to_text(u) + "\nlhs " +
             lhs.to_string() + "\nrhs " + rhs.to_string() + "\n";
    });
  }
  t.note("T(k) identity: " + std::to_string(cfg.random_cases) + " random inner diagrams");

  const int trials = std::max(1, cfg.random_cases / 10);
  for (int i = 0; i < trials && !t.failed(); ++i) {
    std::vector<Scalar> alpha;
    for (Label j = 1; j <= n; ++j) alpha.emplace_back(Rational(uniform(rng, -9, 9), uniform(rng, 1, 5)));
    for (Label k = 1; k <= n; ++k) {
      Scalar total;
      const Annulus a = t_of(k);
      for (Label j = 1; j <= n; ++j) total += alpha[static_cast<std::size_t>(j - 1)] * lambda_plus(a.apply(point(j)), n);
      const Scalar want = alpha[static_cast<std::size_t>(k - 1)] * root.inverse();
      t.expect(total == want, [&] {
        return "T(" + std::to_string(k) + ") applied to sum alpha_i s(i) with alpha " + join(alpha) + "\ngot " +
               total.to_string() + ", want " + want.to_string() + "\n";
      });
    }
  }
  return t.finish();
}

CheckResult check_traces(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("traces");
  long table = 0;
  for (int k = 0; k <= cfg.max_k; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const Element one = Element::identity(n, {k, s});
      t.expect(tau(one) == Scalar(1), [&] { return "tau(id" + to_string(one.colour()) + ") = " + tau(one).to_string() + "\n"; });
      for (const auto& idx : enumerate_basis(n, k, s)) {
        if (idx.m() > cfg.max_m) break;
        const Element e = basis_diagram(n, idx);
        const Scalar got = tau(e);
        ++table;
        if (!t.expect(got == stated_trace(idx, n), [&] {
              return "tau(" + to_text(idx) + ") = " + got.to_string() + ", table says " +
                     stated_trace(idx, n).to_string() + "\n" + to_text(e);
            })) {
          return t.finish();
        }
      }
    }
  }
  t.note("trace table entries: " + std::to_string(table));
  const int pairs = std::max(100, cfg.random_cases / 2);
  for (int i = 0; i < pairs && !t.failed(); ++i) {
    const Colour c{uniform(rng, 0, cfg.max_k), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    const Scalar xy = tau(stack(x, y));
    const Scalar yx = tau(stack(y, x));
    t.expect(xy == yx, [&] {
      return "tau(xy) = " + xy.to_string() + " but tau(yx) = " + yx.to_string() + "\nx\n" + to_text(x) + "y\n" + to_text(y);
    });
  }
  return t.finish();
}

CheckResult check_gram(const VerifyConfig& cfg, Rng&) {
  const int n = cfg.n;
  Tally t("gram");
  for (int k = 0; k <= cfg.max_k && !t.failed(); ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto basis = enumerate_basis(n, k, s);
      std::vector<Element> e;
      std::vector<Element> star;
      for (const auto& idx : basis) {
        e.push_back(basis_diagram(n, idx));
        star.push_back(involute(e.back()));
      }
      long rank = 0;
      for (std::size_t a = 0; a < e.size(); ++a) {
        for (std::size_t b = 0; b < e.size(); ++b) {
          const Scalar g = tau(stack(star[b], e[a]));
          const bool ok = a == b ? g.sign() > 0 : g.is_zero();
          if (!t.expect(ok, [&] {
                return "gram entry (" + to_text(basis[a]) + ", " + to_text(basis[b]) + ") = " + g.to_string() + "\n" +
                       to_text(e[a]) + to_text(e[b]);
              })) {
            return t.finish();
          }
          if (a == b) ++rank;
        }
      }
      t.note("dim P" + to_string(Colour{k, s}) + " = " + std::to_string(rank));
    }
  }
  return t.finish();
}

CheckResult check_matrix_units(const VerifyConfig& cfg, Rng&) {
  const int n = cfg.n;
  Tally t("matrix-units");
  for (int k = 0; k <= cfg.max_k; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto basis = enumerate_basis(n, k, s);
      if (basis.front().m() > cfg.max_m) continue;
      std::vector<Element> e;
      for (const auto& idx : basis) e.push_back(basis_diagram(n, idx));
      for (std::size_t a = 0; a < e.size(); ++a) {
        for (std::size_t b = 0; b < e.size(); ++b) {
          const Element got = stack(e[a], e[b]);
          const UnitProduct up = unit_product(basis[a], basis[b]);
          const Element want = up.index ? basis_diagram(n, *up.index) * up.coeff : Element(n, {k, s});
          if (!t.expect(got == want, [&] {
                return to_text(basis[a]) + " * " + to_text(basis[b]) + " should be " +
                       (up.index ? to_text(*up.index) : std::string("0")) + "\n" + to_text(got);
              })) {
            return t.finish();
          }
        }
      }
    }
  }
  return t.finish();
}

CheckResult check_jones(const VerifyConfig& cfg, Rng&) {
  const int n = cfg.n;
  Tally t("jones");
  const Scalar inv_n(Rational(1, n));
  for (int k = 2; k <= cfg.max_k; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (int p = 1; p < k; ++p) {
        const Element e = jones_projection(n, p, k, s);
        t.expect(stack(e, e) == e, [&] { return "E(" + std::to_string(k) + "," + sign_char(s) + "," + std::to_string(p) + ") not idempotent\n"; });
        for (int q : {p - 1, p + 1}) {
          if (q < 1 || q >= k) continue;
          const Element f = jones_projection(n, q, k, s);
          const Element got = stack(e, stack(f, e));
          t.expect(got == e * inv_n, [&] {
            return "E" + std::to_string(p) + " E" + std::to_string(q) + " E" + std::to_string(p) + " in " +
                   to_string(Colour{k, s}) + "\n" + to_text(got);
          });
        }
      }
    }
  }
  return t.finish();
}

CheckResult check_oracle(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("oracle");
  const int cases = std::max(500, cfg.random_cases);
  for (int i = 0; i < cases && !t.failed(); ++i) {
    const Sign s = coin(rng, 0.5) ? Sign::Plus : Sign::Minus;
    const ClosedDiagram d = random_closed(rng, n, s);
    const auto formula = lambda_values(d, n);
    for (int pass = 0; pass < 2; ++pass) {
      const ClosedResolution r = resolve_loops(d, n, pass == 0 ? nullptr : &rng);
      std::vector<Scalar> got(formula.size(), Scalar(0));
      if (!r.zero) {
        for (std::size_t j = 0; j < got.size(); ++j) {
          const bool vetoed = s == Sign::Minus && r.external_label && *r.external_label != static_cast<Label>(j + 1);
          if (!vetoed) got[j] = r.coeff;
        }
      }
      t.expect(got == formula, [&] {
        return std::string(pass == 0 ? "leftmost" : "random") + " loop deletion disagrees with the counting formula\n" +
               to_text(d) + "\nresolved " + join(got) + "\nformula " + join(formula) + "\n";
      });
    }
  }
  return t.finish();
}

void iso_colour(const VerifyConfig& cfg, Colour c, Rng& rng, Tally& t) {
  const int n = cfg.n;
  const auto basis = enumerate_basis(n, c.k, c.eps);
  const auto loops = enumerate_loops(n, c.k, c.eps);
  std::set<GraphLoop> encoded;
  for (const auto& idx : basis) {
    const GraphLoop l = loop_encode(idx);
    encoded.insert(l);
    t.expect(loop_decode(l, n) == idx, [&] { return "loop round trip fails for " + to_text(idx) + "\n"; });
    const Element e = basis_diagram(n, idx);
    const ModelElement m = iso_to_model(e);
    t.expect(m.coeffs.size() == 1 && m.coeffs.begin()->first == idx && m.coeffs.begin()->second == Scalar(1), [&] {
      return "iso does not send " + to_text(idx) + " to its loop " + to_text(l) + "\n" + to_text(e);
    });
    if (t.failed()) return;
  }
  t.expect(encoded == std::set<GraphLoop>(loops.begin(), loops.end()) && loops.size() == basis.size(), [&] {
    return "basis " + to_string(c) + " has " + std::to_string(basis.size()) + " indices, the star graph has " +
           std::to_string(loops.size()) + " loops\n";
  });
  const ModelElement unit = iso_to_model(Element::identity(n, c));
  t.expect(unit == model_identity(n, c), [&] { return "iso(id" + to_string(c) + ") is not the model identity\n"; });

  const int pairs = std::max(100, cfg.random_cases / 2);
  for (int i = 0; i < pairs && !t.failed(); ++i) {
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    const ModelElement ix = iso_to_model(x);
    const ModelElement iy = iso_to_model(y);
    t.expect(iso_to_model(stack(x, y)) == model_mul(ix, iy),
             [&] { return "iso(xy) != iso(x) iso(y)\nx\n" + to_text(x) + "y\n" + to_text(y); });
    t.expect(iso_to_model(involute(x)) == model_star(ix), [&] { return "iso(x*) != iso(x)*\nx\n" + to_text(x); });
    t.expect(model_tau(ix) == tau(x), [&] { return "model trace differs from tau\nx\n" + to_text(x); });
  }
}

CheckResult check_iso(const VerifyConfig& cfg, Rng& rng) {
  const int n = cfg.n;
  Tally t("iso");
  for (Label i = 1; i <= n; ++i) {
    const ModelElement m = iso_to_model(Element::generator(n, i));
    t.expect(m.coeffs.size() == 1 && to_text(loop_encode(m.coeffs.begin()->first)) == "v" + std::to_string(i),
             [&] { return "s(" + std::to_string(i) + ") does not map to the length-0 loop at v" + std::to_string(i) + "\n"; });
  }
  for (int k = 0; k <= cfg.max_k && !t.failed(); ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      if (!t.failed()) iso_colour(cfg, Colour{k, s}, rng, t);
    }
  }
  for (const auto& sc : spin_consistency(n)) {
    t.expect(sc.ok, [&] { return "spin function: " + sc.name + ": want " + sc.expected.to_string() + ", got " + sc.actual.to_string() + "\n"; });
  }
  return t.finish();
}

using CheckFn = CheckResult (*)(const VerifyConfig&, Rng&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"modulus", check_modulus},
      {"multiplication", check_multiplication},
      {"black-channel", check_black_channel},
      {"unit", check_unit},
      {"multiplicativity", check_multiplicativity},
      {"traces", check_traces},
      {"gram", check_gram},
      {"iso", check_iso},
      {"matrix-units", check_matrix_units},
      {"jones", check_jones},
      {"oracle", check_oracle},
  };
  return r;
}

Rng rng_for(const VerifyConfig& cfg, std::size_t slot) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(slot)};
  return Rng(seq);
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_check_name(const std::string& name) {
  const auto& names = check_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CheckResult run_check(const std::string& name, const VerifyConfig& cfg) {
  const auto& r = registry();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].first != name) continue;
    Rng rng = rng_for(cfg, i);
    return r[i].second(cfg, rng);
  }
  throw ValidationError("unknown check '" + name + "'");
}

CheckResult check_iso_colour(const VerifyConfig& cfg, Colour c) {
  Rng rng = rng_for(cfg, 1000 + static_cast<std::size_t>(2 * c.k + (c.eps == Sign::Minus ? 1 : 0)));
  Tally t("iso " + to_string(c));
  iso_colour(cfg, c, rng, t);
  return t.finish();
}

std::string render(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)\n";
  for (const auto& note : r.notes) os << "  " << note << '\n';
  if (!r.passed) {
    os << "counterexample:\n" << r.counterexample;
    if (!r.counterexample.empty() && r.counterexample.back() != '\n') os << '\n';
  }
  return os.str();
}

}  // namespace spinpa
