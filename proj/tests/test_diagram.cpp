#include <gtest/gtest.h>

#include "printers.hpp"
#include "spinpa/basis.hpp"
#include "spinpa/diagram.hpp"
#include "spinpa/evalfun.hpp"
#include "spinpa/generators.hpp"

using namespace spinpa;

namespace {

const Colour kPlus2{2, Sign::Plus};

FlatDiagram cupcap(Colour c) { return FlatDiagram::from_pairs(c, {{1, 2}, {3, 4}}); }

Element sum_of_generators(int n) {
  Element out(n, {0, Sign::Minus});
  for (Label i = 1; i <= n; ++i) out += Element::generator(n, i);
  return out;
}

TEST(Faces, IdentityOnOneString) {
  const auto f = faces(FlatDiagram::identity({1, Sign::Plus}));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].address, 1);
  EXPECT_TRUE(f[0].black);
  EXPECT_EQ(f[1].address, 2);
  EXPECT_FALSE(f[1].black);
}

TEST(Faces, EmptyBlackDisk) {
  const auto f = faces(FlatDiagram::empty(Sign::Minus));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].address, 0);
  EXPECT_TRUE(f[0].black);
}

TEST(Faces, CupCap) {
  const auto f = faces(cupcap(kPlus2));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].address, 1);
  EXPECT_TRUE(f[0].black);
  EXPECT_EQ(f[1].address, 2);
  EXPECT_FALSE(f[1].black);
  EXPECT_EQ(f[1].intervals, (std::vector<int>{2, 4}));
  EXPECT_EQ(f[2].address, 3);
  EXPECT_TRUE(f[2].black);
}

TEST(Faces, CrossingRejected) {
  FlatDiagram d;
  d.colour = kPlus2;
  d.partner = {3, 4, 1, 2};
  EXPECT_THROW(faces(d), ValidationError);
}

TEST(Validate, LabelOnWhiteFaceRejected) {
  FlatDiagram d = cupcap(kPlus2);
  d.labels[2] = {1};
  EXPECT_THROW(validate(d, 2), ValidationError);
  EXPECT_THROW(canonicalize(2, d, 1), ValidationError);
}

TEST(Canonicalize, MultiplicationRelation) {
  FlatDiagram d = FlatDiagram::empty(Sign::Minus);
  d.labels[0] = {2, 2};
  EXPECT_EQ(canonicalize(3, d, 5), Element::generator(3, 2) * Scalar(5));
  d.labels[0] = {1, 2};
  EXPECT_TRUE(canonicalize(3, d, 5).is_zero());
  const FlatDiagram c = cupcap(kPlus2);
  EXPECT_EQ(canonicalize(3, c, 1), Element::from_diagram(3, c));
}

TEST(Stack, LoopGivesModulus) {
  for (int n : {2, 3, 4}) {
    const Element c = Element::from_diagram(n, cupcap(kPlus2));
    EXPECT_EQ(stack(c, c), c * Scalar::sqrtn(n));
  }
}

TEST(Stack, MatrixUnits) {
  const int n = 3;
  auto e = [&](Label i, Label j) { return basis_diagram(n, parse_basis_index("e^" + std::to_string(i) + "_" + std::to_string(j))); };
  EXPECT_EQ(stack(e(1, 2), e(2, 3)), e(1, 3));
  EXPECT_TRUE(stack(e(1, 2), e(3, 1)).is_zero());
  EXPECT_EQ(stack(e(1, 2), e(2, 1)), e(1, 1));
}

TEST(Stack, ColourMismatch) {
  EXPECT_THROW(stack(Element::identity(2, {1, Sign::Plus}), Element::identity(2, {1, Sign::Minus})), ArityError);
}

TEST(Stack, IdentityAndAssociativity) {
  Rng rng(7);
  for (int i = 0; i < 150; ++i) {
    const int n = uniform(rng, 2, 3);
    const Colour c{uniform(rng, 0, 4), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    const Element z = random_element(rng, n, c);
    EXPECT_EQ(stack(Element::identity(n, c), x), x);
    EXPECT_EQ(stack(x, Element::identity(n, c)), x);
    EXPECT_EQ(stack(stack(x, y), z), stack(x, stack(y, z)));
    EXPECT_EQ(involute(stack(x, y)), stack(involute(y), involute(x)));
    EXPECT_EQ(involute(involute(x)), x);
  }
}

TEST(Involute, BasisAndGenerators) {
  const int n = 3;
  EXPECT_EQ(involute(Element::generator(n, 2)), Element::generator(n, 2));
  for (const char* text : {"e^{1 2}_{3 1}", "e[2)^{1}_{3}(1]", "e^{3}_{1}(2]", "e[1)^{2 3}_{1 1}"}) {
    BasisIndex a = parse_basis_index(text);
    BasisIndex b = a;
    std::swap(b.upper, b.lower);
    EXPECT_EQ(involute(basis_diagram(n, a)), basis_diagram(n, b)) << text;
  }
}

TEST(CapRight, Modulus) {
  const int n = 3;
  const Element one0{Element::identity(n, {0, Sign::Plus})};
  EXPECT_EQ(cap_right(Element::identity(n, {1, Sign::Plus})), one0 * Scalar::sqrtn(n));
  FlatDiagram d = FlatDiagram::identity({1, Sign::Plus});
  d.labels[1] = {2};
  EXPECT_EQ(cap_right(Element::from_diagram(n, d)), one0 * Scalar::sqrtn(n).inverse());
  EXPECT_EQ(cap_right(basis_diagram(n, parse_basis_index("e^{}_{}(3]"))), one0 * Scalar::sqrtn(n).inverse());
  EXPECT_THROW(cap_right(one0), ArityError);
}

TEST(CapLeft, ReBordersAndCloses) {
  const int n = 2;
  // the old marked region becomes an empty white disc inside the black outside
  EXPECT_EQ(cap_left(Element::identity(n, {1, Sign::Plus})), Element::identity(n, {0, Sign::Minus}) * Scalar::sqrtn(n));
  FlatDiagram d = FlatDiagram::identity({1, Sign::Minus});
  d.labels[2] = {1};
  EXPECT_EQ(cap_left(Element::from_diagram(n, d)), Element::identity(n, {0, Sign::Plus}) * Scalar::sqrtn(n).inverse());
  EXPECT_THROW(cap_left(Element::identity(n, {0, Sign::Minus})), ArityError);
}

TEST(CapLeft, CommutesWithCapRight) {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const Colour c{2, coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, 3, c);
    EXPECT_EQ(cap_left(cap_right(x)), cap_right(cap_left(x)));
  }
}

TEST(AddStringRight, UnitalMultiplicative) {
  const int n = 3;
  for (int k = 0; k <= 3; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      EXPECT_EQ(add_string_right(Element::identity(n, {k, s})), Element::identity(n, {k + 1, s}));
    }
  }
  Rng rng(5);
  for (int i = 0; i < 80; ++i) {
    const Colour c{uniform(rng, 0, 3), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    EXPECT_EQ(add_string_right(stack(x, y)), stack(add_string_right(x), add_string_right(y)));
  }
  EXPECT_EQ(add_string_right(Element::generator(n, 2)), basis_diagram(n, parse_basis_index("e[2)^{}_{}")));
}

TEST(Rotate, FullTurnAndTrace) {
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const int n = uniform(rng, 2, 3);
    const Colour c{uniform(rng, 1, 4), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    Element r = x;
    for (int t = 0; t < 2 * c.k; ++t) {
      r = rotate_one(r);
      EXPECT_EQ(r.colour().eps, t % 2 == 0 ? flip(c.eps) : c.eps);
    }
    EXPECT_EQ(r, x);
    EXPECT_EQ(pairing(rotate_one(x), rotate_one(y)), pairing(x, y));
  }
  EXPECT_THROW(rotate_one(Element::identity(2, {0, Sign::Plus})), ArityError);
}

TEST(Rotate, MapsEvenPlusBasisIntoEvenMinusSpan) {
  const int n = 2;
  for (const auto& idx : enumerate_basis(n, 2, Sign::Plus)) {
    const Element r = rotate_one(basis_diagram(n, idx));
    EXPECT_EQ(r.colour(), (Colour{2, Sign::Minus}));
    EXPECT_EQ(from_basis(n, r.colour(), to_basis(r)), r);
  }
}

TEST(TraceClose, IdentityGivesNestedLoops) {
  const auto t = trace_close(Element::identity(2, kPlus2));
  ASSERT_EQ(t.size(), 1u);
  const ClosedDiagram& d = t[0].first;
  EXPECT_EQ(d.eps, Sign::Plus);
  EXPECT_EQ(d.loop_count(), 2);
  ASSERT_EQ(d.loops.size(), 1u);
  EXPECT_EQ(d.loops[0].children.size(), 1u);
  EXPECT_TRUE(d.external.empty());
}

TEST(TraceClose, MatrixUnitDiagonal) {
  const int n = 3;
  const Element e = basis_diagram(n, parse_basis_index("e^2_2"));
  Scalar total;
  for (const auto& [d, c] : trace_close(e)) total += c * lambda_plus(d, n);
  // one loop with a labelled black inside, times the weight sqrt n; (sqrt n)^-2 of it is 1/n
  EXPECT_EQ(total, Scalar(1));
}

TEST(ExpandUnits, Examples) {
  const int n = 3;
  EXPECT_EQ(expand_units(Element::identity(n, {0, Sign::Minus})), sum_of_generators(n));
  EXPECT_EQ(expand_units(Element::generator(n, 2)), Element::generator(n, 2));
  Element want(n, kPlus2);
  for (Label i = 1; i <= n; ++i) {
    FlatDiagram d = FlatDiagram::identity(kPlus2);
    d.labels[1] = {i};
    want += Element::from_diagram(n, d);
  }
  EXPECT_EQ(expand_units(Element::identity(n, kPlus2)), want);
}

TEST(Resolution, OrderIndependentAndMatchesFormula) {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const int n = uniform(rng, 2, 4);
    const Sign s = coin(rng, 0.5) ? Sign::Plus : Sign::Minus;
    const ClosedDiagram d = random_closed(rng, n, s);
    const ClosedResolution a = resolve_loops(d, n);
    const ClosedResolution b = resolve_loops(d, n, &rng);
    EXPECT_EQ(a.zero, b.zero);
    if (!a.zero) {
      EXPECT_EQ(a.coeff, b.coeff);
      EXPECT_EQ(a.external_label, b.external_label);
    }
    const EvalCounts c = eval_counts(d);
    EXPECT_EQ(c.empty_regions + c.labelled_regions, d.loop_count());
    const Scalar formula = c.consistent ? sc_sqrtn_pow(n, c.empty_regions - c.labelled_regions) : Scalar(0);
    EXPECT_EQ(a.zero ? Scalar(0) : a.coeff, formula) << to_text(d);
  }
}

TEST(TextFormat, RoundTrip) {
  const std::string text = "colour 3 -\nmatch: (1,6) (2,5) (3,4)\nlabels: 2=1 6=2\n";
  const FlatDiagram d = parse_diagram(text);
  EXPECT_EQ(to_text(d), text);
  Rng rng(29);
  GenOptions opt;
  opt.second_label = 0;
  for (int i = 0; i < 200; ++i) {
    const Colour c{uniform(rng, 0, 5), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const FlatDiagram f = random_flat(rng, 4, c, opt);
    EXPECT_EQ(parse_diagram(to_text(f)), f);
    EXPECT_EQ(to_text(parse_diagram(to_text(f))), to_text(f));
  }
}

TEST(TextFormat, Rejects) {
  EXPECT_THROW(parse_diagram("colour 2 +\nmatch: (1,3) (2,4)\nlabels:\n"), ValidationError);
  EXPECT_THROW(parse_diagram("colour 2 +\nmatch: (1,2)\nlabels:\n"), ValidationError);
  EXPECT_THROW(parse_diagram("colour 1 *\nmatch: (1,2)\nlabels:\n"), ValidationError);
  EXPECT_THROW(parse_diagram("colour 1 +\nmatch: (1,2)\nlabels: 2=1\n"), ValidationError);
}

}  // namespace
