#include <gtest/gtest.h>

#include <cmath>

#include "printers.hpp"
#include "spinpa/basis.hpp"
#include "spinpa/evalfun.hpp"
#include "spinpa/generators.hpp"

using namespace spinpa;

namespace {

std::size_t ipow(int n, int k) { return static_cast<std::size_t>(std::llround(std::pow(n, k))); }

TEST(Enumerate, Counts) {
  const std::vector<std::size_t> plus{1, 2, 4, 8};
  const std::vector<std::size_t> minus{2, 2, 4, 8};
  for (int k = 0; k <= 3; ++k) {
    EXPECT_EQ(enumerate_basis(2, k, Sign::Plus).size(), plus[static_cast<std::size_t>(k)]);
    EXPECT_EQ(enumerate_basis(2, k, Sign::Minus).size(), minus[static_cast<std::size_t>(k)]);
  }
  EXPECT_EQ(enumerate_basis(3, 4, Sign::Minus).size(), 81u);
  for (int n : {2, 3, 4}) {
    for (int k = 1; k <= 5; ++k) {
      EXPECT_EQ(enumerate_basis(n, k, Sign::Plus).size(), ipow(n, k));
      EXPECT_EQ(enumerate_basis(n, k, Sign::Minus).size(), ipow(n, k));
    }
  }
}

TEST(Enumerate, SortedAndDistinct) {
  const auto b = enumerate_basis(3, 4, Sign::Minus);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
  for (const auto& idx : b) EXPECT_EQ(colour_of(idx), (Colour{4, Sign::Minus}));
}

TEST(BasisText, RoundTrip) {
  for (int k = 0; k <= 5; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (const auto& idx : enumerate_basis(2, k, s)) {
        if (idx.family == Family::Point) continue;
        EXPECT_EQ(parse_basis_index(to_text(idx)), idx);
      }
    }
  }
  EXPECT_EQ(to_text(parse_basis_index("e[3)^{1 2}_{2 1}(4]")), "e[3)^{1 2}_{2 1}(4]");
  EXPECT_EQ(to_text(parse_basis_index("e^1_2")), "e^{1}_{2}");
  EXPECT_EQ(parse_basis_index("s(2)").family, Family::Point);
  EXPECT_THROW(parse_basis_index("e^{1 2}_{1}"), ValidationError);
  EXPECT_THROW(parse_basis_index("e^{1}_{1}x"), ValidationError);
}

TEST(BasisDiagram, Degenerate) {
  EXPECT_EQ(basis_diagram(3, parse_basis_index("e^{}_{}")), Element::identity(3, {0, Sign::Plus}));
  EXPECT_EQ(basis_diagram(3, parse_basis_index("s(2)")), Element::generator(3, 2));
  EXPECT_THROW(basis_diagram(2, parse_basis_index("e^3_1")), ValidationError);
}

TEST(BasisDiagram, Layout) {
  // caps on top with i, aligned cups with j, decoration strands at the edges
  const FlatDiagram d = basis_layout(parse_basis_index("e[5)^{1 2}_{3 4}(6]"));
  EXPECT_EQ(to_text(d), "colour 6 -\nmatch: (1,12) (2,3) (4,5) (6,7) (8,9) (10,11)\nlabels: 2=1 4=2 6=6 8=4 10=3 12=5\n");
  const FlatDiagram e = basis_layout(parse_basis_index("e^{1 2}_{3 4}(5]"));
  EXPECT_EQ(to_text(e), "colour 5 +\nmatch: (1,2) (3,4) (5,6) (7,8) (9,10)\nlabels: 1=1 3=2 5=5 7=4 9=3\n");
}

// every product of two basis elements, computed by stacking diagrams,
// against the delta rules
class UnitProducts : public ::testing::TestWithParam<std::tuple<int, int, Sign>> {};

TEST_P(UnitProducts, StackingReproducesDeltaRules) {
  const auto [n, k, s] = GetParam();
  const auto basis = enumerate_basis(n, k, s);
  std::vector<Element> e;
  for (const auto& idx : basis) e.push_back(basis_diagram(n, idx));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const UnitProduct up = unit_product(basis[a], basis[b]);
      const Element want = up.index ? basis_diagram(n, *up.index) : Element(n, {k, s});
      ASSERT_EQ(stack(e[a], e[b]), want) << to_text(basis[a]) << " * " << to_text(basis[b]);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Small, UnitProducts,
                         ::testing::Combine(::testing::Values(2, 3), ::testing::Values(0, 1, 2, 3, 4),
                                            ::testing::Values(Sign::Plus, Sign::Minus)));

TEST(UnitProduct, Rules) {
  auto u = [](const char* a, const char* b) { return unit_product(parse_basis_index(a), parse_basis_index(b)); };
  EXPECT_EQ(*u("e^1_2(3]", "e^2_1(3]").index, parse_basis_index("e^1_1(3]"));
  EXPECT_FALSE(u("e^1_2(3]", "e^2_1(1]").index);
  EXPECT_EQ(*u("e[2)^1_2", "e[2)^2_3").index, parse_basis_index("e[2)^1_3"));
  EXPECT_FALSE(u("e[2)^1_2", "e[1)^2_3").index);
  EXPECT_FALSE(u("e^{1 2}_{1 2}", "e^{1 1}_{1 2}").index);
  EXPECT_THROW(u("e^1_2", "e^{1 1}_{1 2}"), ArityError);
}

TEST(ToBasis, Examples) {
  const int n = 3;
  const Colour c{2, Sign::Plus};
  Coordinates id;
  for (Label i = 1; i <= n; ++i) id[parse_basis_index("e^" + std::to_string(i) + "_" + std::to_string(i))] = 1;
  EXPECT_EQ(to_basis(Element::identity(n, c)), id);

  Coordinates all;
  for (Label i = 1; i <= n; ++i) {
    for (Label j = 1; j <= n; ++j) all[parse_basis_index("e^" + std::to_string(i) + "_" + std::to_string(j))] = 1;
  }
  auto times = [](Coordinates x, const Scalar& s) {
    for (auto& [k, v] : x) v *= s;
    return x;
  };
  const Element cupcap = Element::from_diagram(n, FlatDiagram::from_pairs(c, {{1, 2}, {3, 4}}));
  EXPECT_EQ(to_basis(cupcap), times(all, Scalar::sqrtn(n).inverse()));
  EXPECT_EQ(to_basis(jones_projection(n, 1, 2, Sign::Plus)), times(all, Scalar(Rational(1, n))));

  for (const auto& idx : enumerate_basis(n, 3, Sign::Minus)) {
    const Coordinates x = to_basis(basis_diagram(n, idx));
    ASSERT_EQ(x.size(), 1u);
    EXPECT_EQ(x.begin()->first, idx);
    EXPECT_EQ(x.begin()->second, Scalar(1));
  }
}

TEST(ToBasis, CompleteAndMultiplicative) {
  Rng rng(41);
  for (int i = 0; i < 80; ++i) {
    const int n = uniform(rng, 2, 3);
    const Colour c{uniform(rng, 0, 4), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    const Coordinates cx = to_basis(x);
    EXPECT_EQ(to_basis(from_basis(n, c, cx)), cx);
    Scalar expanded;
    for (const auto& [idx, v] : cx) expanded += v * pairing(basis_diagram(n, idx), y);
    EXPECT_EQ(pairing(x, y), expanded);
    EXPECT_EQ(to_basis(stack(x, y)), convolve(cx, to_basis(y)));
  }
}

TEST(Jones, Relations) {
  for (int n : {2, 3}) {
    for (int k = 2; k <= 5; ++k) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (int p = 1; p < k; ++p) {
          const Element e = jones_projection(n, p, k, s);
          EXPECT_EQ(stack(e, e), e);
          if (p + 1 < k) {
            const Element f = jones_projection(n, p + 1, k, s);
            EXPECT_EQ(stack(e, stack(f, e)), e * Scalar(Rational(1, n)));
            EXPECT_EQ(stack(f, stack(e, f)), f * Scalar(Rational(1, n)));
          }
        }
      }
    }
  }
  EXPECT_THROW(jones_projection(2, 0, 3, Sign::Plus), ArityError);
  EXPECT_THROW(jones_projection(2, 3, 3, Sign::Plus), ArityError);
}

TEST(StatedTrace, MatchesTau) {
  for (int n : {2, 3}) {
    for (int k = 0; k <= 6; ++k) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (const auto& idx : enumerate_basis(n, k, s)) {
          if (idx.m() > 2 || (n == 3 && k == 6)) break;
          EXPECT_EQ(tau(basis_diagram(n, idx)), stated_trace(idx, n)) << to_text(idx);
        }
      }
    }
  }
}

}  // namespace
