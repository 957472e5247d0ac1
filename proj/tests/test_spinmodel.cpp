#include <gtest/gtest.h>

#include "printers.hpp"
#include "spinpa/evalfun.hpp"
#include "spinpa/generators.hpp"
#include "spinpa/spinmodel.hpp"

using namespace spinpa;

namespace {

TEST(Loops, Encoding) {
  EXPECT_EQ(to_text(loop_encode(parse_basis_index("s(3)"))), "v3");
  EXPECT_EQ(to_text(loop_encode(parse_basis_index("e^{}_{}(2]"))), "w v2 w");
  EXPECT_EQ(to_text(loop_encode(parse_basis_index("e^{}_{}"))), "w");
  EXPECT_EQ(to_text(loop_encode(parse_basis_index("e^{3 1}_{2 4}"))), "w v3 w v1 w v4 w v2 w");
  EXPECT_EQ(to_text(loop_encode(parse_basis_index("e[2)^{1}_{3}(4]"))), "v2 w v1 w v4 w v3 w v2");
  EXPECT_EQ(to_text(loop_encode(parse_basis_index("e[2)^{1}_{3}"))), "v2 w v1 w v3 w v2");
}

TEST(Loops, DecodeRejects) {
  EXPECT_THROW(loop_decode(parse_loop("w v1 v2 w"), 3), ValidationError);
  EXPECT_THROW(loop_decode(parse_loop("w v1 w v2"), 3), ValidationError);
  EXPECT_THROW(loop_decode(parse_loop("w v4 w"), 3), ValidationError);
  EXPECT_THROW(parse_loop("w x1 w"), ValidationError);
}

TEST(Loops, BruteForceCountsAndBijection) {
  EXPECT_EQ(enumerate_loops(2, 3, Sign::Plus).size(), 8u);
  for (int n : {2, 3, 4}) {
    for (int k = 0; k <= 5; ++k) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const auto loops = enumerate_loops(n, k, s);
        const auto basis = enumerate_basis(n, k, s);
        ASSERT_EQ(loops.size(), basis.size());
        std::set<GraphLoop> from_basis;
        for (const auto& idx : basis) {
          const GraphLoop l = loop_encode(idx);
          EXPECT_EQ(loop_decode(l, n), idx);
          EXPECT_EQ(parse_loop(to_text(l)), l);
          from_basis.insert(l);
        }
        EXPECT_EQ(from_basis, std::set<GraphLoop>(loops.begin(), loops.end()));
      }
    }
  }
}

ModelElement random_model(Rng& rng, int n, Colour c) {
  ModelElement x{n, c, {}};
  const auto basis = enumerate_basis(n, c.k, c.eps);
  for (int t = 0; t < 4; ++t) {
    const auto& idx = basis[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(basis.size()) - 1))];
    x.coeffs[idx] = Scalar(Rational(uniform(rng, 1, 5), uniform(rng, 1, 3)));
  }
  return x;
}

TEST(Model, AlgebraLaws) {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const int n = uniform(rng, 2, 3);
    const Colour c{uniform(rng, 0, 4), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const ModelElement x = random_model(rng, n, c);
    const ModelElement y = random_model(rng, n, c);
    const ModelElement z = random_model(rng, n, c);
    const ModelElement one = model_identity(n, c);
    EXPECT_EQ(model_mul(x, one), x);
    EXPECT_EQ(model_mul(one, x), x);
    EXPECT_EQ(model_mul(model_mul(x, y), z), model_mul(x, model_mul(y, z)));
    EXPECT_EQ(model_star(model_star(x)), x);
    EXPECT_EQ(model_star(model_mul(x, y)), model_mul(model_star(y), model_star(x)));
    EXPECT_EQ(model_tau(model_mul(x, y)), model_tau(model_mul(y, x)));
    EXPECT_EQ(model_tau(one), Scalar(1));
  }
}

TEST(Model, TraceValues) {
  const int n = 3;
  EXPECT_EQ(model_tau(ModelElement{n, {4, Sign::Plus}, {{parse_basis_index("e^{1 2}_{1 2}"), 1}}}),
            Scalar(Rational(1, 9)));
  EXPECT_EQ(model_tau(ModelElement{n, {4, Sign::Plus}, {{parse_basis_index("e^{1 2}_{2 2}"), 1}}}), Scalar(0));
  EXPECT_THROW(model_mul(model_identity(n, {1, Sign::Plus}), model_identity(n, {1, Sign::Minus})), ArityError);
}

TEST(Iso, Examples) {
  const int n = 3;
  for (Label i = 1; i <= n; ++i) {
    const ModelElement m = iso_to_model(Element::generator(n, i));
    ASSERT_EQ(m.coeffs.size(), 1u);
    EXPECT_EQ(to_text(loop_encode(m.coeffs.begin()->first)), "v" + std::to_string(i));
  }
  for (int k = 0; k <= 3; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      EXPECT_EQ(iso_to_model(Element::identity(n, {k, s})), model_identity(n, {k, s}));
    }
  }
}

TEST(Iso, Homomorphism) {
  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const int n = uniform(rng, 2, 3);
    const Colour c{uniform(rng, 0, 4), coin(rng, 0.5) ? Sign::Plus : Sign::Minus};
    const Element x = random_element(rng, n, c);
    const Element y = random_element(rng, n, c);
    EXPECT_EQ(iso_to_model(stack(x, y)), model_mul(iso_to_model(x), iso_to_model(y)));
    EXPECT_EQ(iso_to_model(involute(x)), model_star(iso_to_model(x)));
    EXPECT_EQ(model_tau(iso_to_model(x)), tau(x));
    const ModelElement m = iso_to_model(x);
    EXPECT_EQ(iso_to_model(iso_from_model(m)), m);
  }
}

TEST(Spin, Consistency) {
  for (int n : {2, 3, 4, 5}) {
    const SpinFunction mu = spin_function(n);
    EXPECT_EQ(mu.mu_w_sq, Scalar::sqrtn(n));
    EXPECT_EQ(mu.mu_w_sq / mu.mu_v_sq, Scalar::sqrtn(n));
    for (const auto& c : spin_consistency(n)) EXPECT_TRUE(c.ok) << c.name;
  }
}

}  // namespace
