#include <cmath>

#include <gtest/gtest.h>

#include "specbound/errors.hpp"
#include "specbound/multi_index.hpp"
#include "specbound/poly.hpp"
#include "test_support.hpp"

namespace specbound {
namespace {

using testing::naive_eval;

HomoPoly poly2(std::initializer_list<std::pair<std::vector<std::uint32_t>, double>> terms) {
  std::vector<std::pair<MultiIndex, double>> t;
  unsigned p = 0;
  std::size_t n = 0;
  for (const auto& [e, c] : terms) {
    MultiIndex j(e);
    p = j.degree();
    n = e.size();
    t.emplace_back(j, c);
  }
  return HomoPoly::from_terms(n, p, std::move(t));
}

HomoPoly linear(std::vector<double> c) { return HomoPoly::linear_form(c); }

TEST(MultinomialWeight, SmallCases) {
  EXPECT_DOUBLE_EQ(multinomial_weight(MultiIndex({2, 0}), 2), 1.0);
  EXPECT_DOUBLE_EQ(multinomial_weight(MultiIndex({1, 1}), 2), 0.5);
  EXPECT_NEAR(multinomial_weight(MultiIndex({2, 2}), 4), 4.0 / 24.0, 1e-15);
}

TEST(MultinomialWeight, DegreeMismatchThrows) {
  EXPECT_THROW(multinomial_weight(MultiIndex({1, 1}), 3), std::invalid_argument);
}

TEST(MultinomialWeight, LargeDegreeMatchesProductFormula) {
  // j = (100, 100), p = 200: weight = 1 / C(200, 100), built as a product of
  // ratios that never overflows
  double inv_binom = 1.0;
  for (int t = 1; t <= 100; ++t) inv_binom *= static_cast<double>(t) / (100.0 + t);
  EXPECT_LE(testing::relative_gap(multinomial_weight(MultiIndex({100, 100}), 200), inv_binom), 1e-12);
  // j = (67, 66, 67) at p = 200 against long double lgamma
  const long double lw = std::lgamma(68.0L) + std::lgamma(67.0L) + std::lgamma(68.0L) - std::lgamma(201.0L);
  EXPECT_LE(testing::relative_gap(multinomial_weight(MultiIndex({67, 66, 67}), 200),
                                  static_cast<double>(std::exp(lw))),
            1e-12);
}

TEST(MultiIndex, GradedLexOrder) {
  const HomoPoly f = poly2({{{0, 2}, 1.0}, {{2, 0}, 2.0}, {{1, 1}, 3.0}});
  ASSERT_EQ(f.num_terms(), 3u);
  EXPECT_EQ(f.exponents(0)[0], 2u);
  EXPECT_EQ(f.exponents(1)[0], 1u);
  EXPECT_EQ(f.exponents(2)[0], 0u);
  EXPECT_EQ(monomial_count(3, 4), 15u);
  EXPECT_EQ(monomial_count(2, 0), 1u);
}

TEST(HomoPoly, PrunesZerosAndSumsDuplicates) {
  const HomoPoly f = poly2({{{1, 1}, 1.0}, {{1, 1}, -1.0}, {{2, 0}, 0.0}});
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.degree(), 2u);
  const HomoPoly g = poly2({{{1, 1}, 1.0}, {{1, 1}, 2.5}});
  EXPECT_EQ(g.coefficient(MultiIndex({1, 1})), 3.5);
}

TEST(HomoPoly, RejectsInconsistentTerms) {
  std::vector<std::pair<MultiIndex, double>> bad{{MultiIndex({1, 0}), 1.0}};
  EXPECT_THROW(HomoPoly::from_terms(2, 2, bad), std::invalid_argument);
  std::vector<std::pair<MultiIndex, double>> bad_len{{MultiIndex({1, 0, 1}), 1.0}};
  EXPECT_THROW(HomoPoly::from_terms(2, 2, bad_len), std::invalid_argument);
}

TEST(HsNorm, Examples) {
  EXPECT_DOUBLE_EQ(hs_norm(poly2({{{2, 0}, 1.0}, {{1, 1}, 2.0}, {{0, 2}, 1.0}})), 2.0);
  EXPECT_EQ(hs_norm(HomoPoly(3, 4)), 0.0);
  const HomoPoly q = poly2({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  EXPECT_NEAR(hs_norm(power(q, 2)), std::sqrt(8.0 / 3.0), 1e-15);
}

TEST(HsNorm, MatchesNaiveTensor) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const unsigned p = 1 + trial % 4;
    const HomoPoly f = testing::random_poly(rng, n, p);
    EXPECT_LE(testing::relative_gap(hs_norm(f), testing::frobenius(testing::naive_tensor(f))), 1e-13);
  }
}

TEST(Eval, Examples) {
  const HomoPoly q = poly2({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  const double e1[] = {1.0, 0.0};
  EXPECT_EQ(eval(q, e1), 1.0);
  const HomoPoly xy = poly2({{{1, 1}, 1.0}});
  const double x34[] = {3.0, 4.0};
  EXPECT_EQ(eval(xy, x34), 12.0);
  const double zero[] = {0.0, 0.0};
  EXPECT_EQ(eval(q, zero), 0.0);
  EXPECT_EQ(eval(HomoPoly::constant(2, 3.5), zero), 3.5);
  const double wrong[] = {1.0};
  EXPECT_THROW(eval(q, wrong), std::invalid_argument);
}

TEST(Multiply, Examples) {
  const HomoPoly x1 = linear({1.0, 0.0});
  const HomoPoly x2 = linear({0.0, 1.0});
  const HomoPoly prod = multiply(x1, x2);
  ASSERT_EQ(prod.num_terms(), 1u);
  EXPECT_EQ(prod.coefficient(MultiIndex({1, 1})), 1.0);
  EXPECT_NEAR(hs_norm(prod), std::sqrt(0.5), 1e-15);

  const HomoPoly s = linear({1.0, 1.0});
  const HomoPoly sq = multiply(s, s);
  EXPECT_EQ(sq, poly2({{{2, 0}, 1.0}, {{1, 1}, 2.0}, {{0, 2}, 1.0}}));
  EXPECT_DOUBLE_EQ(hs_norm(sq), hs_norm(s) * hs_norm(s));

  const HomoPoly z = multiply(sq, HomoPoly(2, 3));
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), 5u);
  EXPECT_THROW(multiply(s, linear({1.0, 1.0, 1.0})), std::invalid_argument);
}

TEST(Multiply, MatchesPointwiseProduct) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const HomoPoly f = testing::random_poly(rng, n, 1 + trial % 3);
    const HomoPoly g = testing::random_poly(rng, n, trial % 4);
    const HomoPoly fg = multiply(f, g);
    EXPECT_EQ(fg.degree(), f.degree() + g.degree());
    const auto x = testing::random_vector(rng, n);
    EXPECT_NEAR(naive_eval(fg, x), naive_eval(f, x) * naive_eval(g, x), 1e-10 * (1.0 + std::abs(naive_eval(fg, x))));
  }
}

TEST(Multiply, SparseFallbackForHighDimension) {
  // n = 40 at degree 6 has far more monomial slots than the dense accumulator
  // will allocate, so this exercises the ordered-map path
  std::vector<double> a(40, 0.0), b(40, 0.0);
  a[0] = 1.0;
  a[39] = 2.0;
  b[5] = -1.0;
  b[39] = 1.0;
  const HomoPoly f = power(HomoPoly::linear_form(a), 3);
  const HomoPoly g = power(HomoPoly::linear_form(b), 3);
  const HomoPoly fg = multiply(f, g);
  testing::Rng rng(13);
  const auto x = testing::random_vector(rng, 40);
  EXPECT_NEAR(naive_eval(fg, x), naive_eval(f, x) * naive_eval(g, x), 1e-9 * (1.0 + std::abs(naive_eval(fg, x))));
  for (std::size_t t = 1; t < fg.num_terms(); ++t) {
    EXPECT_TRUE(graded_lex_before(fg.exponents(t - 1), fg.exponents(t)));
  }
}

TEST(Power, RankOneAndDiagonal) {
  const HomoPoly s2 = power(linear({1.0, 1.0}), 2);
  for (unsigned k = 1; k <= 6; ++k) {
    EXPECT_LE(testing::relative_gap(hs_norm(power(s2, k)), std::pow(2.0, k)), 1e-13) << "k=" << k;
  }
  EXPECT_EQ(power(s2, 1), s2);
  EXPECT_THROW(power(s2, 0), std::invalid_argument);
}

TEST(Power, BudgetErrorNamesK) {
  testing::Rng rng(5);
  const HomoPoly f = testing::random_poly(rng, 3, 2);
  try {
    power(f, 8, 50);
    FAIL() << "expected ResourceLimitError";
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("k=8"), std::string::npos) << e.what();
    EXPECT_EQ(e.limit(), 50u);
    EXPECT_GT(e.required(), 50u);
  }
}

TEST(GradientMap, Examples) {
  const HomoPoly cubic = poly2({{{3, 0}, 1.0}, {{0, 3}, 1.0}});
  const PolyMap F = gradient_map(cubic);
  EXPECT_EQ(F[0], poly2({{{2, 0}, 1.0}}));
  EXPECT_EQ(F[1], poly2({{{0, 2}, 1.0}}));

  const PolyMap id = gradient_map(poly2({{{2, 0}, 1.0}, {{0, 2}, 1.0}}));
  EXPECT_EQ(id, PolyMap::identity(2));

  const PolyMap G = gradient_map(poly2({{{2, 1}, 1.0}}));
  EXPECT_NEAR(G[0].coefficient(MultiIndex({1, 1})), 2.0 / 3.0, 1e-16);
  EXPECT_NEAR(G[1].coefficient(MultiIndex({2, 0})), 1.0 / 3.0, 1e-16);
  EXPECT_THROW(gradient_map(HomoPoly::constant(2, 1.0)), std::invalid_argument);
}

TEST(Compose, Examples) {
  // g = y1 + y2 after F = (x1^2, x2^2)
  const HomoPoly g = linear({1.0, 1.0});
  const PolyMap F({poly2({{{2, 0}, 1.0}}), poly2({{{0, 2}, 1.0}})});
  const HomoPoly h = compose(g, F);
  EXPECT_EQ(h, poly2({{{2, 0}, 1.0}, {{0, 2}, 1.0}}));
  EXPECT_NEAR(hs_norm(h), std::sqrt(2.0), 1e-15);
  EXPECT_LE(hs_norm(h), hs_norm(g) * hs_norm(F) + 1e-12);

  // y^2 after (x1 x2)
  const HomoPoly y2 = HomoPoly::monomial(MultiIndex({2}), 1.0);
  const PolyMap xy({poly2({{{1, 1}, 1.0}})});
  EXPECT_EQ(compose(y2, xy), poly2({{{2, 2}, 1.0}}));

  // linear after linear is a matrix-vector product
  const PolyMap A = PolyMap::linear(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
  const HomoPoly c = compose(linear({1.0, -1.0}), A);
  EXPECT_EQ(c, HomoPoly::linear_form(std::vector<double>{-3.0, -3.0, -3.0}));
  EXPECT_THROW(compose(linear({1.0, 1.0, 1.0}), A), std::invalid_argument);
}

TEST(ComposeMap, Examples) {
  const PolyMap F({poly2({{{2, 0}, 1.0}}), poly2({{{0, 2}, 1.0}})});
  const PolyMap FF = compose_map(F, F);
  EXPECT_EQ(FF[0], poly2({{{4, 0}, 1.0}}));
  EXPECT_EQ(FF[1], poly2({{{0, 4}, 1.0}}));

  testing::Rng rng(21);
  const PolyMap G = testing::random_map(rng, 3, 2, 2);
  EXPECT_EQ(compose_map(G, PolyMap::identity(2)), G);

  const PolyMap A = PolyMap::linear(2, 2, std::vector<double>{1, 2, 3, 4});
  const PolyMap B = PolyMap::linear(2, 2, std::vector<double>{0, 1, 1, 0});
  EXPECT_EQ(compose_map(A, B), PolyMap::linear(2, 2, std::vector<double>{2, 1, 4, 3}));
}

TEST(Compose, MatchesPointwiseEvaluation) {
  testing::Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const HomoPoly g = testing::random_poly(rng, 3, 1 + trial % 3);
    const PolyMap F = testing::random_map(rng, 3, 2, 1 + trial % 2);
    const auto x = testing::random_vector(rng, 2);
    const auto Fx = eval(F, x);
    const double expected = naive_eval(g, Fx);
    EXPECT_NEAR(naive_eval(compose(g, F), x), expected, 1e-9 * (1.0 + std::abs(expected)));
  }
}

TEST(Rotate, Examples) {
  const HomoPoly f = poly2({{{2, 0}, 1.0}});
  const std::vector<double> eye{1, 0, 0, 1};
  EXPECT_EQ(rotate(f, eye), f);

  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<double> q45{r, -r, r, r};
  const HomoPoly g = rotate(f, q45);  // ((x1 - x2)/sqrt 2)^2
  EXPECT_NEAR(g.coefficient(MultiIndex({2, 0})), 0.5, 1e-15);
  EXPECT_NEAR(g.coefficient(MultiIndex({1, 1})), -1.0, 1e-15);
  EXPECT_NEAR(g.coefficient(MultiIndex({0, 2})), 0.5, 1e-15);
  EXPECT_NEAR(hs_norm(g), 1.0, 1e-15);

  const HomoPoly radial = poly2({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  const HomoPoly rr = rotate(radial, q45);
  EXPECT_NEAR(rr.coefficient(MultiIndex({2, 0})), 1.0, 1e-15);
  EXPECT_NEAR(rr.coefficient(MultiIndex({0, 2})), 1.0, 1e-15);
  EXPECT_LE(std::abs(rr.coefficient(MultiIndex({1, 1}))), 1e-15);

  const std::vector<double> shear{1, 1, 0, 1};
  EXPECT_THROW(rotate(f, shear), std::invalid_argument);
}

TEST(Majorizes, Examples) {
  const HomoPoly q = poly2({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  EXPECT_TRUE(majorizes(q, q));
  EXPECT_TRUE(majorizes(q, poly2({{{2, 0}, 1.0}, {{0, 2}, -1.0}})));
  EXPECT_FALSE(majorizes(poly2({{{2, 0}, 1.0}}), poly2({{{1, 1}, 1.0}})));
  EXPECT_THROW(majorizes(poly2({{{2, 0}, -1.0}}), q), std::invalid_argument);
}

}  // namespace
}  // namespace specbound
