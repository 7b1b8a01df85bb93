#include <gtest/gtest.h>

#include <vector>

#include "exchkit/core.hpp"
#include "exchkit/rng.hpp"
#include "oracle.hpp"

using namespace exchkit;

namespace {

TupleDistribution dist(int k, int c, std::vector<double> p) { return TupleDistribution(k, c, std::move(p)); }

}  // namespace

TEST(TvDistance, IdentityIsZero) {
  const auto p = dist(1, 3, {0.2, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(tv_distance(p, p), 0.0);
}

TEST(TvDistance, DisjointSupports) {
  EXPECT_DOUBLE_EQ(tv_distance(dist(1, 2, {1, 0}), dist(1, 2, {0, 1})), 1.0);
}

TEST(TvDistance, HalfL1) {
  EXPECT_DOUBLE_EQ(tv_distance(dist(1, 2, {0.5, 0.5}), dist(1, 2, {0.25, 0.75})), 0.25);
}

TEST(TvDistance, ShapeMismatchRejected) {
  EXPECT_THROW(tv_distance(dist(1, 2, {0.5, 0.5}), dist(1, 3, {0.2, 0.3, 0.5})), InputError);
}

TEST(WeightRatio, Examples) {
  EXPECT_DOUBLE_EQ(ratio(WeightFunction({2, 3})), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(ratio(WeightFunction::constant(4, 7.5)), 1.0);
  EXPECT_DOUBLE_EQ(ratio(WeightFunction({1, 4})), 0.25);
  EXPECT_THROW(WeightFunction({1, 0}), InputError);
  EXPECT_THROW(WeightFunction({}), InputError);
}

TEST(TupleDistribution, Validation) {
  EXPECT_THROW(dist(1, 2, {0.7, 0.7}), InputError);
  EXPECT_THROW(dist(1, 2, {1.1, -0.1}), InputError);
  EXPECT_THROW(dist(2, 2, {0.5, 0.5}), InputError);
  const auto clamped = dist(1, 2, {1.0, -1e-13});
  EXPECT_EQ(clamped[1], 0.0);
  EXPECT_NEAR(clamped[0], 1.0, 1e-15);
}

TEST(TupleEncoding, FirstCoordinateMostSignificant) {
  const std::vector<int> x{1, 0, 2};
  EXPECT_EQ(encode_tuple(x, 3), 1u * 9 + 0 * 3 + 2);
  EXPECT_EQ(decode_tuple(11, 3, 3), x);
  for (std::size_t i = 0; i < 81; ++i) EXPECT_EQ(encode_tuple(decode_tuple(i, 3, 4), 3), i);
}

TEST(CellCount, Guard) {
  EXPECT_EQ(cell_count(2, 24), std::size_t{1} << 24);
  EXPECT_THROW(cell_count(2, 25), InputError);
}

TEST(BuildModel, TiltedProduct) {
  const WeightProfile lambda{{1, 2}, {1, 2}};
  const auto f = build_model(lambda, SymmetricKernel::constant(2, 2));
  const std::vector<double> want{1.0 / 9, 2.0 / 9, 2.0 / 9, 4.0 / 9};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(f[i], want[i], 1e-15);
  EXPECT_TRUE(is_weighted_exchangeable(f, lambda));
  EXPECT_TRUE(is_weighted_exchangeable(f, WeightProfile::uniform(2, 2)));
}

TEST(BuildModel, ConstantWeightsReturnNormalizedKernel) {
  const SymmetricKernel g(2, 2, {1, 3, 3, 5});
  const auto f = build_model(WeightProfile::uniform(2, 2), g);
  EXPECT_NEAR(f[0], 1.0 / 12, 1e-15);
  EXPECT_NEAR(f[1], 3.0 / 12, 1e-15);
  EXPECT_NEAR(f[3], 5.0 / 12, 1e-15);
}

TEST(SymmetricKernel, RejectsAsymmetryAndNonpositive) {
  EXPECT_THROW(SymmetricKernel(2, 2, {1, 2, 3, 4}), InputError);
  EXPECT_THROW(SymmetricKernel(2, 2, {1, 0, 0, 1}), InputError);
  EXPECT_THROW(SymmetricKernel(2, 2, {1, 1, 1}), InputError);
}

TEST(Exchangeability, PointMassIsNot) {
  const std::vector<int> x{0, 1};
  const auto f = TupleDistribution::point_mass(2, x);
  EXPECT_FALSE(is_weighted_exchangeable(f, WeightProfile::uniform(2, 2)));
  const auto bad = find_symmetry_violation(f.probs(), 2, 2, WeightProfile::uniform(2, 2));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->position, 0);
}

TEST(Exchangeability, SymmetricLawWithFlatWeights) {
  const auto f = dist(2, 3, {0.1, 0.05, 0.05, 0.05, 0.2, 0.1, 0.05, 0.1, 0.3});
  EXPECT_TRUE(is_weighted_exchangeable(f, WeightProfile::uniform(2, 3)));
}

TEST(RescaleWeights, PreservesExchangeabilityAndRatios) {
  const WeightProfile lambda{{1, 3}, {2, 1}};
  const auto f = build_model(lambda, SymmetricKernel(2, 2, {1, 2, 2, 0.5}));
  const std::vector<double> theta{2.0, 0.5};
  const auto scaled = rescale_weights(lambda, theta);
  EXPECT_TRUE(is_weighted_exchangeable(f, scaled));
  EXPECT_EQ(scaled.ratios(), lambda.ratios());
  EXPECT_DOUBLE_EQ(scaled[0][1], 6.0);
  const std::vector<double> one{1.0, 1.0};
  EXPECT_EQ(rescale_weights(lambda, one)[1].values(), lambda[1].values());
  const std::vector<double> bad{2.0, 2.0};
  EXPECT_THROW(rescale_weights(lambda, bad), InputError);
}

TEST(Marginal, Examples) {
  const auto f = dist(2, 2, {1.0 / 9, 2.0 / 9, 2.0 / 9, 4.0 / 9});
  const auto m = marginal(f, 1);
  EXPECT_NEAR(m[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(m[1], 2.0 / 3, 1e-15);
  EXPECT_EQ(marginal(f, 2).probs(), f.probs());
}

TEST(Marginal, ProductLawKeepsLeadingFactors) {
  const std::vector<std::vector<double>> factors{{0.2, 0.8}, {0.5, 0.25, 0.25}, {0.1, 0.9}};
  EXPECT_THROW(product_distribution(factors), InputError);
  const std::vector<std::vector<double>> same{{0.2, 0.8}, {0.6, 0.4}, {0.1, 0.9}};
  const auto p = product_distribution(same);
  const auto m = marginal(p, 2);
  const auto want = product_distribution({same[0], same[1]});
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i], want[i], 1e-15);
}

TEST(Property, TiltedLawsAreExchangeableAndBreakUnderPerturbation) {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int c = 2 + static_cast<int>(rng.below(2));
    const int n = 2 + static_cast<int>(rng.below(3));
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    for (auto& row : rows) {
      for (int v = 0; v < c; ++v) row.push_back(rng.uniform(0.2, 1.0));
    }
    const auto lambda = WeightProfile::from_rows(rows);
    std::vector<double> g(oracle::power(c, n));
    std::map<std::vector<int>, double> by_type;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto key = oracle::counts_of(oracle::tuple_of(i, c, n), c);
      if (!by_type.count(key)) by_type[key] = rng.uniform(0.5, 2.0);
      g[i] = by_type[key];
    }
    const auto f = build_model(lambda, SymmetricKernel(c, n, g));
    EXPECT_TRUE(is_weighted_exchangeable(f, lambda));
    // Move mass between the two arrangements of a mixed pair.
    std::vector<double> probs = f.probs();
    const std::size_t a = 1;                               // (0,..,0,1)
    const std::size_t b = oracle::power(c, n - 1);         // (1,0,..,0)
    const double shift = 0.3 * std::min(probs[a], probs[b]);
    probs[a] += shift;
    probs[b] -= shift;
    EXPECT_FALSE(is_weighted_exchangeable(TupleDistribution(n, c, probs), lambda));
  }
}

TEST(Urn, Basics) {
  const std::vector<int> x{2, 0, 2, 1};
  const Urn u = Urn::of_tuple(x, 3);
  EXPECT_EQ(u.counts(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(u.n(), 4);
  EXPECT_EQ(u.slots(), (std::vector<int>{0, 1, 2, 2}));
  EXPECT_DOUBLE_EQ(u.empirical()[2], 0.5);
  EXPECT_EQ(to_string(u), "(1,1,2)");
  EXPECT_THROW(Urn({0, 0}), InputError);
  EXPECT_THROW(Urn({1, -1}), InputError);
}
