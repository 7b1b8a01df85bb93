#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "exchkit/bounds.hpp"
#include "exchkit/decompose.hpp"
#include "exchkit/extremal.hpp"
#include "oracle.hpp"

using namespace exchkit;

namespace {

const WeightProfile kRunning{{1, 1}, {1, 2}};

double binomial(int n, int j) { return std::tgamma(n + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0)); }

}  // namespace

TEST(EnumerateUrns, Order) {
  const auto urns = enumerate_urns(3, 2);
  ASSERT_EQ(urns.size(), 6u);
  EXPECT_EQ(urns.front().counts(), (std::vector<int>{2, 0, 0}));
  EXPECT_EQ(urns[1].counts(), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(urns.back().counts(), (std::vector<int>{0, 0, 2}));
  EXPECT_EQ(enumerate_urns(3, 6).size(), 28u);
}

TEST(Decompose, UniformOnSquare) {
  const TupleDistribution p(2, 2, {0.25, 0.25, 0.25, 0.25});
  const auto mix = decompose(p, WeightProfile::uniform(2, 2));
  EXPECT_EQ(mix.size(), 3u);
  EXPECT_NEAR(mix.weight_of(Urn({2, 0})), 0.25, 1e-15);
  EXPECT_NEAR(mix.weight_of(Urn({1, 1})), 0.5, 1e-15);
  EXPECT_NEAR(mix.weight_of(Urn({0, 2})), 0.25, 1e-15);
}

TEST(Decompose, ExtremePointIsOneAtom) {
  const Urn urn({2, 1, 1});
  const WeightProfile lambda{{1, 2, 3}, {2, 1, 1}, {1, 1, 5}, {0.5, 1, 1}};
  const auto mix = decompose(urn_conditional(lambda, urn, 4), lambda);
  ASSERT_EQ(mix.size(), 1u);
  EXPECT_EQ(mix.atoms()[0].urn, urn);
  EXPECT_NEAR(mix.atoms()[0].weight, 1.0, 1e-15);
}

TEST(Decompose, TiltedProductRoundTrip) {
  const WeightProfile lambda{{1, 2}, {1, 2}};
  const TupleDistribution p(2, 2, {1.0 / 9, 2.0 / 9, 2.0 / 9, 4.0 / 9});
  const auto mix = decompose(p, lambda);
  EXPECT_NEAR(mix.weight_of(Urn({2, 0})), 1.0 / 9, 1e-15);
  EXPECT_NEAR(mix.weight_of(Urn({1, 1})), 4.0 / 9, 1e-15);
  EXPECT_NEAR(mix.weight_of(Urn({0, 2})), 4.0 / 9, 1e-15);
  const auto back = reconstruct(mix, lambda);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(back[i], p[i], 1e-15);
}

TEST(Decompose, RejectsNonExchangeable) {
  const std::vector<int> x{0, 1};
  EXPECT_THROW(decompose(TupleDistribution::point_mass(2, x), WeightProfile::uniform(2, 2)), InputError);
}

TEST(Decompose, WeightsAreTypeClassMasses) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_instance(seed, 3, 4, 0.3);
    const auto mix = decompose(inst.p, inst.lambda);
    for (const auto& [counts, w] : oracle::type_masses(inst.p.probs(), 3, 4)) {
      EXPECT_NEAR(mix.weight_of(Urn(counts)), w, 1e-14);
    }
    EXPECT_LE(mix.max_conditional_error, 1e-10);
  }
}

TEST(Reconstruct, SingleAtom) {
  const Urn urn({1, 2});
  const UrnMixture mix({{urn, 1.0}});
  const WeightProfile lambda{{1, 1}, {1, 2}, {3, 1}};
  const auto got = reconstruct(mix, lambda);
  EXPECT_THROW(reconstruct(mix, kRunning), InputError);
  const auto want = oracle::urn_law({{1, 1}, {1, 2}, {3, 1}}, {1, 2}, 3);
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-15);
}

TEST(UrnMixture, Validation) {
  EXPECT_THROW(UrnMixture({{Urn({1, 1}), 0.5}, {Urn({1, 1}), 0.5}}), InputError);
  EXPECT_THROW(UrnMixture({{Urn({1, 1}), 0.7}, {Urn({2, 0}), 0.7}}), InputError);
  EXPECT_THROW(UrnMixture({{Urn({1, 1}), 1.5}, {Urn({2, 0}), -0.5}}), InputError);
}

TEST(WeightedIidMixture, BinomialWeightsGiveIidBernoulli) {
  const int n = 6;
  std::vector<UrnAtom> atoms;
  for (int j = 0; j <= n; ++j) atoms.push_back({Urn({n - j, j}), binomial(n, j) / std::pow(2.0, n)});
  const UrnMixture mix(atoms);
  const auto lambda = WeightProfile::uniform(n, 2);
  const auto p = reconstruct(mix, lambda);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], 1.0 / 64, 1e-15);
  const auto back = decompose(p, lambda);
  for (const auto& a : atoms) EXPECT_NEAR(back.weight_of(a.urn), a.weight, 1e-14);
}

TEST(BuildQ, ExtremePointGivesWeightedIid) {
  const auto q = build_Q(urn_conditional(kRunning, Urn({1, 1}), 2), kRunning);
  const std::vector<double> want{1.0 / 6, 1.0 / 3, 1.0 / 6, 1.0 / 3};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(q[i], want[i], 1e-15);
}

TEST(BuildQ, FlatWeightsDrawFromTheEmpiricalMeasure) {
  const TupleDistribution p(2, 2, {0.4, 0.1, 0.1, 0.4});
  const auto q = build_Q(p, WeightProfile::uniform(2, 2));
  // Urns (2,0), (0,2) with weight 0.4 each; urn (1,1) with weight 0.2 spreads uniformly.
  const std::vector<double> want{0.45, 0.05, 0.05, 0.45};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(q[i], want[i], 1e-15);
}

TEST(Property, RoundTripAndOracleQ) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const int c = 2 + static_cast<int>(seed % 2);
    const int n = 1 + static_cast<int>(seed % 5);
    const Instance inst = random_instance(seed, c, n, 0.2);
    const auto mix = decompose(inst.p, inst.lambda);
    const auto back = reconstruct(mix, inst.lambda);
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], inst.p[i], 1e-12);
    std::vector<std::vector<double>> rows;
    for (const auto& w : inst.lambda.entries()) rows.push_back(w.values());
    for (int k = 1; k <= n; ++k) {
      const auto q = weighted_iid_mixture(mix, inst.lambda, k);
      const auto want = oracle::constructed_q(inst.p.probs(), rows, c, n, k);
      for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q[i], want[i], 1e-12);
    }
  }
}
