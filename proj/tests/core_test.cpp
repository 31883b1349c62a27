// Copyright 2026 The Cosig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"
#include "cosig/oracle.hpp"
#include "cosig/structural.hpp"
#include "test_util.hpp"

namespace cosig {
namespace {

using testing::InstA;

Scheme NoInfo(const Instance& inst) {
  return Scheme::deterministic(SignalMap(inst.num_items(), 0));
}

Scheme FullInfo() { return Scheme::deterministic({0, 1, 2}); }

TEST(Marginals, DeterministicIsZeroOne) {
  const Instance inst = InstA();
  const Eigen::MatrixXd x = marginals(FullInfo(), inst);
  EXPECT_EQ(x, Eigen::MatrixXd::Identity(3, 3));
}

TEST(Marginals, MixtureSplitsRows) {
  const Instance inst = InstA();
  Scheme mix;
  mix.components = {{0.5, SignalMap{0, 1, 2}}, {0.5, SignalMap{0, 2, 2}}};
  const Eigen::MatrixXd x = marginals(mix, inst);
  EXPECT_DOUBLE_EQ(x(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(x(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(x(0, 0), 1.0);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(x.row(j).sum(), 1.0, 1e-15);
}

TEST(Marginals, InvalidSchemeListsViolations) {
  const Instance inst = InstA(2);
  try {
    marginals(Scheme::deterministic({0, 1, 7}), inst);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().size(), 1u);
    EXPECT_NE(std::string(e.what()).find("unknown signal 7"), std::string::npos);
  }
  EXPECT_THROW(welfare(inst, FullInfo()), ValidationError);  // 3 > k
}

TEST(ConditionalValue, NoInformationIsPriorMean) {
  const Instance inst = InstA();
  EXPECT_NEAR(conditional_value(inst, NoInfo(inst), 0, 0), 1.6 / 3, 1e-12);
  EXPECT_NEAR(conditional_value(inst, NoInfo(inst), 1, 0), 1.6 / 3, 1e-12);
}

TEST(ConditionalValue, FullInformationIsPointValue) {
  const Instance inst = InstA();
  EXPECT_NEAR(conditional_value(inst, FullInfo(), 0, 1), 0.6, 1e-12);
  EXPECT_NEAR(conditional_value(inst, FullInfo(), 1, 2), 1.0, 1e-12);
}

TEST(ConditionalValue, BundleOfItemsOneAndTwo) {
  const Instance inst = InstA();
  const Scheme f = Scheme::deterministic({0, 1, 1});
  EXPECT_NEAR(conditional_value(inst, f, 1, 1), (0.2 + 1.0 / 3) / (2.0 / 3),
              1e-12);
  EXPECT_NEAR(conditional_value(inst, f, 1, 1), 0.8, 1e-12);
}

TEST(ConditionalValue, ZeroProbabilitySignalThrows) {
  const Instance inst = InstA();
  EXPECT_THROW(conditional_value(inst, NoInfo(inst), 0, 2),
               ZeroProbabilitySignal);
}

TEST(Welfare, InstAExamples) {
  const Instance inst = InstA();
  EXPECT_NEAR(welfare(inst, NoInfo(inst)), 1.6 / 3, 1e-12);
  EXPECT_NEAR(welfare(inst, FullInfo()), 2.6 / 3, 1e-12);
  // Label-disjoint halves: no-information on s0, full information on s1, s2
  // would need three labels for the second map, so use four signals.
  Eigen::MatrixXd v = inst.values;
  const Instance wide =
      Instance::complete(inst.p, v, 4, 4);
  Scheme mix;
  mix.components = {{0.5, SignalMap{0, 0, 0}}, {0.5, SignalMap{1, 2, 3}}};
  EXPECT_NEAR(welfare(wide, mix), 0.7, 1e-12);
}

TEST(Revenue, InstAExamples) {
  const Instance inst = InstA();
  EXPECT_NEAR(revenue(inst, FullInfo()), 0.2, 1e-12);
  EXPECT_NEAR(revenue(inst, NoInfo(inst)), 1.6 / 3, 1e-12);
}

TEST(Revenue, SinglePlayerIsZero) {
  Eigen::MatrixXd v(1, 2);
  v << 0.7, 0.2;
  const Instance inst =
      Instance::complete(Eigen::Vector2d(0.5, 0.5), v, 2, 2);
  EXPECT_EQ(revenue(inst, Scheme::deterministic({0, 1})), 0.0);
  EXPECT_EQ(revenue(inst, Scheme::deterministic({0, 0})), 0.0);
}

TEST(WelfareExcluding, Examples) {
  const Instance inst = InstA();
  EXPECT_NEAR(welfare_excluding(inst, FullInfo(), 0), 0.2 + 1.0 / 3, 1e-12);
  Eigen::MatrixXd v(1, 2);
  v << 0.7, 0.2;
  const Instance solo = Instance::complete(Eigen::Vector2d(0.5, 0.5), v, 2, 2);
  EXPECT_EQ(welfare_excluding(solo, Scheme::deterministic({0, 1}), 0), 0.0);

  // A third player who never wins changes nothing.
  Eigen::MatrixXd v3(3, 3);
  v3 << 1.0, 0.6, 0.0, 0.0, 0.6, 1.0, 0.1, 0.1, 0.1;
  const Instance three = Instance::complete(inst.p, v3, 3, 3);
  EXPECT_NEAR(welfare_excluding(three, FullInfo(), 2),
              welfare(three, FullInfo()), 1e-15);
}

TEST(AuctionReport, TotalsMatchEvaluators) {
  const Instance inst = InstA();
  const Scheme f = Scheme::deterministic({0, 1, 1});
  const AuctionReport r = auction_report(inst, f);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].winner, 0);
  EXPECT_EQ(r.records[1].winner, 1);
  EXPECT_NEAR(r.records[1].first, 0.8, 1e-12);
  EXPECT_NEAR(r.records[1].second, (0.2) / (2.0 / 3), 1e-12);
  double w = 0.0, rev = 0.0;
  for (const auto& rec : r.records) {
    w += rec.prob * rec.first;
    rev += rec.prob * rec.second;
  }
  EXPECT_NEAR(w, welfare(inst, f), 1e-12);
  EXPECT_NEAR(rev, revenue(inst, f), 1e-12);
  EXPECT_LE(r.revenue, r.welfare);
}

TEST(AuctionReport, TiesGoToLowestPlayer) {
  const Instance inst = InstA();
  const AuctionReport r = auction_report(inst, NoInfo(inst));
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].winner, 0);
}

TEST(Validation, InstanceInvariants) {
  Instance inst = InstA(2);
  inst.no_info.reset();
  EXPECT_THROW(inst.validate(), ValidationError);
  inst = InstA();
  inst.p(0) = 0.5;
  EXPECT_THROW(inst.validate(), ValidationError);
  inst = InstA();
  inst.values(0, 0) = -1;
  EXPECT_THROW(inst.validate(), ValidationError);
  inst = InstA(2);
  inst.edges(1, 0) = false;
  EXPECT_THROW(inst.validate(), ValidationError);
}

TEST(Validation, LotteryNeedsCompleteEdges) {
  Instance inst = InstA();
  inst.edges(0, 2) = false;
  Scheme s;
  s.components = {{1.0, SignalLottery{Eigen::Vector3d(0.5, 0.5, 0.0)}}};
  EXPECT_THROW(welfare(inst, s), ValidationError);
  EXPECT_NO_THROW(welfare(InstA(), s));
}

TEST(Properties, MatchReferenceOnRandomSchemes) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Instance inst = testing::SmallRandom(seed, seed % 2 == 1);
    Rng rng(seed + 1000);
    const Scheme x = random_scheme(inst, 1 + seed % 3, true, rng);
    const double w = welfare(inst, x);
    const double r = revenue(inst, x);
    EXPECT_NEAR(w, testing::RefWelfare(inst, x), 1e-12);
    EXPECT_NEAR(r, testing::RefRevenue(inst, x), 1e-12);
    EXPECT_LE(r, w + 1e-15);
    for (int i = 0; i < inst.num_players(); ++i) {
      EXPECT_NEAR(welfare_excluding(inst, x, i),
                  testing::RefSum(inst, x, inst.values,
                                  testing::AllPlayers(inst, i), false),
                  1e-12);
    }
  }
}

TEST(Properties, LabelPermutationAndSplitting) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = testing::SmallRandom(seed);
    inst.k = inst.num_signals();
    Rng rng(seed);
    const Scheme x = random_scheme(inst, 1, false, rng);
    // Reverse the labels.
    SignalMap flipped = x.map();
    for (int& s : flipped) s = inst.num_signals() - 1 - s;
    EXPECT_NEAR(welfare(inst, Scheme::deterministic(flipped)), welfare(inst, x),
                1e-12);
    Scheme split;
    split.components = {{0.5, x.map()}, {0.5, x.map()}};
    EXPECT_NEAR(welfare(inst, split), welfare(inst, x), 1e-12);
  }
}

TEST(Properties, BundleFormMatchesMarginalForm) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = testing::SmallRandom(seed, true);
    Rng rng(seed);
    const Scheme x = random_scheme(inst, 1, false, rng);
    double bundle = 0.0;
    for (int s = 0; s < inst.num_signals(); ++s) {
      double best = 0.0;
      for (int i = 0; i < inst.num_players(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < inst.num_items(); ++j) {
          if (x.map()[j] == s) sum += inst.p(j) * inst.values(i, j);
        }
        best = std::max(best, sum);
      }
      bundle += best;
    }
    EXPECT_NEAR(welfare(inst, x), bundle, 1e-12);
  }
}

TEST(Properties, RevenueBelowWelfareWithoutAnyPlayer) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = testing::SmallRandom(seed);
    Rng rng(seed);
    double bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < inst.num_players(); ++i) {
      bound = std::min(bound, opt_welfare_excluding(
                                  inst, Prior::point(inst.values), i));
    }
    for (int trial = 0; trial < 20; ++trial) {
      const Scheme x = random_scheme(inst, 2, true, rng);
      EXPECT_LE(revenue(inst, x), bound + 1e-12);
    }
  }
}

TEST(Properties, PriorWelfareIsWeightedAverage) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = testing::SmallRandom(seed);
    const Prior prior = random_prior(inst, 3, {}, seed);
    Rng rng(seed);
    const Scheme x = random_scheme(inst, 2, true, rng);
    EXPECT_NEAR(welfare(inst, x, prior), testing::RefWelfare(inst, x, prior),
                1e-12);
  }
}

TEST(FullWelfareScheme, InstAPartitionsByWinner) {
  const Instance inst = InstA(2);
  const Scheme f = full_welfare_scheme(inst);
  EXPECT_EQ(f.map(), (SignalMap{0, 0, 1}));
  EXPECT_NEAR(welfare(inst, f), 2.6 / 3, 1e-12);
}

TEST(FullWelfareScheme, SingleItemAndIdentity) {
  Eigen::MatrixXd v(3, 1);
  v << 0.1, 0.9, 0.3;
  const Instance one = Instance::complete(Eigen::VectorXd::Ones(1), v, 2, 1);
  EXPECT_EQ(full_welfare_scheme(one).signals_used().size(), 1u);

  Eigen::MatrixXd w(3, 2);
  w << 0.1, 0.5, 0.9, 0.2, 0.3, 0.3;
  const Instance few = Instance::complete(Eigen::Vector2d(0.4, 0.6), w, 2, 2);
  const Scheme f = full_welfare_scheme(few);
  EXPECT_EQ(f.map(), (SignalMap{0, 1}));
  EXPECT_NEAR(welfare(few, f), testing::FullInformationWelfare(few), 1e-12);
}

TEST(FullWelfareScheme, Errors) {
  Instance inst = InstA(2);
  inst.edges(0, 1) = false;
  EXPECT_THROW(full_welfare_scheme(inst), UnsupportedConstraint);
  EXPECT_THROW(full_welfare_scheme(InstA(1)), UnsupportedConstraint);
}

TEST(FullWelfareScheme, MatchesFullInformationOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomInstanceOptions o;
    o.m = 1 + seed % 6;
    o.n = 1 + (seed / 6) % 4;
    o.num_signals = std::min(o.m, o.n);
    o.k = o.num_signals;
    o.seed = seed;
    const Instance inst = random_instance(o);
    const Scheme f = full_welfare_scheme(inst);
    EXPECT_LE(static_cast<int>(f.signals_used().size()), std::min(o.m, o.n));
    EXPECT_NEAR(welfare(inst, f), testing::FullInformationWelfare(inst), 1e-9);
  }
}

TEST(TruncateScheme, InstAToTwoSignals) {
  const Instance inst = InstA();
  const Scheme t = truncate_scheme(inst, FullInfo(), 2);
  EXPECT_EQ(t.map(), (SignalMap{0, 0, 2}));
  EXPECT_NEAR(welfare(inst, t), (1.0 / 3 + 0.2) + 1.0 / 3, 1e-12);
}

TEST(TruncateScheme, NoOpWhenBudgetSuffices) {
  const Instance inst = InstA();
  EXPECT_EQ(truncate_scheme(inst, FullInfo(), 3).map(), FullInfo().map());
  EXPECT_EQ(truncate_scheme(inst, FullInfo(), 5).map(), FullInfo().map());
}

TEST(TruncateScheme, RatioBoundOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstanceOptions o;
    o.m = 2 + seed % 5;
    o.n = 1 + seed % 3;
    o.num_signals = o.m;
    o.k = o.m;
    o.seed = seed;
    const Instance inst = random_instance(o);
    SignalMap identity(o.m);
    for (int j = 0; j < o.m; ++j) identity[j] = j;
    const Scheme x = Scheme::deterministic(identity);
    const double wx = welfare(inst, x);
    for (int k = 1; k < o.m; ++k) {
      const Scheme y = truncate_scheme(inst, x, k);
      EXPECT_LE(static_cast<int>(y.signals_used().size()), k);
      EXPECT_GE(welfare(inst, y), static_cast<double>(k) / o.m * wx - 1e-12);
    }
  }
}

}  // namespace
}  // namespace cosig
