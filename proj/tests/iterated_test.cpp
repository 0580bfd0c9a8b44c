// Copyright 2026 The qpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpd/iterated.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qpd/errors.hpp"
#include "qpd/rng.hpp"

namespace qpd {
namespace {

bool SameSpec(const StrategySpec& x, const StrategySpec& y) { return x == y; }

TEST(SplitMix64, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.Next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.Next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.Next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UnitValuesInHalfOpenInterval) {
  SplitMix64 rng(12345);
  double lo = 1, hi = 0, sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.NextUnit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1 - 1e-3);
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Policy, LabelsAndMoves) {
  const Policy always = MakeAlways(NamedMove::kM2);
  EXPECT_EQ(always.label(), "Always-M2");
  EXPECT_TRUE(SameSpec(always.NextMove(Player::kBob, Outcome2::kDD), NamedMove::kM2));
  EXPECT_EQ(MakeAlways(NamedMove::kC, "nice").label(), "nice");

  const Policy tft = MakeTitForTat();
  EXPECT_EQ(tft.label(), "TitForTat");
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kAlice, std::nullopt), NamedMove::kC));
  // Each seat reacts to the opponent's bit.
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kAlice, Outcome2::kCD), NamedMove::kD));
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kBob, Outcome2::kCD), NamedMove::kC));
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kAlice, Outcome2::kDC), NamedMove::kC));
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kBob, Outcome2::kDC), NamedMove::kD));
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kBob, Outcome2::kCC), NamedMove::kC));
  EXPECT_TRUE(SameSpec(tft.NextMove(Player::kAlice, Outcome2::kDD), NamedMove::kD));
}

TEST(Policy, TitForTatRequiresClassicalResponses) {
  EXPECT_THROW(MakeTitForTat({NamedMove::kC, NamedMove::kM2, NamedMove::kD}), PolicyError);
  EXPECT_THROW(MakeTitForTat({NamedMove::kC, NamedMove::kC, Param2{kPi, 0}}), PolicyError);
  EXPECT_NO_THROW(MakeTitForTat({NamedMove::kQ, NamedMove::kD, NamedMove::kC}));
}

TEST(RunExpected, AlwaysPairsRepeatOneShotPlay) {
  const GameConfig config;
  const Outcome once = Play(NamedMove::kM2, NamedMove::kE, config);
  const TournamentResult r =
      RunExpected(MakeAlways(NamedMove::kM2), MakeAlways(NamedMove::kE), config, 10);
  ASSERT_EQ(r.per_round.size(), 10u);
  for (const auto& p : r.per_round) {
    EXPECT_EQ(p.a, once.payoff_a);
    EXPECT_EQ(p.b, once.payoff_b);
  }
  EXPECT_NEAR(r.average.a, 1.0, 1e-12);
  EXPECT_EQ(r.mode, RunMode::kExpected);
  EXPECT_FALSE(r.seed.has_value());
  EXPECT_THROW(RunExpected(MakeAlways(NamedMove::kC), MakeAlways(NamedMove::kC), config, 0),
               RangeError);
}

TEST(RunExpected, TitForTatAgainstDownToEarth) {
  const std::size_t n = 1000;
  const TournamentResult r =
      RunExpected(MakeTitForTat(), MakeAlways(NamedMove::kE), GameConfig{}, n);
  EXPECT_NEAR(r.per_round[0].a, 1.5, 1e-12);
  EXPECT_NEAR(r.per_round[0].b, 4.0, 1e-12);
  for (std::size_t t = 1; t < n; ++t) {
    EXPECT_NEAR(r.per_round[t].a, 2.25, 1e-12);
    EXPECT_NEAR(r.per_round[t].b, 2.25, 1e-12);
  }
  EXPECT_NEAR(r.average.a, (1.5 + (n - 1) * 2.25) / n, 1e-12);
  EXPECT_NEAR(r.average.b, (4.0 + (n - 1) * 2.25) / n, 1e-12);
}

TEST(RunExpected, MatchesHistoryEnumeration) {
  const auto field = StandardField();
  const Policy tft_q = MakeTitForTat({NamedMove::kM2, NamedMove::kC, NamedMove::kD});
  std::vector<Policy> pool = field;
  pool.push_back(tft_q);
  GameConfig config;
  config.gamma = 1.1;
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const int n = 5;
      const auto oracle = testing::EnumerateHistories(a, b, config, n);
      const TournamentResult r = RunExpected(a, b, config, n);
      for (int t = 0; t < n; ++t) {
        EXPECT_NEAR(r.per_round[t].a, oracle.per_round_mean[t].a, 1e-12);
        EXPECT_NEAR(r.per_round[t].b, oracle.per_round_mean[t].b, 1e-12);
      }
      const PayoffPair sd = SampledAverageStdDev(a, b, config, n);
      EXPECT_NEAR(sd.a * sd.a, oracle.average_variance.a, 1e-10) << a.label() << b.label();
      EXPECT_NEAR(sd.b * sd.b, oracle.average_variance.b, 1e-10) << a.label() << b.label();
    }
}

TEST(RunSampled, DeterministicPerSeed) {
  const Policy a = MakeTitForTat(), b = MakeAlways(NamedMove::kE);
  const TournamentResult x = RunSampled(a, b, GameConfig{}, 500, 42);
  EXPECT_EQ(x, RunSampled(a, b, GameConfig{}, 500, 42));
  EXPECT_NE(x.per_round, RunSampled(a, b, GameConfig{}, 500, 43).per_round);
  EXPECT_EQ(x.mode, RunMode::kSampled);
  EXPECT_EQ(x.seed, std::optional<std::uint64_t>(42));
  const Payoffs p;
  for (const auto& y : x.per_round) {
    const bool known = (y.a == p.reward && y.b == p.reward) ||
                       (y.a == p.sucker && y.b == p.temptation) ||
                       (y.a == p.temptation && y.b == p.sucker) ||
                       (y.a == p.punishment && y.b == p.punishment);
    EXPECT_TRUE(known);
  }
}

TEST(RunSampled, FirstRoundFollowsCumulativeRule) {
  // At gamma = 0, C against E yields CC or CD with probability 1/2 each.
  GameConfig config;
  config.gamma = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double u = SplitMix64(seed).NextUnit();
    const TournamentResult r =
        RunSampled(MakeAlways(NamedMove::kC), MakeAlways(NamedMove::kE), config, 1, seed);
    EXPECT_EQ(r.per_round[0].b, u < 0.5 ? 3.0 : 5.0);
  }
}

TEST(RunSampled, AverageWithinThreeSigmaOfExpectation) {
  const auto field = StandardField();
  const std::size_t n = 100000;
  std::uint64_t seed = 7;
  for (const auto& a : field)
    for (const auto& b : field) {
      const TournamentResult expected = RunExpected(a, b, GameConfig{}, n);
      const TournamentResult sampled = RunSampled(a, b, GameConfig{}, n, seed++);
      const PayoffPair sd = SampledAverageStdDev(a, b, GameConfig{}, n);
      EXPECT_LE(std::abs(sampled.average.a - expected.average.a), 3 * sd.a + 1e-12)
          << a.label() << " vs " << b.label();
      EXPECT_LE(std::abs(sampled.average.b - expected.average.b), 3 * sd.b + 1e-12)
          << a.label() << " vs " << b.label();
    }
}

TEST(RoundRobin, StandardFieldExpected) {
  const auto field = StandardField();
  ASSERT_EQ(field.size(), 5u);
  const RoundRobinResult r = RoundRobin(field, GameConfig{}, 1000, RunMode::kExpected);
  ASSERT_EQ(r.pairings.size(), 10u);
  for (std::size_t k = 1; k < r.pairings.size(); ++k) {
    const auto& prev = r.pairings[k - 1];
    const auto& cur = r.pairings[k];
    EXPECT_LT(std::pair(prev.first, prev.second), std::pair(cur.first, cur.second));
  }
  ASSERT_EQ(r.standings.size(), 5u);
  for (std::size_t k = 1; k < r.standings.size(); ++k)
    EXPECT_GE(r.standings[k - 1].total, r.standings[k].total);
  EXPECT_EQ(r.standings.front().label, "Always-M2");

  for (const auto& s : r.standings) {
    double sum = 0;
    for (std::size_t j = 0; j < s.vs.size(); ++j) {
      if (j == s.policy_index) {
        EXPECT_TRUE(std::isnan(s.vs[j]));
      } else {
        sum += s.vs[j];
      }
    }
    EXPECT_NEAR(s.total, sum, 1e-12);
  }

  for (const auto& p : r.pairings) {
    const auto& x = p.first_as_alice.average;
    const auto& y = p.second_as_alice.average;
    EXPECT_NEAR(p.first_score, (x.a + y.b) / 2, 1e-15);
    EXPECT_NEAR(p.second_score, (x.b + y.a) / 2, 1e-15);
  }
}

TEST(RoundRobin, SampledSeedsFollowMatchOrder) {
  const auto field = StandardField();
  const RoundRobinResult r = RoundRobin(field, GameConfig{}, 50, RunMode::kSampled, 99);
  SplitMix64 seeds(99);
  for (const auto& p : r.pairings) {
    EXPECT_EQ(p.first_as_alice,
              RunSampled(field[p.first], field[p.second], GameConfig{}, 50, seeds.Next()));
    EXPECT_EQ(p.second_as_alice,
              RunSampled(field[p.second], field[p.first], GameConfig{}, 50, seeds.Next()));
  }
  EXPECT_THROW(RoundRobin({MakeTitForTat()}, GameConfig{}, 5, RunMode::kExpected), RangeError);
}

}  // namespace
}  // namespace qpd
