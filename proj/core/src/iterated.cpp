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
#include <array>
#include <cmath>
#include <limits>

#include "qpd/errors.hpp"
#include "qpd/rng.hpp"

namespace qpd {
namespace {

constexpr std::size_t kOutcomes = 4;
constexpr std::size_t kFirstRound = kOutcomes;  // pseudo-state before round 1

// Joint process of one match. State x in 0..3 is last round's outcome; the
// extra state kFirstRound precedes round one.
struct MatchChain {
  std::array<Probabilities, kOutcomes + 1> next{};  // outcome law from state
  std::array<PayoffPair, kOutcomes + 1> expected{};  // payoff from state
  std::array<PayoffPair, kOutcomes> reward{};        // payoff of each outcome
  bool history_independent = false;
};

MatchChain BuildChain(const Policy& alice, const Policy& bob,
                      const GameConfig& config) {
  config.Validate();
  MatchChain chain;
  const Payoffs& p = config.payoffs;
  chain.reward = {PayoffPair{p.reward, p.reward}, {p.sucker, p.temptation},
                  {p.temptation, p.sucker}, {p.punishment, p.punishment}};

  std::array<std::pair<StrategySpec, StrategySpec>, kOutcomes + 1> moves;
  for (std::size_t x = 0; x <= kOutcomes; ++x) {
    std::optional<Outcome2> last;
    if (x != kFirstRound) last = static_cast<Outcome2>(x);
    moves[x] = {alice.NextMove(Player::kAlice, last),
                bob.NextMove(Player::kBob, last)};
  }
  chain.history_independent = std::all_of(
      moves.begin(), moves.end(), [&](const auto& m) { return m == moves[0]; });

  for (std::size_t x = 0; x <= kOutcomes; ++x) {
    const bool repeat = chain.history_independent && x > 0;
    const Outcome o = repeat ? Outcome{chain.next[0], chain.expected[0].a,
                                       chain.expected[0].b}
                             : Play(moves[x].first, moves[x].second, config);
    chain.next[x] = o.probs;
    chain.expected[x] = o.payoffs();
  }
  return chain;
}

TournamentResult Finish(std::vector<PayoffPair> per_round, RunMode mode,
                        std::optional<std::uint64_t> seed) {
  TournamentResult r;
  r.rounds = per_round.size();
  double sa = 0.0, sb = 0.0;
  for (const auto& pr : per_round) {
    sa += pr.a;
    sb += pr.b;
  }
  r.average = {sa / static_cast<double>(r.rounds),
               sb / static_cast<double>(r.rounds)};
  r.per_round = std::move(per_round);
  r.mode = mode;
  r.seed = seed;
  return r;
}

void RequireRounds(std::size_t rounds) {
  if (rounds < 1) throw RangeError("iterated game: rounds must be >= 1");
}

}  // namespace

StrategySpec Policy::NextMove(Player seat, std::optional<Outcome2> last) const {
  if (const auto* always = std::get_if<AlwaysPlay>(&kind_)) return always->move;
  const auto& tft = std::get<TitForTat>(kind_);
  if (!last) return tft.initial;
  const auto idx = static_cast<std::size_t>(*last);
  const bool opponent_defected =
      seat == Player::kAlice ? (idx & 1U) != 0 : (idx >> 1U) != 0;
  return opponent_defected ? tft.defect_move : tft.cooperate_move;
}

Policy MakeAlways(StrategySpec move, std::string label) {
  ValidateStrategy(move);
  if (label.empty()) label = "Always-" + StrategyLabel(move);
  return Policy(AlwaysPlay{std::move(move)}, std::move(label));
}

Policy MakeTitForTat(TitForTat params, std::string label) {
  if (!IsClassicalNamed(params.cooperate_move) ||
      !IsClassicalNamed(params.defect_move)) {
    throw PolicyError("tit-for-tat response moves must be C or D, got " +
                      StrategyLabel(params.cooperate_move) + " / " +
                      StrategyLabel(params.defect_move));
  }
  ValidateStrategy(params.initial);
  if (label.empty()) label = "TitForTat";
  return Policy(std::move(params), std::move(label));
}

TournamentResult RunExpected(const Policy& alice, const Policy& bob,
                             const GameConfig& config, std::size_t rounds) {
  RequireRounds(rounds);
  const MatchChain chain = BuildChain(alice, bob, config);
  std::vector<PayoffPair> per_round;
  per_round.reserve(rounds);
  if (chain.history_independent) {
    per_round.assign(rounds, chain.expected[kFirstRound]);
    return Finish(std::move(per_round), RunMode::kExpected, std::nullopt);
  }

  // Distribution over the state preceding the round.
  std::array<double, kOutcomes + 1> weight{};
  weight[kFirstRound] = 1.0;
  for (std::size_t t = 0; t < rounds; ++t) {
    PayoffPair round{};
    std::array<double, kOutcomes + 1> next{};
    for (std::size_t x = 0; x <= kOutcomes; ++x) {
      if (weight[x] == 0.0) continue;
      round.a += weight[x] * chain.expected[x].a;
      round.b += weight[x] * chain.expected[x].b;
      for (std::size_t y = 0; y < kOutcomes; ++y) {
        next[y] += weight[x] * chain.next[x][y];
      }
    }
    per_round.push_back(round);
    weight = next;
  }
  return Finish(std::move(per_round), RunMode::kExpected, std::nullopt);
}

TournamentResult RunSampled(const Policy& alice, const Policy& bob,
                            const GameConfig& config, std::size_t rounds,
                            std::uint64_t seed) {
  RequireRounds(rounds);
  const MatchChain chain = BuildChain(alice, bob, config);
  SplitMix64 rng(seed);
  std::vector<PayoffPair> per_round;
  per_round.reserve(rounds);
  std::size_t state = kFirstRound;
  for (std::size_t t = 0; t < rounds; ++t) {
    const Probabilities& law = chain.next[state];
    const double u = rng.NextUnit();
    // Rounding can leave the cumulative sum just below 1; fall back to the
    // last outcome with positive probability.
    std::size_t chosen = kOutcomes - 1;
    while (chosen > 0 && law[chosen] == 0.0) --chosen;
    double cumulative = 0.0;
    for (std::size_t y = 0; y < kOutcomes; ++y) {
      cumulative += law[y];
      if (u < cumulative) {
        chosen = y;
        break;
      }
    }
    per_round.push_back(chain.reward[chosen]);
    state = chosen;
  }
  return Finish(std::move(per_round), RunMode::kSampled, seed);
}

PayoffPair SampledAverageStdDev(const Policy& alice, const Policy& bob,
                                const GameConfig& config, std::size_t rounds) {
  RequireRounds(rounds);
  const MatchChain chain = BuildChain(alice, bob, config);
  const std::size_t n = rounds;

  // X_t is the outcome of round t. With f the per-outcome payoff and P the
  // outcome-to-outcome transition,
  //   Var(sum f(X_t)) = sum_s [Var f(X_s) + 2 sum_x pi_s(x) (f(x) - mu_s) G_{n-s}(x)]
  // where G_m = sum_{k=1..m} P^k f.
  auto variance_of_sum = [&](auto payoff_of) {
    std::array<double, kOutcomes> f{};
    for (std::size_t y = 0; y < kOutcomes; ++y) f[y] = payoff_of(chain.reward[y]);

    std::vector<std::array<double, kOutcomes>> cumulative(n);
    std::array<double, kOutcomes> g = f;
    std::array<double, kOutcomes> acc{};
    for (std::size_t m = 1; m < n; ++m) {
      std::array<double, kOutcomes> pg{};
      for (std::size_t x = 0; x < kOutcomes; ++x)
        for (std::size_t y = 0; y < kOutcomes; ++y)
          pg[x] += chain.next[x][y] * g[y];
      g = pg;
      for (std::size_t x = 0; x < kOutcomes; ++x) acc[x] += g[x];
      cumulative[m] = acc;
    }

    double total = 0.0;
    Probabilities pi = chain.next[kFirstRound];
    for (std::size_t s = 1; s <= n; ++s) {
      double mu = 0.0, second = 0.0;
      for (std::size_t x = 0; x < kOutcomes; ++x) {
        mu += pi[x] * f[x];
        second += pi[x] * f[x] * f[x];
      }
      double cross = 0.0;
      if (s < n) {
        for (std::size_t x = 0; x < kOutcomes; ++x)
          cross += pi[x] * (f[x] - mu) * cumulative[n - s][x];
      }
      total += (second - mu * mu) + 2.0 * cross;
      Probabilities next{};
      for (std::size_t x = 0; x < kOutcomes; ++x)
        for (std::size_t y = 0; y < kOutcomes; ++y)
          next[y] += pi[x] * chain.next[x][y];
      pi = next;
    }
    return std::max(total, 0.0);
  };

  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return {std::sqrt(variance_of_sum([](const PayoffPair& p) { return p.a; }) / n2),
          std::sqrt(variance_of_sum([](const PayoffPair& p) { return p.b; }) / n2)};
}

RoundRobinResult RoundRobin(const std::vector<Policy>& policies,
                            const GameConfig& config, std::size_t rounds,
                            RunMode mode, std::uint64_t seed) {
  if (policies.size() < 2) throw RangeError("round_robin: need >= 2 policies");
  RequireRounds(rounds);
  SplitMix64 seeds(seed);
  auto run = [&](const Policy& a, const Policy& b) {
    if (mode == RunMode::kExpected) return RunExpected(a, b, config, rounds);
    const std::uint64_t match_seed = seeds.Next();
    return RunSampled(a, b, config, rounds, match_seed);
  };

  const std::size_t n = policies.size();
  RoundRobinResult result;
  std::vector<Standing> standings(n);
  for (std::size_t i = 0; i < n; ++i) {
    standings[i].label = policies[i].label();
    standings[i].policy_index = i;
    standings[i].vs.assign(n, std::numeric_limits<double>::quiet_NaN());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Pairing pairing;
      pairing.first = i;
      pairing.second = j;
      pairing.first_as_alice = run(policies[i], policies[j]);
      pairing.second_as_alice = run(policies[j], policies[i]);
      pairing.first_score = 0.5 * (pairing.first_as_alice.average.a +
                                   pairing.second_as_alice.average.b);
      pairing.second_score = 0.5 * (pairing.first_as_alice.average.b +
                                    pairing.second_as_alice.average.a);
      standings[i].vs[j] = pairing.first_score;
      standings[j].vs[i] = pairing.second_score;
      standings[i].total += pairing.first_score;
      standings[j].total += pairing.second_score;
      result.pairings.push_back(std::move(pairing));
    }
  }
  std::stable_sort(standings.begin(), standings.end(),
                   [](const Standing& l, const Standing& r) {
                     if (l.total != r.total) return l.total > r.total;
                     return l.label < r.label;
                   });
  result.standings = std::move(standings);
  return result;
}

std::vector<Policy> StandardField() {
  return {MakeAlways(NamedMove::kC), MakeAlways(NamedMove::kD),
          MakeAlways(NamedMove::kE), MakeAlways(NamedMove::kM2),
          MakeTitForTat()};
}

}  // namespace qpd
