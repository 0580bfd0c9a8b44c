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

#ifndef QPD_ITERATED_HPP_
#define QPD_ITERATED_HPP_

// Repeated play of the entangled game. A policy sees only the measured bits
// of the previous round; the joint process is therefore a Markov chain on the
// four outcomes, which run_expected evolves exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpd/protocol.hpp"

namespace qpd {

struct AlwaysPlay {
  StrategySpec move;
};

// Plays `initial` in round one, then `cooperate_move` if the opponent's bit
// was C last round and `defect_move` otherwise.
struct TitForTat {
  StrategySpec initial = NamedMove::kC;
  StrategySpec cooperate_move = NamedMove::kC;
  StrategySpec defect_move = NamedMove::kD;
};

using PolicyKind = std::variant<AlwaysPlay, TitForTat>;

class Policy {
 public:
  const PolicyKind& kind() const { return kind_; }
  const std::string& label() const { return label_; }

  // Move for the given seat, given last round's outcome (none in round one).
  StrategySpec NextMove(Player seat, std::optional<Outcome2> last) const;

  friend Policy MakeAlways(StrategySpec move, std::string label);
  friend Policy MakeTitForTat(TitForTat params, std::string label);

 private:
  Policy(PolicyKind kind, std::string label)
      : kind_(std::move(kind)), label_(std::move(label)) {}

  PolicyKind kind_;
  std::string label_;
};

// Empty labels default to "Always-<move>" and "TitForTat".
Policy MakeAlways(StrategySpec move, std::string label = "");
// Throws PolicyError unless both response moves are Named C or D.
Policy MakeTitForTat(TitForTat params = {}, std::string label = "");

enum class RunMode { kExpected, kSampled };

struct TournamentResult {
  std::vector<PayoffPair> per_round;
  PayoffPair average;
  std::size_t rounds = 0;
  RunMode mode = RunMode::kExpected;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const TournamentResult&,
                         const TournamentResult&) = default;
};

// Exact per-round expected payoffs. Throws RangeError if rounds < 1.
TournamentResult RunExpected(const Policy& alice, const Policy& bob,
                             const GameConfig& config, std::size_t rounds);

// One realization: each round draws u from SplitMix64(seed) and selects the
// first outcome whose cumulative probability in (CC, CD, DC, DD) exceeds u.
TournamentResult RunSampled(const Policy& alice, const Policy& bob,
                            const GameConfig& config, std::size_t rounds,
                            std::uint64_t seed);

// Exact standard deviation of the N-round sampled average of each player's
// payoff, including correlations between rounds.
PayoffPair SampledAverageStdDev(const Policy& alice, const Policy& bob,
                                const GameConfig& config, std::size_t rounds);

struct Pairing {
  std::size_t first = 0;   // policy index
  std::size_t second = 0;
  TournamentResult first_as_alice;
  TournamentResult second_as_alice;
  // Seat-averaged payoff of each policy in this pairing.
  double first_score = 0.0;
  double second_score = 0.0;
};

struct Standing {
  std::string label;
  std::size_t policy_index = 0;
  double total = 0.0;                 // sum of seat-averaged pairing scores
  std::vector<double> vs;             // score against each policy (NaN on self)
};

struct RoundRobinResult {
  std::vector<Pairing> pairings;      // (i, j) with i < j in lexicographic order
  std::vector<Standing> standings;    // descending total, ties by label
};

// Every unordered pair plays once in each seat. In sampled mode match k (in
// pairing order, first_as_alice before second_as_alice) uses the k-th output
// of SplitMix64(seed) as its own seed. Throws RangeError with < 2 policies.
RoundRobinResult RoundRobin(const std::vector<Policy>& policies,
                            const GameConfig& config, std::size_t rounds,
                            RunMode mode, std::uint64_t seed = 0);

// The reference field: Always-C, Always-D, Always-E, Always-M2, TitForTat.
std::vector<Policy> StandardField();

}  // namespace qpd

#endif  // QPD_ITERATED_HPP_
