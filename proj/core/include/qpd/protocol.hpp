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

#ifndef QPD_PROTOCOL_HPP_
#define QPD_PROTOCOL_HPP_

// The entangled two-player Prisoner's Dilemma: J(gamma) entangles |CC>, each
// player applies a local unitary, J(gamma)^dagger disentangles, and the pair is
// measured in the cooperate/defect basis.

#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "qpd/qcore.hpp"

namespace qpd {

inline constexpr double kPi = std::numbers::pi;

struct Payoffs {
  double reward = 3.0;      // r: both cooperate
  double sucker = 0.0;      // s: cooperating against a defector
  double temptation = 5.0;  // t: defecting against a cooperator
  double punishment = 1.0;  // p: both defect

  double Min() const;
  double Max() const;
  friend bool operator==(const Payoffs&, const Payoffs&) = default;
};

// Returns a diagnostic when t > r > p > s does not hold. Not an error: the
// library accepts any quadruple for exploratory use.
std::optional<std::string> PayoffOrderingWarning(const Payoffs& payoffs);

struct GameConfig {
  double gamma = kPi / 2;  // entanglement, [0, pi/2]
  Payoffs payoffs;

  // Throws RangeError when gamma is outside [0, pi/2] or not finite.
  void Validate() const;
};

enum class Player { kAlice, kBob };

enum class NamedMove { kC, kD, kQ, kM2, kE, kM3 };

// Point of the two-parameter family U(theta, phi); theta in [0, pi],
// phi in [0, pi/2]. phi == 0 is the classical subfamily.
struct Param2 {
  double theta = 0.0;
  double phi = 0.0;
  friend bool operator==(const Param2&, const Param2&) = default;
};

// Point of the full SU(2) family U(theta, alpha, beta); theta in [0, pi],
// alpha and beta in [-pi, pi].
struct Param3 {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  friend bool operator==(const Param3&, const Param3&) = default;
};

using StrategySpec = std::variant<NamedMove, Param2, Param3>;

// The 3-parameter miracle move recovered by calibrating against the reference
// second table at gamma = pi/2. Cross-checked against CalibrateM3 in tests.
inline constexpr Param3 kCalibratedM3{kPi / 2, 0.0, kPi};

// Throws RangeError if any parameter lies outside its family's range.
void ValidateStrategy(const StrategySpec& spec);

// Renders k*pi/n (n dividing 24) symbolically, anything else as %.12g.
std::string FormatAngle(double radians);

// Short stable label: "C", "M2", "U2(theta,phi)", "U3(theta,alpha,beta)".
std::string StrategyLabel(const StrategySpec& spec);

// Named moves resolved to their parametric point; parametric specs unchanged.
StrategySpec AsParametric(const StrategySpec& spec);

bool IsClassicalNamed(const StrategySpec& spec);

Operator2 TwoParamOperator(double theta, double phi);
Operator2 ThreeParamOperator(double theta, double alpha, double beta);

// C = U(0,0), D = U(pi,0), Q = U(0,pi/2), M2 = U(pi/2,pi/2), E = U(pi/2,0),
// M3 = kCalibratedM3 in the 3-parameter family.
Operator2 StrategyOperator(const StrategySpec& spec);

// J(gamma) = cos(gamma/2) I + i sin(gamma/2) D(x)D with D = U(pi, 0).
Operator4 Entangler(double gamma);

// J^dagger (ua (x) ub) J |CC>.
TwoQubitState FinalState(const Operator2& ua, const Operator2& ub, double gamma);

struct PayoffPair {
  double a = 0.0;
  double b = 0.0;
  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

struct Outcome {
  Probabilities probs{};
  double payoff_a = 0.0;
  double payoff_b = 0.0;

  PayoffPair payoffs() const { return {payoff_a, payoff_b}; }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Expected payoffs for a distribution over (CC, CD, DC, DD).
Outcome OutcomeFromProbabilities(const Probabilities& probs,
                                 const Payoffs& payoffs);

Outcome PlayOperators(const Operator2& ua, const Operator2& ub,
                      const GameConfig& config);
Outcome Play(const StrategySpec& a, const StrategySpec& b,
             const GameConfig& config);

// Alice on the miracle move against classical Bob U(theta, 0): the corrected
// closed forms valid on the whole entanglement range.
PayoffPair ClosedFormPayoffs(double gamma, double theta);

// The erroneous forms 3 + 2 sin(theta) and (1 - sin(theta)) / 2.
// These only exist for gamma = pi/2 and are known to be wrong.
PayoffPair ErroneousClosedForm(double theta);

// $A - $B at gamma = pi/2, i.e. (5/2)(1 - sin(theta)).
double MiracleGap(double theta);

}  // namespace qpd

#endif  // QPD_PROTOCOL_HPP_
