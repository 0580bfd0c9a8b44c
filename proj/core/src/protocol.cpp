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

#include "qpd/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qpd/errors.hpp"

namespace qpd {
namespace {

constexpr Complex kI{0.0, 1.0};

bool InRange(double x, double lo, double hi) {
  return std::isfinite(x) && x >= lo && x <= hi;
}

void RequireRange(double x, double lo, double hi, const char* what) {
  if (!InRange(x, lo, hi)) {
    std::ostringstream msg;
    msg << what << " = " << x << " outside [" << lo << ", " << hi << "]";
    throw RangeError(msg.str());
  }
}

Operator2 NamedOperator(NamedMove move) {
  switch (move) {
    case NamedMove::kC: return TwoParamOperator(0.0, 0.0);
    case NamedMove::kD: return TwoParamOperator(kPi, 0.0);
    case NamedMove::kQ: return TwoParamOperator(0.0, kPi / 2);
    case NamedMove::kM2: return TwoParamOperator(kPi / 2, kPi / 2);
    case NamedMove::kE: return TwoParamOperator(kPi / 2, 0.0);
    case NamedMove::kM3:
      return ThreeParamOperator(kCalibratedM3.theta, kCalibratedM3.alpha,
                                kCalibratedM3.beta);
  }
  throw RangeError("unknown named move");
}

const char* NamedLabel(NamedMove move) {
  switch (move) {
    case NamedMove::kC: return "C";
    case NamedMove::kD: return "D";
    case NamedMove::kQ: return "Q";
    case NamedMove::kM2: return "M2";
    case NamedMove::kE: return "E";
    case NamedMove::kM3: return "M3";
  }
  return "?";
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double Payoffs::Min() const {
  return std::min({reward, sucker, temptation, punishment});
}

double Payoffs::Max() const {
  return std::max({reward, sucker, temptation, punishment});
}

std::optional<std::string> PayoffOrderingWarning(const Payoffs& p) {
  if (p.temptation > p.reward && p.reward > p.punishment &&
      p.punishment > p.sucker) {
    return std::nullopt;
  }
  std::ostringstream msg;
  msg << "payoffs (r=" << p.reward << ", s=" << p.sucker
      << ", t=" << p.temptation << ", p=" << p.punishment
      << ") violate t > r > p > s; this is not a Prisoner's Dilemma";
  return msg.str();
}

void GameConfig::Validate() const {
  RequireRange(gamma, 0.0, kPi / 2, "gamma");
  for (double v : {payoffs.reward, payoffs.sucker, payoffs.temptation,
                   payoffs.punishment}) {
    if (!std::isfinite(v)) throw RangeError("payoff entries must be finite");
  }
}

void ValidateStrategy(const StrategySpec& spec) {
  std::visit(Overloaded{
                 [](NamedMove) {},
                 [](const Param2& p) {
                   RequireRange(p.theta, 0.0, kPi, "theta");
                   RequireRange(p.phi, 0.0, kPi / 2, "phi");
                 },
                 [](const Param3& p) {
                   RequireRange(p.theta, 0.0, kPi, "theta");
                   RequireRange(p.alpha, -kPi, kPi, "alpha");
                   RequireRange(p.beta, -kPi, kPi, "beta");
                 },
             },
             spec);
}

std::string FormatAngle(double radians) {
  if (radians == 0.0) return "0";
  constexpr long kDenominator = 24;
  const double units = radians / kPi * kDenominator;
  const double rounded = std::round(units);
  if (std::abs(units - rounded) <= 1e-10 && rounded != 0.0) {
    long k = static_cast<long>(rounded);
    long n = kDenominator;
    long a = std::labs(k), b = n;
    while (b != 0) {
      long t = a % b;
      a = b;
      b = t;
    }
    k /= a;
    n /= a;
    std::string out = k < 0 ? "-" : "";
    if (std::labs(k) != 1) out += std::to_string(std::labs(k)) + "*";
    out += "pi";
    if (n != 1) out += "/" + std::to_string(n);
    return out;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", radians);
  return buf;
}

std::string StrategyLabel(const StrategySpec& spec) {
  return std::visit(
      Overloaded{
          [](NamedMove m) { return std::string(NamedLabel(m)); },
          [](const Param2& p) {
            return "U2(" + FormatAngle(p.theta) + "," + FormatAngle(p.phi) +
                   ")";
          },
          [](const Param3& p) {
            return "U3(" + FormatAngle(p.theta) + "," + FormatAngle(p.alpha) +
                   "," + FormatAngle(p.beta) + ")";
          },
      },
      spec);
}

StrategySpec AsParametric(const StrategySpec& spec) {
  if (const auto* named = std::get_if<NamedMove>(&spec)) {
    switch (*named) {
      case NamedMove::kC: return Param2{0.0, 0.0};
      case NamedMove::kD: return Param2{kPi, 0.0};
      case NamedMove::kQ: return Param2{0.0, kPi / 2};
      case NamedMove::kM2: return Param2{kPi / 2, kPi / 2};
      case NamedMove::kE: return Param2{kPi / 2, 0.0};
      case NamedMove::kM3: return kCalibratedM3;
    }
  }
  return spec;
}

bool IsClassicalNamed(const StrategySpec& spec) {
  const auto* named = std::get_if<NamedMove>(&spec);
  return named != nullptr && (*named == NamedMove::kC || *named == NamedMove::kD);
}

Operator2 TwoParamOperator(double theta, double phi) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return Operator2({std::polar(c, phi), Complex(s), Complex(-s),
                    std::polar(c, -phi)});
}

Operator2 ThreeParamOperator(double theta, double alpha, double beta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return Operator2({std::polar(c, alpha), kI * std::polar(s, beta),
                    kI * std::polar(s, -beta), std::polar(c, -alpha)});
}

Operator2 StrategyOperator(const StrategySpec& spec) {
  ValidateStrategy(spec);
  return std::visit(
      Overloaded{
          [](NamedMove m) { return NamedOperator(m); },
          [](const Param2& p) { return TwoParamOperator(p.theta, p.phi); },
          [](const Param3& p) {
            return ThreeParamOperator(p.theta, p.alpha, p.beta);
          },
      },
      spec);
}

Operator4 Entangler(double gamma) {
  RequireRange(gamma, 0.0, kPi / 2, "gamma");
  const Operator2 d = TwoParamOperator(kPi, 0.0);
  return Complex(std::cos(gamma / 2)) * Operator4::Identity() +
         kI * std::sin(gamma / 2) * Kron2(d, d);
}

TwoQubitState FinalState(const Operator2& ua, const Operator2& ub,
                         double gamma) {
  if (!CheckUnitary(ua) || !CheckUnitary(ub)) {
    throw ProtocolError("final_state: player strategy is not unitary");
  }
  // J^dagger (ua (x) ub) J |CC> as three matrix-vector products. All three
  // factors are unitary here, so the per-step check in Apply is skipped.
  const Operator4 j = Entangler(gamma);
  const Operator4 local = Kron2(ua, ub);
  std::array<Complex, 4> entangled{};
  for (std::size_t r = 0; r < 4; ++r) entangled[r] = j(r, 0);
  std::array<Complex, 4> moved{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) moved[r] += local(r, c) * entangled[c];
  std::array<Complex, 4> out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r] += std::conj(j(c, r)) * moved[c];
  return TwoQubitState(out);
}

Outcome OutcomeFromProbabilities(const Probabilities& probs,
                                 const Payoffs& payoffs) {
  const auto& [cc, cd, dc, dd] = probs;
  Outcome out;
  out.probs = probs;
  out.payoff_a = payoffs.reward * cc + payoffs.sucker * cd +
                 payoffs.temptation * dc + payoffs.punishment * dd;
  out.payoff_b = payoffs.reward * cc + payoffs.temptation * cd +
                 payoffs.sucker * dc + payoffs.punishment * dd;
  return out;
}

Outcome PlayOperators(const Operator2& ua, const Operator2& ub,
                      const GameConfig& config) {
  config.Validate();
  const TwoQubitState psi = FinalState(ua, ub, config.gamma);
  return OutcomeFromProbabilities(OutcomeProbabilities(psi), config.payoffs);
}

Outcome Play(const StrategySpec& a, const StrategySpec& b,
             const GameConfig& config) {
  return PlayOperators(StrategyOperator(a), StrategyOperator(b), config);
}

PayoffPair ClosedFormPayoffs(double gamma, double theta) {
  RequireRange(gamma, 0.0, kPi / 2, "gamma");
  RequireRange(theta, 0.0, kPi, "theta");
  const double cg2 = std::cos(gamma) * std::cos(gamma);
  const double sg = std::sin(gamma);
  const double sg2 = sg * sg;
  const double ct = std::cos(theta), st = std::sin(theta);
  return {
      (21.0 + cg2 * (-3.0 + 14.0 * ct) + 3.0 * sg2 - 16.0 * sg * st) / 8.0,
      (11.0 + cg2 * (7.0 - 6.0 * ct) - 7.0 * sg2 + 4.0 * sg * st) / 8.0,
  };
}

PayoffPair ErroneousClosedForm(double theta) {
  RequireRange(theta, 0.0, kPi, "theta");
  return {3.0 + 2.0 * std::sin(theta), 0.5 * (1.0 - std::sin(theta))};
}

double MiracleGap(double theta) {
  const PayoffPair p = ClosedFormPayoffs(kPi / 2, theta);
  return p.a - p.b;
}

}  // namespace qpd
