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

#ifndef QPD_TESTS_ORACLES_HPP_
#define QPD_TESTS_ORACLES_HPP_

// Test-only reference computations. Nothing here calls the code paths it is
// used to check: the entangler is built from a power series, separable games
// from independent coins, iterated games by enumerating every history.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qpd/iterated.hpp"
#include "qpd/protocol.hpp"

namespace qpd::testing {

using Mat4 = std::array<std::array<std::complex<double>, 4>, 4>;

inline Mat4 Mul(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < 4; ++c) out[r][c] += a[r][k] * b[k][c];
  return out;
}

// exp(i * gamma / 2 * D(x)D) by Taylor series, with D = [[0,1],[-1,0]]
// written out by hand.
inline Mat4 EntanglerBySeries(double gamma) {
  const double d[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};
  Mat4 dd{};
  for (int ar = 0; ar < 2; ++ar)
    for (int ac = 0; ac < 2; ++ac)
      for (int br = 0; br < 2; ++br)
        for (int bc = 0; bc < 2; ++bc) dd[2 * ar + br][2 * ac + bc] = d[ar][ac] * d[br][bc];
  Mat4 generator{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) generator[r][c] = std::complex<double>(0.0, gamma / 2) * dd[r][c];
  Mat4 term{}, sum{};
  for (int i = 0; i < 4; ++i) term[i][i] = sum[i][i] = 1.0;
  for (int k = 1; k < 40; ++k) {
    term = Mul(term, generator);
    for (auto& row : term)
      for (auto& e : row) e /= static_cast<double>(k);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) sum[r][c] += term[r][c];
  }
  return sum;
}

// gamma = 0: each player is an independent coin with P(D) = |<D|U|C>|^2.
inline PayoffPair SeparablePayoffs(const Operator2& ua, const Operator2& ub,
                                   const Payoffs& p) {
  const double qa = std::norm(ua(1, 0));
  const double qb = std::norm(ub(1, 0));
  const double cc = (1 - qa) * (1 - qb), cd = (1 - qa) * qb, dc = qa * (1 - qb),
               dd = qa * qb;
  return {p.reward * cc + p.sucker * cd + p.temptation * dc + p.punishment * dd,
          p.reward * cc + p.temptation * cd + p.sucker * dc + p.punishment * dd};
}

struct HistoryMoments {
  std::vector<PayoffPair> per_round_mean;
  PayoffPair average_variance;  // variance of the N-round average
};

// Enumerates all 4^N outcome histories. Outcome probabilities of each round
// come from Play() on the moves each policy picks given the previous outcome.
inline HistoryMoments EnumerateHistories(const Policy& alice, const Policy& bob,
                                         const GameConfig& config, int rounds) {
  HistoryMoments m;
  m.per_round_mean.assign(rounds, {});
  double sum_a = 0, sum_b = 0, sq_a = 0, sq_b = 0;
  const Payoffs& p = config.payoffs;
  const std::array<PayoffPair, 4> reward{PayoffPair{p.reward, p.reward},
                                         {p.sucker, p.temptation},
                                         {p.temptation, p.sucker},
                                         {p.punishment, p.punishment}};
  std::function<void(int, std::optional<Outcome2>, double, double, double)> walk =
      [&](int t, std::optional<Outcome2> last, double weight, double acc_a, double acc_b) {
        if (t == rounds) {
          sum_a += weight * acc_a;
          sum_b += weight * acc_b;
          sq_a += weight * acc_a * acc_a;
          sq_b += weight * acc_b * acc_b;
          return;
        }
        const Outcome o = Play(alice.NextMove(Player::kAlice, last),
                               bob.NextMove(Player::kBob, last), config);
        for (std::size_t y = 0; y < 4; ++y) {
          const double w = weight * o.probs[y];
          if (w == 0.0) continue;
          m.per_round_mean[t].a += w * reward[y].a;
          m.per_round_mean[t].b += w * reward[y].b;
          walk(t + 1, static_cast<Outcome2>(y), w, acc_a + reward[y].a, acc_b + reward[y].b);
        }
      };
  walk(0, std::nullopt, 1.0, 0.0, 0.0);
  const double n2 = static_cast<double>(rounds) * rounds;
  m.average_variance = {(sq_a - sum_a * sum_a) / n2, (sq_b - sum_b * sum_b) / n2};
  return m;
}

// Deterministic generator of SU(2) points and phases for property tests.
class SampleSource {
 public:
  explicit SampleSource(std::uint64_t seed) : rng_(seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  Param2 AnyParam2() { return {Uniform(0, kPi), Uniform(0, kPi / 2)}; }
  Param3 AnyParam3() {
    return {Uniform(0, kPi), Uniform(-kPi, kPi), Uniform(-kPi, kPi)};
  }
  StrategySpec AnyStrategy() {
    switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
      case 0: return static_cast<NamedMove>(std::uniform_int_distribution<int>(0, 5)(rng_));
      case 1: return AnyParam2();
      default: return AnyParam3();
    }
  }
  TwoQubitState AnyState() {
    std::array<Complex, 4> a{};
    double norm = 0;
    for (auto& x : a) {
      x = {std::normal_distribution<double>()(rng_), std::normal_distribution<double>()(rng_)};
      norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    return TwoQubitState(a);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qpd::testing

#endif  // QPD_TESTS_ORACLES_HPP_
