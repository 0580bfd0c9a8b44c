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

#ifndef QPD_ANALYSIS_HPP_
#define QPD_ANALYSIS_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "qpd/optimize.hpp"
#include "qpd/protocol.hpp"

namespace qpd {

// Payoff differences below this are ties in best-response, dominance and
// equilibrium checks. Table entries are exact halves, so this only absorbs
// rounding.
inline constexpr double kPayoffTieTolerance = 1e-9;

class Bimatrix {
 public:
  Bimatrix(std::vector<StrategySpec> rows, std::vector<StrategySpec> cols,
           std::vector<std::vector<PayoffPair>> cells);

  const std::vector<StrategySpec>& row_labels() const { return rows_; }
  const std::vector<StrategySpec>& col_labels() const { return cols_; }
  const std::vector<std::vector<PayoffPair>>& cells() const { return cells_; }

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_.size(); }
  const PayoffPair& cell(std::size_t row, std::size_t col) const;
  double payoff(Player player, std::size_t row, std::size_t col) const;

  // Strategies available to `player`: rows for Alice, columns for Bob.
  std::size_t num_strategies(Player player) const;

  friend bool operator==(const Bimatrix&, const Bimatrix&) = default;

 private:
  std::vector<StrategySpec> rows_;
  std::vector<StrategySpec> cols_;
  std::vector<std::vector<PayoffPair>> cells_;
};

Bimatrix BuildBimatrix(const std::vector<StrategySpec>& rows,
                       const std::vector<StrategySpec>& cols,
                       const GameConfig& config);

enum class TableScheme { kClassical, kTwoParam, kThreeParam };

// Row and column strategies of the reference tables. kThreeParam uses the
// M3 calibrated for `config`.
std::vector<StrategySpec> StandardRows(TableScheme scheme,
                                       const GameConfig& config);
std::vector<StrategySpec> StandardCols(TableScheme scheme);
Bimatrix BuildStandardTable(TableScheme scheme, const GameConfig& config);

// Every strategy of `player` maximizing their payoff against the opponent's
// strategy `opponent_index`, ascending. Throws RangeError on a bad index.
std::vector<std::size_t> BestResponseSet(const Bimatrix& table, Player player,
                                         std::size_t opponent_index);

struct DominantStrategy {
  std::size_t index = 0;
  bool strict = false;
  friend bool operator==(const DominantStrategy&,
                         const DominantStrategy&) = default;
};

// Strategies that are a best response to every opponent choice.
std::vector<DominantStrategy> DominantStrategies(const Bimatrix& table,
                                                 Player player);

struct NashCell {
  std::size_t row = 0;
  std::size_t col = 0;
  bool strict = false;
  friend bool operator==(const NashCell&, const NashCell&) = default;
};

// True iff neither player gains more than the tie tolerance by deviating.
bool IsPureNash(const Bimatrix& table, std::size_t row, std::size_t col);
std::vector<NashCell> PureNash(const Bimatrix& table);

enum class StrategyFamily { kClassicalTheta, kParam2, kParam3 };

// Parameter bounds of a family, in the order theta, phi / theta, alpha, beta.
std::vector<Interval> FamilyBounds(StrategyFamily family);
StrategySpec FamilyPoint(StrategyFamily family, std::span<const double> params);

// Best response of `side` in `family` to the fixed opponent. Grid of grid_n
// points per dimension, then golden refinement to 1e-6 in each parameter.
// Throws RangeError if grid_n < 8.
SearchResult BestResponseContinuous(const StrategySpec& fixed, Player side,
                                    StrategyFamily family,
                                    const GameConfig& config,
                                    std::size_t grid_n);

enum class ClosedFormVariant { kCorrected, kErroneous };

struct GridShape {
  std::size_t gamma_count = 101;
  std::size_t theta_count = 101;
};

struct VerificationReport {
  ClosedFormVariant variant = ClosedFormVariant::kCorrected;
  double tolerance = 0.0;
  double max_abs_deviation = 0.0;
  double worst_gamma = 0.0;
  double worst_theta = 0.0;
  GridShape grid_shape;
  bool passed = false;
};

// Compares a closed form against simulated play of the miracle move against
// U(theta, 0) over the uniform grid. The erroneous forms are defined only at
// gamma = pi/2, so for them the gamma axis collapses to that single line.
// `miracle` replaces Alice's operator, e.g. with a global-phase variant.
// Uses the default payoffs (3, 0, 5, 1), for which the closed forms hold.
VerificationReport VerifyClosedForm(GridShape grid, double tol,
                                    ClosedFormVariant variant,
                                    const std::optional<Operator2>& miracle = {});

// Largest component deviation at a single point.
double ClosedFormDeviationAt(double gamma, double theta,
                             ClosedFormVariant variant);

struct RefutationReport {
  GameConfig config;
  SearchResult min_payoff_a;  // argmax[0] is Bob's theta
  SearchResult max_payoff_b;
  SearchResult min_gap;       // min over theta of $A - $B
  bool claim_a_at_least_reward = false;
  bool claim_b_at_most_half = false;
};

// Tests the claim that the miracle move secures Alice at least r and leaves
// classical Bob at most 1/2.
RefutationReport BuildRefutationReport(const GameConfig& config);

struct CalibrationResult {
  Param3 spec;                  // canonical, snapped to multiples of pi/4
  Param3 raw;                   // refined value before snapping
  double max_deviation = 0.0;   // of `spec` against the target row
  std::vector<Param3> solutions;  // every distinct matching parameter point
  std::size_t equivalence_classes = 0;  // solutions modulo global phase
};

// Target row of the 3-parameter miracle move against (C, D, E).
std::vector<PayoffPair> M3TargetRow();

// Finds the 3-parameter operator whose row against (C, D, E) matches the
// target within tol. Throws CalibrationError when nothing matches or tol is
// below 1e-9.
CalibrationResult CalibrateM3(const GameConfig& config, double tol = 1e-9);

enum class SweepVariable { kGamma, kThetaOfB };

struct SweepRecord {
  double value = 0.0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
};

// Uniform sweep over gamma in [0, pi/2] or Bob's theta in [0, pi]. For theta
// sweeps Bob's strategy is taken in parametric form. Throws RangeError if
// grid < 2.
std::vector<SweepRecord> Sweep(const StrategySpec& a, const StrategySpec& b,
                               SweepVariable variable, std::size_t grid,
                               const GameConfig& config);

}  // namespace qpd

#endif  // QPD_ANALYSIS_HPP_
