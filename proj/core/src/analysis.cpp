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

#include "qpd/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "qpd/errors.hpp"

namespace qpd {
namespace {

double Pick(const PayoffPair& p, Player player) {
  return player == Player::kAlice ? p.a : p.b;
}

// Uniform grid over [lo, hi] whose last point is exactly hi.
double GridPoint(double lo, double hi, std::size_t i, std::size_t n) {
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double RowDeviation(const std::vector<PayoffPair>& got,
                    const std::vector<PayoffPair>& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    worst = std::max({worst, std::abs(got[i].a - want[i].a),
                      std::abs(got[i].b - want[i].b)});
  }
  return worst;
}

}  // namespace

Bimatrix::Bimatrix(std::vector<StrategySpec> rows,
                   std::vector<StrategySpec> cols,
                   std::vector<std::vector<PayoffPair>> cells)
    : rows_(std::move(rows)), cols_(std::move(cols)), cells_(std::move(cells)) {
  if (cells_.size() != rows_.size()) {
    throw RangeError("bimatrix: row count does not match labels");
  }
  for (const auto& row : cells_) {
    if (row.size() != cols_.size()) {
      throw RangeError("bimatrix: column count does not match labels");
    }
  }
}

const PayoffPair& Bimatrix::cell(std::size_t row, std::size_t col) const {
  if (row >= num_rows() || col >= num_cols()) {
    throw RangeError("bimatrix: cell index out of range");
  }
  return cells_[row][col];
}

double Bimatrix::payoff(Player player, std::size_t row, std::size_t col) const {
  return Pick(cell(row, col), player);
}

std::size_t Bimatrix::num_strategies(Player player) const {
  return player == Player::kAlice ? num_rows() : num_cols();
}

Bimatrix BuildBimatrix(const std::vector<StrategySpec>& rows,
                       const std::vector<StrategySpec>& cols,
                       const GameConfig& config) {
  if (rows.empty() || cols.empty()) {
    throw RangeError("build_bimatrix: label sequences must be nonempty");
  }
  std::vector<std::vector<PayoffPair>> cells(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cells[i].reserve(cols.size());
    for (const auto& col : cols) {
      cells[i].push_back(Play(rows[i], col, config).payoffs());
    }
  }
  return Bimatrix(rows, cols, std::move(cells));
}

std::vector<StrategySpec> StandardRows(TableScheme scheme,
                                       const GameConfig& config) {
  switch (scheme) {
    case TableScheme::kClassical:
      return {NamedMove::kC, NamedMove::kD};
    case TableScheme::kTwoParam:
      return {NamedMove::kC, NamedMove::kD, NamedMove::kQ, NamedMove::kM2};
    case TableScheme::kThreeParam: {
      const CalibrationResult cal = CalibrateM3(config);
      StrategySpec m3 = cal.spec;
      if (cal.spec == kCalibratedM3) m3 = NamedMove::kM3;
      return {NamedMove::kC, NamedMove::kD, m3};
    }
  }
  throw RangeError("unknown table scheme");
}

std::vector<StrategySpec> StandardCols(TableScheme scheme) {
  if (scheme == TableScheme::kClassical) return {NamedMove::kC, NamedMove::kD};
  return {NamedMove::kC, NamedMove::kD, NamedMove::kE};
}

Bimatrix BuildStandardTable(TableScheme scheme, const GameConfig& config) {
  return BuildBimatrix(StandardRows(scheme, config), StandardCols(scheme),
                       config);
}

std::vector<std::size_t> BestResponseSet(const Bimatrix& table, Player player,
                                         std::size_t opponent_index) {
  const Player opponent =
      player == Player::kAlice ? Player::kBob : Player::kAlice;
  if (opponent_index >= table.num_strategies(opponent)) {
    throw RangeError("best_response_set: opponent index out of range");
  }
  auto value = [&](std::size_t own) {
    return player == Player::kAlice ? table.payoff(player, own, opponent_index)
                                    : table.payoff(player, opponent_index, own);
  };
  const std::size_t n = table.num_strategies(player);
  double best = value(0);
  for (std::size_t k = 1; k < n; ++k) best = std::max(best, value(k));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (value(k) >= best - kPayoffTieTolerance) out.push_back(k);
  }
  return out;
}

std::vector<DominantStrategy> DominantStrategies(const Bimatrix& table,
                                                 Player player) {
  const Player opponent =
      player == Player::kAlice ? Player::kBob : Player::kAlice;
  const std::size_t n = table.num_strategies(player);
  const std::size_t m = table.num_strategies(opponent);
  auto value = [&](std::size_t own, std::size_t other) {
    return player == Player::kAlice ? table.payoff(player, own, other)
                                    : table.payoff(player, other, own);
  };
  std::vector<DominantStrategy> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool weak = true;
    bool strict = true;
    for (std::size_t j = 0; j < m && weak; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double diff = value(i, j) - value(k, j);
        if (diff < -kPayoffTieTolerance) weak = false;
        if (diff <= kPayoffTieTolerance) strict = false;
      }
    }
    if (weak) out.push_back({i, strict});
  }
  return out;
}

bool IsPureNash(const Bimatrix& table, std::size_t row, std::size_t col) {
  const PayoffPair& here = table.cell(row, col);
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    if (table.cell(r, col).a > here.a + kPayoffTieTolerance) return false;
  }
  for (std::size_t c = 0; c < table.num_cols(); ++c) {
    if (table.cell(row, c).b > here.b + kPayoffTieTolerance) return false;
  }
  return true;
}

std::vector<NashCell> PureNash(const Bimatrix& table) {
  std::vector<NashCell> out;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    for (std::size_t c = 0; c < table.num_cols(); ++c) {
      if (!IsPureNash(table, r, c)) continue;
      const PayoffPair& here = table.cell(r, c);
      bool strict = true;
      for (std::size_t k = 0; k < table.num_rows(); ++k) {
        if (k != r && table.cell(k, c).a >= here.a - kPayoffTieTolerance) {
          strict = false;
        }
      }
      for (std::size_t k = 0; k < table.num_cols(); ++k) {
        if (k != c && table.cell(r, k).b >= here.b - kPayoffTieTolerance) {
          strict = false;
        }
      }
      out.push_back({r, c, strict});
    }
  }
  return out;
}

std::vector<Interval> FamilyBounds(StrategyFamily family) {
  switch (family) {
    case StrategyFamily::kClassicalTheta:
      return {{0.0, kPi}};
    case StrategyFamily::kParam2:
      return {{0.0, kPi}, {0.0, kPi / 2}};
    case StrategyFamily::kParam3:
      return {{0.0, kPi}, {-kPi, kPi}, {-kPi, kPi}};
  }
  throw RangeError("unknown strategy family");
}

StrategySpec FamilyPoint(StrategyFamily family,
                         std::span<const double> params) {
  switch (family) {
    case StrategyFamily::kClassicalTheta:
      return Param2{params[0], 0.0};
    case StrategyFamily::kParam2:
      return Param2{params[0], params[1]};
    case StrategyFamily::kParam3:
      return Param3{params[0], params[1], params[2]};
  }
  throw RangeError("unknown strategy family");
}

SearchResult BestResponseContinuous(const StrategySpec& fixed, Player side,
                                    StrategyFamily family,
                                    const GameConfig& config,
                                    std::size_t grid_n) {
  if (grid_n < 8) throw RangeError("best_response_continuous: grid_n < 8");
  config.Validate();
  const Operator2 fixed_op = StrategyOperator(fixed);
  Objective payoff = [&](std::span<const double> x) {
    const Operator2 own = StrategyOperator(FamilyPoint(family, x));
    return side == Player::kAlice
               ? PlayOperators(own, fixed_op, config).payoff_a
               : PlayOperators(fixed_op, own, config).payoff_b;
  };
  const std::vector<Interval> bounds = FamilyBounds(family);
  SearchOptions options;
  options.grid_n = grid_n;
  return GridRefineSearch(payoff, bounds, Sense::kMaximize, options);
}

double ClosedFormDeviationAt(double gamma, double theta,
                             ClosedFormVariant variant) {
  GameConfig config;
  config.gamma = gamma;
  const Outcome sim = PlayOperators(StrategyOperator(NamedMove::kM2),
                                    TwoParamOperator(theta, 0.0), config);
  const PayoffPair formula = variant == ClosedFormVariant::kCorrected
                                 ? ClosedFormPayoffs(gamma, theta)
                                 : ErroneousClosedForm(theta);
  return std::max(std::abs(formula.a - sim.payoff_a),
                  std::abs(formula.b - sim.payoff_b));
}

VerificationReport VerifyClosedForm(GridShape grid, double tol,
                                    ClosedFormVariant variant,
                                    const std::optional<Operator2>& miracle) {
  if (grid.gamma_count < 2 || grid.theta_count < 2) {
    throw RangeError("verify_closed_form: grid counts must be >= 2");
  }
  const Operator2 alice = miracle.value_or(StrategyOperator(NamedMove::kM2));
  VerificationReport report;
  report.variant = variant;
  report.tolerance = tol;
  report.grid_shape = grid;
  if (variant == ClosedFormVariant::kErroneous) report.grid_shape.gamma_count = 1;

  const std::size_t gamma_count = report.grid_shape.gamma_count;
  for (std::size_t gi = 0; gi < gamma_count; ++gi) {
    const double gamma = variant == ClosedFormVariant::kErroneous
                             ? kPi / 2
                             : GridPoint(0.0, kPi / 2, gi, gamma_count);
    GameConfig config;
    config.gamma = gamma;
    for (std::size_t ti = 0; ti < grid.theta_count; ++ti) {
      const double theta = GridPoint(0.0, kPi, ti, grid.theta_count);
      const Outcome sim =
          PlayOperators(alice, TwoParamOperator(theta, 0.0), config);
      const PayoffPair formula = variant == ClosedFormVariant::kCorrected
                                     ? ClosedFormPayoffs(gamma, theta)
                                     : ErroneousClosedForm(theta);
      const double dev = std::max(std::abs(formula.a - sim.payoff_a),
                                  std::abs(formula.b - sim.payoff_b));
      if (dev > report.max_abs_deviation) {
        report.max_abs_deviation = dev;
        report.worst_gamma = gamma;
        report.worst_theta = theta;
      }
    }
  }
  report.passed = report.max_abs_deviation <= tol;
  return report;
}

RefutationReport BuildRefutationReport(const GameConfig& config) {
  config.Validate();
  constexpr std::size_t kGrid = 65;
  const Operator2 miracle = StrategyOperator(NamedMove::kM2);
  const std::vector<Interval> theta_range =
      FamilyBounds(StrategyFamily::kClassicalTheta);
  SearchOptions options;
  options.grid_n = kGrid;

  auto outcome = [&](std::span<const double> x) {
    return PlayOperators(miracle, TwoParamOperator(x[0], 0.0), config);
  };

  RefutationReport report;
  report.config = config;
  report.min_payoff_a = GridRefineSearch(
      [&](std::span<const double> x) { return outcome(x).payoff_a; },
      theta_range, Sense::kMinimize, options);
  report.max_payoff_b =
      BestResponseContinuous(NamedMove::kM2, Player::kBob,
                             StrategyFamily::kClassicalTheta, config, kGrid);
  report.min_gap = GridRefineSearch(
      [&](std::span<const double> x) {
        const Outcome o = outcome(x);
        return o.payoff_a - o.payoff_b;
      },
      theta_range, Sense::kMinimize, options);
  report.claim_a_at_least_reward =
      report.min_payoff_a.value >= config.payoffs.reward - kPayoffTieTolerance;
  report.claim_b_at_most_half =
      report.max_payoff_b.value <= 0.5 + kPayoffTieTolerance;
  return report;
}

std::vector<PayoffPair> M3TargetRow() {
  return {{1.5, 4.0}, {1.5, 4.0}, {3.0, 3.0}};
}

namespace {

using Triple = std::array<double, 3>;

Param3 ToParam3(const Triple& x) { return {x[0], x[1], x[2]}; }

std::vector<PayoffPair> M3Row(const Param3& p, const GameConfig& config) {
  const Operator2 alice = ThreeParamOperator(p.theta, p.alpha, p.beta);
  std::vector<PayoffPair> row;
  for (NamedMove bob : {NamedMove::kC, NamedMove::kD, NamedMove::kE}) {
    row.push_back(PlayOperators(alice, StrategyOperator(bob), config).payoffs());
  }
  return row;
}

double SumSquares(const std::vector<PayoffPair>& got,
                  const std::vector<PayoffPair>& want) {
  double s = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    s += (got[i].a - want[i].a) * (got[i].a - want[i].a) +
         (got[i].b - want[i].b) * (got[i].b - want[i].b);
  }
  return s;
}

// Nearest multiple of pi/4 when within 1e-6, otherwise unchanged.
double SnapQuarterPi(double x) {
  const double k = std::round(x / (kPi / 4));
  const double snapped = k * (kPi / 4) + 0.0;  // no negative zero
  return std::abs(snapped - x) <= 1e-6 ? snapped : x;
}

bool SameUpToPhase(const Param3& p, const Param3& q) {
  const Operator2 u = ThreeParamOperator(p.theta, p.alpha, p.beta);
  const Operator2 v = ThreeParamOperator(q.theta, q.alpha, q.beta);
  const Operator2 w = u.Adjoint() * v;
  return std::abs(std::abs(w(0, 0) + w(1, 1)) - 2.0) <= 1e-9;
}

// Preference inside one global-phase class: small |alpha|, small |beta|,
// then non-negative signs.
auto RepresentativeKey(const Param3& p) {
  return std::make_tuple(p.theta, std::abs(p.alpha), std::abs(p.beta),
                         p.alpha < 0.0, p.beta < 0.0);
}

}  // namespace

CalibrationResult CalibrateM3(const GameConfig& config, double tol) {
  if (!(tol >= 1e-9)) {
    throw CalibrationError("calibrate_m3: tolerance " + std::to_string(tol) +
                           " is below the attainable 1e-9");
  }
  config.Validate();
  const std::vector<PayoffPair> target = M3TargetRow();
  const std::vector<Interval> bounds = FamilyBounds(StrategyFamily::kParam3);
  constexpr std::size_t kThetaSteps = 24;  // resolution pi/24
  constexpr std::size_t kPhaseSteps = 48;
  constexpr double kBasin = 0.05;

  auto sumsq = [&](const Triple& x) {
    return SumSquares(M3Row(ToParam3(x), config), target);
  };

  std::vector<Param3> solutions;
  std::vector<Param3> raw_solutions;
  for (std::size_t i = 0; i <= kThetaSteps; ++i) {
    for (std::size_t j = 0; j <= kPhaseSteps; ++j) {
      for (std::size_t k = 0; k <= kPhaseSteps; ++k) {
        Triple x{GridPoint(0.0, kPi, i, kThetaSteps + 1),
                 GridPoint(-kPi, kPi, j, kPhaseSteps + 1),
                 GridPoint(-kPi, kPi, k, kPhaseSteps + 1)};
        if (RowDeviation(M3Row(ToParam3(x), config), target) > kBasin) continue;

        // Coordinate refinement of the squared error inside the grid cell.
        double radius = kPi / 48;
        double current = sumsq(x);
        for (int sweep = 0; sweep < 40 && radius > 1e-9; ++sweep) {
          for (std::size_t d = 0; d < 3; ++d) {
            Triple probe = x;
            auto line = [&](double t) {
              probe[d] = t;
              return sumsq(probe);
            };
            const double lo = std::max(bounds[d].lo, x[d] - radius);
            const double hi = std::min(bounds[d].hi, x[d] + radius);
            const double t = GoldenSection(line, lo, hi, 1e-10, Sense::kMinimize);
            probe[d] = t;
            const double v = sumsq(probe);
            if (v < current) {
              current = v;
              x[d] = t;
            }
          }
          radius *= 0.5;
        }

        const Param3 raw = ToParam3(x);
        const Param3 snapped{SnapQuarterPi(raw.theta), SnapQuarterPi(raw.alpha),
                             SnapQuarterPi(raw.beta)};
        Param3 chosen = snapped;
        if (RowDeviation(M3Row(snapped, config), target) > tol) chosen = raw;
        if (RowDeviation(M3Row(chosen, config), target) > tol) continue;

        const bool seen = std::any_of(
            solutions.begin(), solutions.end(), [&](const Param3& s) {
              return std::abs(s.theta - chosen.theta) <= 1e-6 &&
                     std::abs(s.alpha - chosen.alpha) <= 1e-6 &&
                     std::abs(s.beta - chosen.beta) <= 1e-6;
            });
        if (!seen) {
          solutions.push_back(chosen);
          raw_solutions.push_back(raw);
        }
      }
    }
  }

  if (solutions.empty()) {
    throw CalibrationError(
        "calibrate_m3: no 3-parameter operator reproduces the target row "
        "within tolerance " + std::to_string(tol));
  }

  // Group into global-phase classes, pick each class's representative, then
  // order classes by (theta, alpha, beta) of their representative.
  std::vector<std::size_t> representatives;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) {
      return SameUpToPhase(solutions[c.front()], solutions[s]);
    });
    if (it == classes.end()) {
      classes.push_back({s});
    } else {
      it->push_back(s);
    }
  }
  for (const auto& members : classes) {
    representatives.push_back(*std::min_element(
        members.begin(), members.end(), [&](std::size_t l, std::size_t r) {
          return RepresentativeKey(solutions[l]) <
                 RepresentativeKey(solutions[r]);
        }));
  }
  const std::size_t best = *std::min_element(
      representatives.begin(), representatives.end(),
      [&](std::size_t l, std::size_t r) {
        const Param3& a = solutions[l];
        const Param3& b = solutions[r];
        return std::tie(a.theta, a.alpha, a.beta) <
               std::tie(b.theta, b.alpha, b.beta);
      });

  CalibrationResult result;
  result.spec = solutions[best];
  result.raw = raw_solutions[best];
  result.max_deviation = RowDeviation(M3Row(result.spec, config), target);
  result.solutions = std::move(solutions);
  result.equivalence_classes = classes.size();
  return result;
}

std::vector<SweepRecord> Sweep(const StrategySpec& a, const StrategySpec& b,
                               SweepVariable variable, std::size_t grid,
                               const GameConfig& config) {
  if (grid < 2) throw RangeError("sweep: grid must be >= 2");
  std::vector<SweepRecord> out;
  out.reserve(grid);
  const StrategySpec bob_param = AsParametric(b);
  for (std::size_t i = 0; i < grid; ++i) {
    GameConfig cfg = config;
    StrategySpec bob = b;
    double value = 0.0;
    if (variable == SweepVariable::kGamma) {
      value = GridPoint(0.0, kPi / 2, i, grid);
      cfg.gamma = value;
    } else {
      value = GridPoint(0.0, kPi, i, grid);
      bob = bob_param;
      if (auto* p2 = std::get_if<Param2>(&bob)) p2->theta = value;
      if (auto* p3 = std::get_if<Param3>(&bob)) p3->theta = value;
    }
    const Outcome o = Play(a, bob, cfg);
    out.push_back({value, o.payoff_a, o.payoff_b});
  }
  return out;
}

}  // namespace qpd
