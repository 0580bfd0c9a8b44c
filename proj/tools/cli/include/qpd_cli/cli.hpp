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

#ifndef QPD_CLI_CLI_HPP_
#define QPD_CLI_CLI_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpd/analysis.hpp"
#include "qpd/errors.hpp"
#include "qpd/iterated.hpp"
#include "qpd/protocol.hpp"

namespace qpd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCalibration = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

// Thrown for --help; carries the help text, which is printed with exit 0.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

enum class Command {
  kPlay,
  kTable,
  kVerify,
  kNash,
  kBestResponse,
  kTournament,
  kSweep,
  kCalibrate,
};

enum class Format { kPretty, kCsv, kJson };

struct PlayArgs {
  StrategySpec alice = NamedMove::kC;
  StrategySpec bob = NamedMove::kC;
};

struct TableArgs {
  TableScheme scheme = TableScheme::kTwoParam;
  std::optional<std::vector<StrategySpec>> rows;
  std::optional<std::vector<StrategySpec>> cols;
};

struct VerifyArgs {
  GridShape grid;
  double tol = 1e-10;
  ClosedFormVariant formula = ClosedFormVariant::kCorrected;
  bool refutation = false;
};

struct BestResponseArgs {
  StrategySpec fixed = NamedMove::kM2;
  Player side = Player::kBob;
  StrategyFamily family = StrategyFamily::kClassicalTheta;
  std::size_t grid = 33;
};

struct TournamentArgs {
  std::vector<Policy> field;
  std::size_t rounds = 1000;
  RunMode mode = RunMode::kExpected;
  std::uint64_t seed = 0;
};

struct SweepArgs {
  StrategySpec alice = NamedMove::kM2;
  StrategySpec bob = NamedMove::kE;
  SweepVariable variable = SweepVariable::kGamma;
  std::size_t grid = 11;
};

struct CalibrateArgs {
  double tol = 1e-9;
};

using CommandArgs =
    std::variant<PlayArgs, TableArgs, VerifyArgs, BestResponseArgs,
                 TournamentArgs, SweepArgs, CalibrateArgs>;

struct Invocation {
  Command command = Command::kPlay;
  GameConfig config;
  Format format = Format::kPretty;
  CommandArgs args;
  std::map<std::string, std::string> options;  // flags as given, without "--"
};

// Angles: decimal radians, or [-][k*]pi[/n] with integers k, n.
double ParseAngle(const std::string& text);

// C, D, Q, M (or M2), E, M3, U2(theta,phi), U3(theta,alpha,beta).
StrategySpec ParseStrategy(const std::string& text);

// always:SPEC (or Always-SPEC), tft / TitForTat, tft:SPEC for a custom opener.
Policy ParsePolicy(const std::string& text);

// Splits on commas that are not inside parentheses.
std::vector<std::string> SplitTopLevel(const std::string& text);

// Parses argv (argv[0] is the program name). Throws UsageError or
// HelpRequested.
Invocation ParseInvocation(const std::vector<std::string>& argv);

struct ExecutionResult {
  std::string output;       // stdout
  std::string diagnostics;  // stderr
  int exit_code = kExitOk;
};

ExecutionResult Execute(const Invocation& invocation);

// parse + execute with every error mapped to its exit code.
ExecutionResult RunCommandLine(const std::vector<std::string>& argv);

}  // namespace qpd::cli

#endif  // QPD_CLI_CLI_HPP_
