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

#ifndef QPD_CLI_RENDER_HPP_
#define QPD_CLI_RENDER_HPP_

// Text renderings of analysis results. CSV and pretty output format numbers
// to 12 significant digits with trailing zeros trimmed; JSON keeps full
// double precision so that it parses back to the same values.

#include <string>
#include <vector>

#include <json.hpp>

#include "qpd/analysis.hpp"
#include "qpd/iterated.hpp"
#include "qpd_cli/cli.hpp"

namespace qpd::cli {

using Json = nlohmann::ordered_json;

// %.12g, trailing zeros trimmed; magnitudes below 1e-12 print as 0.
std::string FormatNumber(double value);

Json ToJson(const StrategySpec& spec);
StrategySpec StrategyFromJson(const Json& j);
Json ToJson(const PayoffPair& p);
PayoffPair PayoffPairFromJson(const Json& j);
Json ToJson(const Outcome& o);
Outcome OutcomeFromJson(const Json& j);
Json ToJson(const Bimatrix& t);
Bimatrix BimatrixFromJson(const Json& j);
Json ToJson(const TournamentResult& r);
TournamentResult TournamentResultFromJson(const Json& j);
Json ToJson(const SearchResult& r);
SearchResult SearchResultFromJson(const Json& j);
Json ToJson(const GameConfig& c);

std::string RenderPayoffPair(const PayoffPair& p, Format format);
std::string RenderOutcome(const StrategySpec& alice, const StrategySpec& bob,
                          const GameConfig& config, const Outcome& o,
                          Format format);
std::string RenderBimatrix(const Bimatrix& t, const GameConfig& config,
                           Format format);
std::string RenderVerification(const VerificationReport& r, Format format);
std::string RenderRefutation(const RefutationReport& r, Format format);
std::string RenderEquilibria(const Bimatrix& t, const GameConfig& config,
                             Format format);
std::string RenderBestResponse(const StrategySpec& fixed, Player side,
                               StrategyFamily family, const GameConfig& config,
                               const SearchResult& r, Format format);
std::string RenderRoundRobin(const std::vector<Policy>& field,
                             const RoundRobinResult& r,
                             const TournamentArgs& args,
                             const GameConfig& config, Format format);
std::string RenderSweep(const StrategySpec& alice, const StrategySpec& bob,
                        SweepVariable variable,
                        const std::vector<SweepRecord>& records,
                        const GameConfig& config, Format format);
std::string RenderCalibration(const CalibrationResult& r,
                              const GameConfig& config, Format format);

}  // namespace qpd::cli

#endif  // QPD_CLI_RENDER_HPP_
