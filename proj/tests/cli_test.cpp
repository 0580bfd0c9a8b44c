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

#include "qpd_cli/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include <gtest/gtest.h>

#include "qpd_cli/render.hpp"

namespace qpd::cli {
namespace {

ExecutionResult Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qpd");
  return RunCommandLine(args);
}

TEST(ParseAngle, Forms) {
  EXPECT_EQ(ParseAngle("pi"), kPi);
  EXPECT_EQ(ParseAngle("pi/2"), kPi / 2);
  EXPECT_EQ(ParseAngle("-pi/4"), -kPi / 4);
  EXPECT_EQ(ParseAngle("3*pi/4"), 3 * kPi / 4);
  EXPECT_EQ(ParseAngle("0.25"), 0.25);
  EXPECT_EQ(ParseAngle("-1e-3"), -1e-3);
  for (const char* bad : {"", "pix", "pi/0", "2pi", "1.5x", "pi/"}) {
    EXPECT_THROW(ParseAngle(bad), UsageError) << bad;
  }
}

TEST(ParseStrategy, Forms) {
  EXPECT_EQ(ParseStrategy("M"), StrategySpec(NamedMove::kM2));
  EXPECT_EQ(ParseStrategy("M2"), StrategySpec(NamedMove::kM2));
  EXPECT_EQ(ParseStrategy("M3"), StrategySpec(NamedMove::kM3));
  EXPECT_EQ(ParseStrategy("Q"), StrategySpec(NamedMove::kQ));
  EXPECT_EQ(ParseStrategy("U2(pi/2,0)"), StrategySpec(Param2{kPi / 2, 0}));
  EXPECT_EQ(ParseStrategy("U3(pi/2, 0, pi)"), StrategySpec(Param3{kPi / 2, 0, kPi}));
  for (const char* bad : {"Z", "U2(1)", "U3(1,2)", "U2(4,0)", "U2(1,0", "c"}) {
    EXPECT_THROW(ParseStrategy(bad), Error) << bad;
  }
}

TEST(SplitTopLevel, RespectsParentheses) {
  EXPECT_EQ(SplitTopLevel("C,U2(pi,0),U3(1,2,3),E"),
            (std::vector<std::string>{"C", "U2(pi,0)", "U3(1,2,3)", "E"}));
  EXPECT_EQ(SplitTopLevel("C"), std::vector<std::string>{"C"});
}

TEST(ParsePolicy, Forms) {
  EXPECT_EQ(ParsePolicy("always:M").label(), "Always-M2");
  EXPECT_EQ(ParsePolicy("Always-E").label(), "Always-E");
  EXPECT_EQ(ParsePolicy("tft").label(), "TitForTat");
  EXPECT_EQ(ParsePolicy("TitForTat").label(), "TitForTat");
  const Policy opener = ParsePolicy("tft:Q");
  EXPECT_EQ(opener.NextMove(Player::kAlice, std::nullopt), StrategySpec(NamedMove::kQ));
  EXPECT_THROW(ParsePolicy("grim"), UsageError);
  EXPECT_THROW(ParsePolicy("always:"), Error);
}

TEST(ParseInvocation, TableExample) {
  const Invocation inv =
      ParseInvocation({"qpd", "table", "--scheme", "2param", "--gamma", "pi/2", "--format", "csv"});
  EXPECT_EQ(inv.command, Command::kTable);
  EXPECT_EQ(inv.format, Format::kCsv);
  EXPECT_EQ(inv.config.gamma, kPi / 2);
  EXPECT_EQ(std::get<TableArgs>(inv.args).scheme, TableScheme::kTwoParam);
  EXPECT_EQ(inv.options.at("scheme"), "2param");
  EXPECT_EQ(inv.options.at("gamma"), "pi/2");
}

TEST(ParseInvocation, Defaults) {
  const Invocation inv = ParseInvocation({"qpd", "play"});
  EXPECT_EQ(inv.format, Format::kPretty);
  EXPECT_EQ(inv.config.gamma, kPi / 2);
  EXPECT_EQ(inv.config.payoffs, (Payoffs{3, 0, 5, 1}));
  const auto& a = std::get<PlayArgs>(inv.args);
  EXPECT_EQ(a.alice, StrategySpec(NamedMove::kC));
  const Invocation t = ParseInvocation({"qpd", "tournament"});
  EXPECT_EQ(std::get<TournamentArgs>(t.args).field.size(), 5u);
  EXPECT_EQ(std::get<TournamentArgs>(t.args).rounds, 1000u);
}

TEST(ParseInvocation, UsageErrors) {
  const std::vector<std::vector<std::string>> bad = {
      {"qpd"},
      {"qpd", "launch"},
      {"qpd", "play", "--alice"},
      {"qpd", "play", "--bogus", "1"},
      {"qpd", "play", "--format", "xml"},
      {"qpd", "play", "--payoffs", "3,0,5"},
      {"qpd", "verify", "--grid", "0x5"},
      {"qpd", "tournament", "--rounds", "-3"},
      {"qpd", "tournament", "--mode", "guess"},
      {"qpd", "best-response", "--side", "C"},
  };
  for (const auto& argv : bad) {
    EXPECT_THROW(ParseInvocation(argv), UsageError) << argv.back();
  }
}

TEST(ConfigFile, FlagsOverrideFileValues) {
  const auto path = std::filesystem::temp_directory_path() / "qpd_cli_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"gamma": "pi/4", "payoffs": {"r": 4, "s": 0, "t": 6, "p": 1}, "scheme": "classical"})";
  }
  Invocation inv = ParseInvocation({"qpd", "table", "--config", path.string()});
  EXPECT_EQ(inv.config.gamma, kPi / 4);
  EXPECT_EQ(inv.config.payoffs, (Payoffs{4, 0, 6, 1}));
  EXPECT_EQ(std::get<TableArgs>(inv.args).scheme, TableScheme::kClassical);
  inv = ParseInvocation({"qpd", "table", "--config", path.string(), "--gamma", "0",
                         "--scheme", "2param"});
  EXPECT_EQ(inv.config.gamma, 0.0);
  EXPECT_EQ(std::get<TableArgs>(inv.args).scheme, TableScheme::kTwoParam);
  {
    std::ofstream out(path);
    out << R"({"gama": 1})";
  }
  EXPECT_THROW(ParseInvocation({"qpd", "play", "--config", path.string()}), UsageError);
  std::filesystem::remove(path);
  EXPECT_THROW(ParseInvocation({"qpd", "play", "--config", path.string()}), UsageError);
}

TEST(ExitCodes, EachOutcome) {
  EXPECT_EQ(Invoke({"play", "--alice", "M", "--bob", "E"}).exit_code, kExitOk);
  EXPECT_EQ(Invoke({"play", "--help"}).exit_code, kExitOk);
  EXPECT_EQ(Invoke({"verify", "--grid", "21x21", "--tol", "1e-10"}).exit_code, kExitOk);
  EXPECT_EQ(Invoke({"verify", "--formula", "faintro", "--tol", "1e-10"}).exit_code,
            kExitVerifyFailed);
  EXPECT_EQ(Invoke({"verify", "--grid", "21x21", "--tol", "1e-300"}).exit_code,
            kExitVerifyFailed);
  EXPECT_EQ(Invoke({"play", "--gamma", "2.0"}).exit_code, kExitUsage);
  EXPECT_EQ(Invoke({"play", "--alice", "U2(9,0)"}).exit_code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).exit_code, kExitUsage);
  EXPECT_EQ(Invoke({"calibrate", "--tol", "0"}).exit_code, kExitCalibration);
  EXPECT_EQ(Invoke({"calibrate", "--gamma", "0"}).exit_code, kExitCalibration);
  EXPECT_EQ(Invoke({"table", "--scheme", "3param", "--gamma", "0"}).exit_code, kExitCalibration);
}

TEST(Execute, VerifyMessages) {
  const ExecutionResult pass = Invoke({"verify", "--grid", "101x101", "--tol", "1e-10"});
  EXPECT_TRUE(std::regex_search(pass.output, std::regex("^PASS max_dev=[0-9.e+-]+")))
      << pass.output;
  const ExecutionResult fail = Invoke({"verify", "--formula", "faintro", "--tol", "1e-10"});
  EXPECT_EQ(fail.output.rfind("FAIL", 0), 0u) << fail.output;
}

TEST(Execute, StdoutAndStderrSeparated) {
  const ExecutionResult r = Invoke({"play", "--payoffs", "1,2,3,4", "--format", "csv"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.output.rfind("payoff_a,payoff_b", 0), 0u);
  const ExecutionResult bad = Invoke({"play", "--gamma", "2.0"});
  EXPECT_TRUE(bad.output.empty());
  EXPECT_FALSE(bad.diagnostics.empty());
}

TEST(Execute, ByteIdenticalReruns) {
  const std::vector<std::vector<std::string>> runs = {
      {"tournament", "--mode", "sampled", "--seed", "17", "--rounds", "200", "--format", "json"},
      {"table", "--scheme", "3param"},
      {"best-response", "--fixed", "M", "--family", "2param", "--format", "csv"},
      {"sweep", "--variable", "theta", "--grid", "9", "--format", "json"},
  };
  for (const auto& argv : runs) {
    const ExecutionResult a = Invoke(argv), b = Invoke(argv);
    EXPECT_EQ(a.exit_code, kExitOk) << a.diagnostics;
    EXPECT_EQ(a.output, b.output);
  }
}

TEST(Render, CsvLiterals) {
  EXPECT_EQ(RenderPayoffPair({1, 1}, Format::kCsv), "payoff_a,payoff_b\n1,1\n");
  EXPECT_EQ(Invoke({"play", "--alice", "M", "--bob", "E", "--format", "csv"}).output,
            "payoff_a,payoff_b,p_cc,p_cd,p_dc,p_dd\n1,1,0,0,0,1\n");
  EXPECT_EQ(Invoke({"table", "--scheme", "classical", "--format", "csv"}).output,
            "alice,bob,payoff_a,payoff_b\nC,C,3,3\nC,D,0,5\nD,C,5,0\nD,D,1,1\n");
}

TEST(Render, NumberFormatting) {
  EXPECT_EQ(FormatNumber(0.1 + 0.2), "0.3");
  EXPECT_EQ(FormatNumber(2.5), "2.5");
  EXPECT_EQ(FormatNumber(1.0 / 3), "0.333333333333");
  EXPECT_EQ(FormatNumber(1e-13), "0");
  EXPECT_EQ(FormatNumber(-4e-17), "0");
  EXPECT_EQ(FormatNumber(1234567.0), "1234567");
}

TEST(Render, JsonRoundTrips) {
  for (const StrategySpec& s : {StrategySpec(NamedMove::kM3), StrategySpec(Param2{0.7, 0.2}),
                                StrategySpec(Param3{1.1, -2.0, 0.3})}) {
    EXPECT_EQ(StrategyFromJson(Json::parse(ToJson(s).dump())), s);
  }
  const Outcome o = Play(NamedMove::kQ, Param3{0.4, 0.5, -0.6}, GameConfig{});
  const Outcome o2 = OutcomeFromJson(Json::parse(ToJson(o).dump()));
  EXPECT_EQ(o2.probs, o.probs);
  EXPECT_EQ(o2.payoff_a, o.payoff_a);
  EXPECT_EQ(o2.payoff_b, o.payoff_b);

  const Bimatrix t = BuildStandardTable(TableScheme::kThreeParam, GameConfig{});
  EXPECT_EQ(BimatrixFromJson(Json::parse(ToJson(t).dump())), t);

  const TournamentResult r =
      RunSampled(MakeTitForTat(), MakeAlways(NamedMove::kE), GameConfig{}, 30, 5);
  EXPECT_EQ(TournamentResultFromJson(Json::parse(ToJson(r).dump())), r);

  const SearchResult sr = BestResponseContinuous(NamedMove::kM2, Player::kBob,
                                                 StrategyFamily::kParam2, GameConfig{}, 8);
  const SearchResult sr2 = SearchResultFromJson(Json::parse(ToJson(sr).dump()));
  EXPECT_EQ(sr2.argmax, sr.argmax);
  EXPECT_EQ(sr2.value, sr.value);
  EXPECT_EQ(sr2.evaluations, sr.evaluations);
}

std::multiset<std::string> Numbers(const std::string& text) {
  static const std::regex number(R"((^|[^A-Za-z0-9.])(-?[0-9]+(\.[0-9]+)?(e[+-]?[0-9]+)?))");
  std::multiset<std::string> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), number);
       it != std::sregex_iterator(); ++it) {
    out.insert((*it)[2].str());
  }
  return out;
}

// Every number printed in pretty mode also appears in the csv output.
TEST(Render, MachineFormatsCoverPrettyNumbers) {
  const std::vector<std::vector<std::string>> runs = {
      {"table", "--scheme", "2param"},
      {"play", "--alice", "U2(pi/3,pi/5)", "--bob", "U3(1,0.5,-0.25)"},
      {"tournament", "--rounds", "50"},
      {"sweep", "--grid", "5"},
  };
  for (auto argv : runs) {
    const std::string pretty = Invoke(argv).output;
    argv.insert(argv.end(), {"--format", "csv"});
    const std::string csv = Invoke(argv).output;
    // Configuration echo lines are covered by the json output instead.
    const std::string body = pretty.substr(pretty.find('\n') + 1);
    const auto csv_numbers = Numbers(csv);
    ASSERT_FALSE(Numbers(body).empty()) << argv[0];
    for (const auto& n : Numbers(body)) {
      EXPECT_TRUE(csv_numbers.count(n) > 0) << n << " missing for " << argv[0];
    }
  }
}

}  // namespace
}  // namespace qpd::cli
