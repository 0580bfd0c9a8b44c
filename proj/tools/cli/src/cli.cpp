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

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpd_cli/render.hpp"

namespace qpd::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

template <class T>
bool ParseWhole(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

std::size_t ParseCount(const std::string& text, const char* what) {
  std::size_t n = 0;
  if (!ParseWhole(Trim(text), n)) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return n;
}

double ParseReal(const std::string& text, const char* what) {
  double v = 0.0;
  if (!ParseWhole(Trim(text), v) || !std::isfinite(v)) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

std::vector<double> ParseAngleList(const std::string& inner) {
  std::vector<double> out;
  for (const auto& part : SplitTopLevel(inner)) out.push_back(ParseAngle(part));
  return out;
}

TableScheme ParseScheme(const std::string& s) {
  if (s == "classical") return TableScheme::kClassical;
  if (s == "2param") return TableScheme::kTwoParam;
  if (s == "3param") return TableScheme::kThreeParam;
  throw UsageError("unknown scheme '" + s + "' (classical, 2param, 3param)");
}

Payoffs ParsePayoffs(const std::string& s) {
  const auto parts = SplitTopLevel(s);
  if (parts.size() != 4) throw UsageError("--payoffs expects r,s,t,p");
  return {ParseReal(parts[0], "payoff r"), ParseReal(parts[1], "payoff s"),
          ParseReal(parts[2], "payoff t"), ParseReal(parts[3], "payoff p")};
}

std::vector<StrategySpec> ParseStrategyList(const std::string& s) {
  std::vector<StrategySpec> out;
  for (const auto& part : SplitTopLevel(s)) out.push_back(ParseStrategy(part));
  if (out.empty()) throw UsageError("empty strategy list");
  return out;
}

// Values read from --config, all optional.
struct FileConfig {
  std::optional<double> gamma;
  std::optional<Payoffs> payoffs;
  std::optional<TableScheme> scheme;
};

FileConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  FileConfig fc;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "gamma") {
        fc.gamma = value.is_string() ? ParseAngle(value.get<std::string>())
                                     : value.get<double>();
      } else if (key == "payoffs") {
        Payoffs p;
        p.reward = value.at("r").get<double>();
        p.sucker = value.at("s").get<double>();
        p.temptation = value.at("t").get<double>();
        p.punishment = value.at("p").get<double>();
        fc.payoffs = p;
      } else if (key == "scheme") {
        fc.scheme = ParseScheme(value.get<std::string>());
      } else {
        throw UsageError("config file: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  return fc;
}

// Raw flag values bound to CLI11 options; conversion happens after parsing.
struct RawFlags {
  std::map<std::string, std::string> values;

  void Bind(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + name, [this, name](const std::string& v) { values[name] = v; },
        help);
  }
  void BindFlag(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_flag_function(
        "--" + name, [this, name](std::int64_t) { values[name] = "true"; }, help);
  }
  std::optional<std::string> Get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
};

void AddCommon(CLI::App* sub, RawFlags& flags) {
  flags.Bind(sub, "gamma", "Entanglement angle in [0, pi/2] (default pi/2)");
  flags.Bind(sub, "payoffs", "Payoff quadruple r,s,t,p (default 3,0,5,1)");
  flags.Bind(sub, "config", "JSON config file with gamma, payoffs, scheme");
  flags.Bind(sub, "format", "Output format: pretty, csv, json");
}

}  // namespace

std::vector<std::string> SplitTopLevel(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(Trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!Trim(current).empty() || !out.empty()) out.push_back(Trim(current));
  return out;
}

double ParseAngle(const std::string& raw) {
  const std::string text = Trim(raw);
  static const std::regex kSymbolic(R"(^([+-]?)(?:([0-9]+)\*)?pi(?:/([0-9]+))?$)");
  std::smatch m;
  if (std::regex_match(text, m, kSymbolic)) {
    long long k = 1, n = 1;
    if (m[2].matched && !ParseWhole(m[2].str(), k)) throw UsageError("malformed angle '" + raw + "'");
    if (m[3].matched && !ParseWhole(m[3].str(), n)) throw UsageError("malformed angle '" + raw + "'");
    if (n == 0) throw UsageError("malformed angle '" + raw + "': zero denominator");
    const double value = static_cast<double>(k) * kPi / static_cast<double>(n);
    return m[1].str() == "-" ? -value : value;
  }
  double v = 0.0;
  if (!ParseWhole(text, v) || !std::isfinite(v)) {
    throw UsageError("malformed angle '" + raw + "'");
  }
  return v;
}

StrategySpec ParseStrategy(const std::string& raw) {
  const std::string text = Trim(raw);
  StrategySpec spec;
  if (text == "C") {
    spec = NamedMove::kC;
  } else if (text == "D") {
    spec = NamedMove::kD;
  } else if (text == "Q") {
    spec = NamedMove::kQ;
  } else if (text == "M" || text == "M2") {
    spec = NamedMove::kM2;
  } else if (text == "E") {
    spec = NamedMove::kE;
  } else if (text == "M3") {
    spec = NamedMove::kM3;
  } else if ((text.starts_with("U2(") || text.starts_with("U3(")) &&
             text.back() == ')') {
    const auto args = ParseAngleList(text.substr(3, text.size() - 4));
    if (text[1] == '2') {
      if (args.size() != 2) throw UsageError("U2 takes (theta,phi): '" + raw + "'");
      spec = Param2{args[0], args[1]};
    } else {
      if (args.size() != 3) throw UsageError("U3 takes (theta,alpha,beta): '" + raw + "'");
      spec = Param3{args[0], args[1], args[2]};
    }
  } else {
    throw UsageError("unknown strategy '" + raw + "'");
  }
  try {
    ValidateStrategy(spec);
  } catch (const RangeError& e) {
    throw UsageError("strategy '" + raw + "': " + e.what());
  }
  return spec;
}

Policy ParsePolicy(const std::string& raw) {
  const std::string text = Trim(raw);
  if (text == "tft" || text == "TitForTat") return MakeTitForTat();
  if (text.starts_with("tft:")) {
    TitForTat params;
    params.initial = ParseStrategy(text.substr(4));
    return MakeTitForTat(params, "TitForTat(" + StrategyLabel(params.initial) + ")");
  }
  if (text.starts_with("always:")) return MakeAlways(ParseStrategy(text.substr(7)));
  if (text.starts_with("Always-")) return MakeAlways(ParseStrategy(text.substr(7)));
  throw UsageError("unknown policy '" + raw + "' (always:SPEC, tft, tft:SPEC)");
}

Invocation ParseInvocation(const std::vector<std::string>& argv) {
  CLI::App app{"Entangled Prisoner's Dilemma analysis", "qpd"};
  app.require_subcommand(1, 1);
  RawFlags flags;

  auto* play = app.add_subcommand("play", "Play one round and report the outcome");
  AddCommon(play, flags);
  flags.Bind(play, "alice", "Alice's strategy (default C)");
  flags.Bind(play, "bob", "Bob's strategy (default C)");

  auto* table = app.add_subcommand("table", "Build a payoff table");
  auto* nash = app.add_subcommand("nash", "Pure Nash, dominance and best responses of a table");
  for (auto* sub : {table, nash}) {
    AddCommon(sub, flags);
    flags.Bind(sub, "scheme", "classical, 2param (default) or 3param");
    flags.Bind(sub, "rows", "Comma-separated Alice strategies (overrides scheme)");
    flags.Bind(sub, "cols", "Comma-separated Bob strategies (overrides scheme)");
  }

  auto* verify = app.add_subcommand("verify", "Check the closed-form payoffs against simulation");
  AddCommon(verify, flags);
  flags.Bind(verify, "grid", "Grid as GAMMAxTHETA counts (default 101x101)");
  flags.Bind(verify, "tol", "Maximum allowed deviation (default 1e-10)");
  flags.Bind(verify, "formula", "corrected (default) or faintro");
  flags.BindFlag(verify, "refutation", "Append the miracle-move refutation report");

  auto* best = app.add_subcommand("best-response", "Continuous best response search");
  AddCommon(best, flags);
  flags.Bind(best, "fixed", "Opponent's fixed strategy (default M2)");
  flags.Bind(best, "side", "Responding player A or B (default B)");
  flags.Bind(best, "family", "classical (default), 2param or 3param");
  flags.Bind(best, "grid", "Grid points per dimension, >= 8 (default 33)");

  auto* tour = app.add_subcommand("tournament", "Round-robin iterated tournament");
  AddCommon(tour, flags);
  flags.Bind(tour, "field", "Comma-separated policies (default always:C,always:D,always:E,always:M2,tft)");
  flags.Bind(tour, "rounds", "Rounds per match (default 1000)");
  flags.Bind(tour, "mode", "expected (default) or sampled");
  flags.Bind(tour, "seed", "64-bit seed for sampled mode (default 0)");

  auto* sweep = app.add_subcommand("sweep", "Sweep gamma or Bob's theta");
  AddCommon(sweep, flags);
  flags.Bind(sweep, "alice", "Alice's strategy (default M2)");
  flags.Bind(sweep, "bob", "Bob's strategy (default E)");
  flags.Bind(sweep, "variable", "gamma (default) or theta");
  flags.Bind(sweep, "grid", "Number of points, >= 2 (default 11)");

  auto* calibrate = app.add_subcommand("calibrate", "Recover the 3-parameter miracle move");
  AddCommon(calibrate, flags);
  flags.Bind(calibrate, "tol", "Row-matching tolerance, >= 1e-9 (default 1e-9)");

  std::vector<const char*> cargs;
  cargs.reserve(argv.size() + 1);
  if (argv.empty()) cargs.push_back("qpd");
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested(subs.empty() ? app.help() : subs.front()->help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  Invocation inv;
  inv.options = flags.values;
  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();

  FileConfig file;
  if (auto path = flags.Get("config")) file = LoadConfigFile(*path);
  if (file.gamma) inv.config.gamma = *file.gamma;
  if (file.payoffs) inv.config.payoffs = *file.payoffs;
  if (auto g = flags.Get("gamma")) inv.config.gamma = ParseAngle(*g);
  if (auto p = flags.Get("payoffs")) inv.config.payoffs = ParsePayoffs(*p);
  try {
    inv.config.Validate();
  } catch (const RangeError& e) {
    throw UsageError(e.what());
  }

  if (auto f = flags.Get("format")) {
    if (*f == "pretty") inv.format = Format::kPretty;
    else if (*f == "csv") inv.format = Format::kCsv;
    else if (*f == "json") inv.format = Format::kJson;
    else throw UsageError("unknown format '" + *f + "' (pretty, csv, json)");
  }

  if (name == "play") {
    inv.command = Command::kPlay;
    PlayArgs args;
    if (auto s = flags.Get("alice")) args.alice = ParseStrategy(*s);
    if (auto s = flags.Get("bob")) args.bob = ParseStrategy(*s);
    inv.args = args;
  } else if (name == "table" || name == "nash") {
    inv.command = name == "table" ? Command::kTable : Command::kNash;
    TableArgs args;
    if (file.scheme) args.scheme = *file.scheme;
    if (auto s = flags.Get("scheme")) args.scheme = ParseScheme(*s);
    if (auto s = flags.Get("rows")) args.rows = ParseStrategyList(*s);
    if (auto s = flags.Get("cols")) args.cols = ParseStrategyList(*s);
    inv.args = args;
  } else if (name == "verify") {
    inv.command = Command::kVerify;
    VerifyArgs args;
    if (auto g = flags.Get("grid")) {
      const auto x = g->find('x');
      if (x == std::string::npos) throw UsageError("--grid expects GAMMAxTHETA, e.g. 101x101");
      args.grid.gamma_count = ParseCount(g->substr(0, x), "grid");
      args.grid.theta_count = ParseCount(g->substr(x + 1), "grid");
      if (args.grid.gamma_count < 2 || args.grid.theta_count < 2) {
        throw UsageError("--grid counts must be >= 2");
      }
    }
    if (auto t = flags.Get("tol")) args.tol = ParseReal(*t, "tolerance");
    if (auto f = flags.Get("formula")) {
      if (*f == "corrected") args.formula = ClosedFormVariant::kCorrected;
      else if (*f == "faintro") args.formula = ClosedFormVariant::kErroneous;
      else throw UsageError("unknown formula '" + *f + "' (corrected, faintro)");
    }
    args.refutation = flags.Get("refutation").has_value();
    inv.args = args;
  } else if (name == "best-response") {
    inv.command = Command::kBestResponse;
    BestResponseArgs args;
    if (auto s = flags.Get("fixed")) args.fixed = ParseStrategy(*s);
    if (auto s = flags.Get("side")) {
      if (*s == "A") args.side = Player::kAlice;
      else if (*s == "B") args.side = Player::kBob;
      else throw UsageError("--side must be A or B");
    }
    if (auto s = flags.Get("family")) {
      if (*s == "classical") args.family = StrategyFamily::kClassicalTheta;
      else if (*s == "2param" || *s == "param2") args.family = StrategyFamily::kParam2;
      else if (*s == "3param" || *s == "param3") args.family = StrategyFamily::kParam3;
      else throw UsageError("unknown family '" + *s + "' (classical, 2param, 3param)");
    }
    if (auto s = flags.Get("grid")) args.grid = ParseCount(*s, "grid");
    if (args.grid < 8) throw UsageError("--grid must be >= 8");
    inv.args = args;
  } else if (name == "tournament") {
    inv.command = Command::kTournament;
    TournamentArgs args;
    if (auto s = flags.Get("field")) {
      try {
        for (const auto& part : SplitTopLevel(*s)) args.field.push_back(ParsePolicy(part));
      } catch (const PolicyError& e) {
        throw UsageError(e.what());
      }
    } else {
      args.field = StandardField();
    }
    if (args.field.size() < 2) throw UsageError("--field needs at least 2 policies");
    if (auto s = flags.Get("rounds")) args.rounds = ParseCount(*s, "rounds");
    if (args.rounds < 1) throw UsageError("--rounds must be >= 1");
    if (auto s = flags.Get("mode")) {
      if (*s == "expected") args.mode = RunMode::kExpected;
      else if (*s == "sampled") args.mode = RunMode::kSampled;
      else throw UsageError("unknown mode '" + *s + "' (expected, sampled)");
    }
    if (auto s = flags.Get("seed")) {
      if (!ParseWhole(Trim(*s), args.seed)) throw UsageError("invalid seed '" + *s + "'");
    }
    inv.args = std::move(args);
  } else if (name == "sweep") {
    inv.command = Command::kSweep;
    SweepArgs args;
    if (auto s = flags.Get("alice")) args.alice = ParseStrategy(*s);
    if (auto s = flags.Get("bob")) args.bob = ParseStrategy(*s);
    if (auto s = flags.Get("variable")) {
      if (*s == "gamma") args.variable = SweepVariable::kGamma;
      else if (*s == "theta") args.variable = SweepVariable::kThetaOfB;
      else throw UsageError("unknown sweep variable '" + *s + "' (gamma, theta)");
    }
    if (auto s = flags.Get("grid")) args.grid = ParseCount(*s, "grid");
    if (args.grid < 2) throw UsageError("--grid must be >= 2");
    inv.args = args;
  } else {
    inv.command = Command::kCalibrate;
    CalibrateArgs args;
    if (auto t = flags.Get("tol")) args.tol = ParseReal(*t, "tolerance");
    inv.args = args;
  }
  return inv;
}

ExecutionResult Execute(const Invocation& inv) {
  ExecutionResult result;
  if (auto warning = PayoffOrderingWarning(inv.config.payoffs)) {
    result.diagnostics += "warning: " + *warning + "\n";
  }
  const GameConfig& config = inv.config;
  const Format format = inv.format;

  switch (inv.command) {
    case Command::kPlay: {
      const auto& args = std::get<PlayArgs>(inv.args);
      result.output = RenderOutcome(args.alice, args.bob, config,
                                    Play(args.alice, args.bob, config), format);
      break;
    }
    case Command::kTable:
    case Command::kNash: {
      const auto& args = std::get<TableArgs>(inv.args);
      const auto rows = args.rows ? *args.rows : StandardRows(args.scheme, config);
      const auto cols = args.cols ? *args.cols : StandardCols(args.scheme);
      const Bimatrix t = BuildBimatrix(rows, cols, config);
      result.output = inv.command == Command::kTable
                          ? RenderBimatrix(t, config, format)
                          : RenderEquilibria(t, config, format);
      break;
    }
    case Command::kVerify: {
      const auto& args = std::get<VerifyArgs>(inv.args);
      const VerificationReport report = VerifyClosedForm(args.grid, args.tol, args.formula);
      std::string text = RenderVerification(report, format);
      if (args.refutation) {
        const std::string refutation =
            RenderRefutation(BuildRefutationReport(config), format);
        if (format == Format::kJson) {
          Json merged{{"verification", Json::parse(text)},
                      {"refutation", Json::parse(refutation)}};
          text = merged.dump(2) + "\n";
        } else {
          text += "\n" + refutation;
        }
      }
      result.output = text;
      if (!report.passed) result.exit_code = kExitVerifyFailed;
      break;
    }
    case Command::kBestResponse: {
      const auto& args = std::get<BestResponseArgs>(inv.args);
      const SearchResult r =
          BestResponseContinuous(args.fixed, args.side, args.family, config, args.grid);
      result.output = RenderBestResponse(args.fixed, args.side, args.family, config, r, format);
      break;
    }
    case Command::kTournament: {
      const auto& args = std::get<TournamentArgs>(inv.args);
      const RoundRobinResult r =
          RoundRobin(args.field, config, args.rounds, args.mode, args.seed);
      result.output = RenderRoundRobin(args.field, r, args, config, format);
      break;
    }
    case Command::kSweep: {
      const auto& args = std::get<SweepArgs>(inv.args);
      const auto records = Sweep(args.alice, args.bob, args.variable, args.grid, config);
      result.output = RenderSweep(args.alice, args.bob, args.variable, records, config, format);
      break;
    }
    case Command::kCalibrate: {
      const auto& args = std::get<CalibrateArgs>(inv.args);
      result.output = RenderCalibration(CalibrateM3(config, args.tol), config, format);
      break;
    }
  }
  return result;
}

ExecutionResult RunCommandLine(const std::vector<std::string>& argv) {
  ExecutionResult result;
  Invocation inv;
  try {
    inv = ParseInvocation(argv);
  } catch (const HelpRequested& help) {
    result.output = help.what();
    return result;
  } catch (const Error& e) {
    result.diagnostics = std::string("usage error: ") + e.what() + "\n";
    result.exit_code = kExitUsage;
    return result;
  }
  try {
    return Execute(inv);
  } catch (const CalibrationError& e) {
    result.diagnostics = std::string("calibration failed: ") + e.what() + "\n";
    result.exit_code = kExitCalibration;
  } catch (const std::exception& e) {
    result.diagnostics = std::string("error: ") + e.what() + "\n";
    result.exit_code = kExitUsage;
  }
  return result;
}

}  // namespace qpd::cli
