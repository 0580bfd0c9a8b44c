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

#include "qpd_cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qpd::cli {
namespace {

const char* PlayerName(Player p) { return p == Player::kAlice ? "A" : "B"; }

const char* FamilyName(StrategyFamily f) {
  switch (f) {
    case StrategyFamily::kClassicalTheta: return "classical";
    case StrategyFamily::kParam2: return "param2";
    case StrategyFamily::kParam3: return "param3";
  }
  return "?";
}

std::vector<std::string> FamilyParamNames(StrategyFamily f) {
  switch (f) {
    case StrategyFamily::kClassicalTheta: return {"theta"};
    case StrategyFamily::kParam2: return {"theta", "phi"};
    case StrategyFamily::kParam3: return {"theta", "alpha", "beta"};
  }
  return {};
}

const char* VariantName(ClosedFormVariant v) {
  return v == ClosedFormVariant::kCorrected ? "corrected" : "faintro";
}

std::string Pair(const PayoffPair& p) {
  return "(" + FormatNumber(p.a) + "," + FormatNumber(p.b) + ")";
}

std::string ConfigLine(const GameConfig& c) {
  const Payoffs& p = c.payoffs;
  return "gamma = " + FormatAngle(c.gamma) + ", payoffs (r,s,t,p) = (" +
         FormatNumber(p.reward) + "," + FormatNumber(p.sucker) + "," +
         FormatNumber(p.temptation) + "," + FormatNumber(p.punishment) + ")";
}

std::string PadLeft(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string PadRight(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Right-aligned grid with a label column, in the layout of a payoff table.
std::string Grid(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      text += c == 0 ? PadRight(cells[c], width[c]) : "  " + PadLeft(cells[c], width[c]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return out.str();
}

std::string JoinCsv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char ch : f) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    } else {
      out += f;
    }
  }
  return out + '\n';
}

std::string Dump(const Json& j) { return j.dump(2) + '\n'; }

// Like FormatNumber but without the near-zero snap, for residuals.
std::string FormatResidual(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::abs(value) < 1e-12) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Json ToJson(const StrategySpec& spec) {
  Json j;
  j["label"] = StrategyLabel(spec);
  if (const auto* named = std::get_if<NamedMove>(&spec)) {
    j["kind"] = "named";
    j["name"] = StrategyLabel(*named);
  } else if (const auto* p2 = std::get_if<Param2>(&spec)) {
    j["kind"] = "param2";
    j["theta"] = p2->theta;
    j["phi"] = p2->phi;
  } else {
    const auto& p3 = std::get<Param3>(spec);
    j["kind"] = "param3";
    j["theta"] = p3.theta;
    j["alpha"] = p3.alpha;
    j["beta"] = p3.beta;
  }
  return j;
}

StrategySpec StrategyFromJson(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "named") return ParseStrategy(j.at("name").get<std::string>());
  if (kind == "param2") {
    return Param2{j.at("theta").get<double>(), j.at("phi").get<double>()};
  }
  if (kind == "param3") {
    return Param3{j.at("theta").get<double>(), j.at("alpha").get<double>(),
                  j.at("beta").get<double>()};
  }
  throw UsageError("unknown strategy kind '" + kind + "'");
}

Json ToJson(const PayoffPair& p) { return Json{{"a", p.a}, {"b", p.b}}; }

PayoffPair PayoffPairFromJson(const Json& j) {
  return {j.at("a").get<double>(), j.at("b").get<double>()};
}

Json ToJson(const Outcome& o) {
  Json probs = Json::array();
  for (double p : o.probs) probs.push_back(p);
  return Json{{"probs", probs}, {"payoff_a", o.payoff_a}, {"payoff_b", o.payoff_b}};
}

Outcome OutcomeFromJson(const Json& j) {
  Outcome o;
  const Json& probs = j.at("probs");
  if (probs.size() != o.probs.size()) throw UsageError("probs must have 4 entries");
  for (std::size_t i = 0; i < o.probs.size(); ++i) o.probs[i] = probs[i].get<double>();
  o.payoff_a = j.at("payoff_a").get<double>();
  o.payoff_b = j.at("payoff_b").get<double>();
  return o;
}

Json ToJson(const Bimatrix& t) {
  Json rows = Json::array(), cols = Json::array(), cells = Json::array();
  for (const auto& r : t.row_labels()) rows.push_back(ToJson(r));
  for (const auto& c : t.col_labels()) cols.push_back(ToJson(c));
  for (const auto& row : t.cells()) {
    Json line = Json::array();
    for (const auto& cell : row) line.push_back(ToJson(cell));
    cells.push_back(line);
  }
  return Json{{"rows", rows}, {"cols", cols}, {"cells", cells}};
}

Bimatrix BimatrixFromJson(const Json& j) {
  std::vector<StrategySpec> rows, cols;
  for (const auto& r : j.at("rows")) rows.push_back(StrategyFromJson(r));
  for (const auto& c : j.at("cols")) cols.push_back(StrategyFromJson(c));
  std::vector<std::vector<PayoffPair>> cells;
  for (const auto& line : j.at("cells")) {
    std::vector<PayoffPair> row;
    for (const auto& cell : line) row.push_back(PayoffPairFromJson(cell));
    cells.push_back(std::move(row));
  }
  return Bimatrix(std::move(rows), std::move(cols), std::move(cells));
}

Json ToJson(const TournamentResult& r) {
  Json per_round = Json::array();
  for (const auto& p : r.per_round) per_round.push_back(ToJson(p));
  Json j{{"mode", r.mode == RunMode::kExpected ? "expected" : "sampled"},
         {"rounds", r.rounds},
         {"seed", nullptr},
         {"average", ToJson(r.average)},
         {"per_round", per_round}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

TournamentResult TournamentResultFromJson(const Json& j) {
  TournamentResult r;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode != "expected" && mode != "sampled") throw UsageError("unknown mode '" + mode + "'");
  r.mode = mode == "expected" ? RunMode::kExpected : RunMode::kSampled;
  r.rounds = j.at("rounds").get<std::size_t>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.average = PayoffPairFromJson(j.at("average"));
  for (const auto& p : j.at("per_round")) r.per_round.push_back(PayoffPairFromJson(p));
  return r;
}

Json ToJson(const SearchResult& r) {
  return Json{{"argmax", r.argmax}, {"value", r.value}, {"evaluations", r.evaluations}};
}

SearchResult SearchResultFromJson(const Json& j) {
  SearchResult r;
  r.argmax = j.at("argmax").get<std::vector<double>>();
  r.value = j.at("value").get<double>();
  r.evaluations = j.at("evaluations").get<std::size_t>();
  return r;
}

Json ToJson(const GameConfig& c) {
  return Json{{"gamma", c.gamma},
              {"payoffs",
               {{"r", c.payoffs.reward},
                {"s", c.payoffs.sucker},
                {"t", c.payoffs.temptation},
                {"p", c.payoffs.punishment}}}};
}

std::string RenderPayoffPair(const PayoffPair& p, Format format) {
  switch (format) {
    case Format::kCsv:
      return JoinCsv({"payoff_a", "payoff_b"}) +
             JoinCsv({FormatNumber(p.a), FormatNumber(p.b)});
    case Format::kJson:
      return Dump(Json{{"payoff_a", p.a}, {"payoff_b", p.b}});
    case Format::kPretty:
      break;
  }
  return Pair(p) + '\n';
}

std::string RenderOutcome(const StrategySpec& alice, const StrategySpec& bob,
                          const GameConfig& config, const Outcome& o,
                          Format format) {
  switch (format) {
    case Format::kCsv:
      return JoinCsv({"payoff_a", "payoff_b", "p_cc", "p_cd", "p_dc", "p_dd"}) +
             JoinCsv({FormatNumber(o.payoff_a), FormatNumber(o.payoff_b),
                      FormatNumber(o.probs[0]), FormatNumber(o.probs[1]),
                      FormatNumber(o.probs[2]), FormatNumber(o.probs[3])});
    case Format::kJson:
      return Dump(Json{{"command", "play"},
                       {"config", ToJson(config)},
                       {"alice", ToJson(alice)},
                       {"bob", ToJson(bob)},
                       {"outcome", ToJson(o)}});
    case Format::kPretty:
      break;
  }
  std::ostringstream out;
  out << "alice " << StrategyLabel(alice) << " vs bob " << StrategyLabel(bob)
      << "; " << ConfigLine(config) << '\n'
      << "P(CC) = " << FormatNumber(o.probs[0])
      << "  P(CD) = " << FormatNumber(o.probs[1])
      << "  P(DC) = " << FormatNumber(o.probs[2])
      << "  P(DD) = " << FormatNumber(o.probs[3]) << '\n'
      << "$A = " << FormatNumber(o.payoff_a) << "  $B = " << FormatNumber(o.payoff_b)
      << '\n';
  return out.str();
}

std::string RenderBimatrix(const Bimatrix& t, const GameConfig& config,
                           Format format) {
  switch (format) {
    case Format::kCsv: {
      std::string out = JoinCsv({"alice", "bob", "payoff_a", "payoff_b"});
      for (std::size_t r = 0; r < t.num_rows(); ++r)
        for (std::size_t c = 0; c < t.num_cols(); ++c)
          out += JoinCsv({StrategyLabel(t.row_labels()[r]),
                          StrategyLabel(t.col_labels()[c]),
                          FormatNumber(t.cell(r, c).a), FormatNumber(t.cell(r, c).b)});
      return out;
    }
    case Format::kJson: {
      Json j{{"command", "table"}, {"config", ToJson(config)}};
      j["table"] = ToJson(t);
      return Dump(j);
    }
    case Format::kPretty:
      break;
  }
  std::vector<std::string> header{"Alice \\ Bob"};
  for (const auto& c : t.col_labels()) header.push_back(StrategyLabel(c));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    std::vector<std::string> row{StrategyLabel(t.row_labels()[r])};
    for (std::size_t c = 0; c < t.num_cols(); ++c) row.push_back(Pair(t.cell(r, c)));
    rows.push_back(std::move(row));
  }
  return ConfigLine(config) + "\n" + Grid(header, rows);
}

std::string RenderVerification(const VerificationReport& r, Format format) {
  const std::string status = r.passed ? "PASS" : "FAIL";
  const std::string grid = std::to_string(r.grid_shape.gamma_count) + "x" +
                           std::to_string(r.grid_shape.theta_count);
  switch (format) {
    case Format::kCsv:
      return JoinCsv({"status", "formula", "max_dev", "worst_gamma", "worst_theta",
                      "gamma_count", "theta_count", "tol"}) +
             JoinCsv({status, VariantName(r.variant), FormatResidual(r.max_abs_deviation),
                      FormatNumber(r.worst_gamma), FormatNumber(r.worst_theta),
                      std::to_string(r.grid_shape.gamma_count),
                      std::to_string(r.grid_shape.theta_count), FormatNumber(r.tolerance)});
    case Format::kJson:
      return Dump(Json{{"command", "verify"},
                       {"status", status},
                       {"formula", VariantName(r.variant)},
                       {"max_abs_deviation", r.max_abs_deviation},
                       {"worst_point", {{"gamma", r.worst_gamma}, {"theta", r.worst_theta}}},
                       {"grid_shape", {r.grid_shape.gamma_count, r.grid_shape.theta_count}},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed}});
    case Format::kPretty:
      break;
  }
  return status + " max_dev=" + FormatResidual(r.max_abs_deviation) +
         " worst=(gamma=" + FormatNumber(r.worst_gamma) +
         ",theta=" + FormatNumber(r.worst_theta) + ") grid=" + grid +
         " tol=" + FormatNumber(r.tolerance) + " formula=" + VariantName(r.variant) + '\n';
}

std::string RenderRefutation(const RefutationReport& r, Format format) {
  auto claim = [](bool holds) { return holds ? "true" : "false"; };
  switch (format) {
    case Format::kCsv:
      return JoinCsv({"quantity", "theta", "value", "claim", "claim_holds"}) +
             JoinCsv({"min_payoff_a", FormatNumber(r.min_payoff_a.argmax[0]),
                      FormatNumber(r.min_payoff_a.value), ">= r",
                      claim(r.claim_a_at_least_reward)}) +
             JoinCsv({"max_payoff_b", FormatNumber(r.max_payoff_b.argmax[0]),
                      FormatNumber(r.max_payoff_b.value), "<= 1/2",
                      claim(r.claim_b_at_most_half)}) +
             JoinCsv({"min_gap", FormatNumber(r.min_gap.argmax[0]),
                      FormatNumber(r.min_gap.value), "", ""});
    case Format::kJson:
      return Dump(Json{{"command", "refutation"},
                       {"config", ToJson(r.config)},
                       {"min_payoff_a", ToJson(r.min_payoff_a)},
                       {"max_payoff_b", ToJson(r.max_payoff_b)},
                       {"min_gap", ToJson(r.min_gap)},
                       {"claim_a_at_least_reward", r.claim_a_at_least_reward},
                       {"claim_b_at_most_half", r.claim_b_at_most_half}});
    case Format::kPretty:
      break;
  }
  std::ostringstream out;
  out << "miracle move vs classical U(theta,0); " << ConfigLine(r.config) << '\n'
      << "min $A = " << FormatNumber(r.min_payoff_a.value)
      << " at theta = " << FormatNumber(r.min_payoff_a.argmax[0])
      << "  (claim $A >= r: " << claim(r.claim_a_at_least_reward) << ")\n"
      << "max $B = " << FormatNumber(r.max_payoff_b.value)
      << " at theta = " << FormatNumber(r.max_payoff_b.argmax[0])
      << "  (claim $B <= 1/2: " << claim(r.claim_b_at_most_half) << ")\n"
      << "min $A-$B = " << FormatNumber(r.min_gap.value)
      << " at theta = " << FormatNumber(r.min_gap.argmax[0]) << '\n';
  return out.str();
}

std::string RenderEquilibria(const Bimatrix& t, const GameConfig& config,
                             Format format) {
  const std::vector<NashCell> nash = PureNash(t);
  auto row_label = [&](std::size_t i) { return StrategyLabel(t.row_labels()[i]); };
  auto col_label = [&](std::size_t i) { return StrategyLabel(t.col_labels()[i]); };
  auto strictness = [](bool s) { return s ? "strict" : "weak"; };

  struct Line {
    std::string kind, player, alice, bob, strict;
  };
  std::vector<Line> lines;
  for (const auto& cell : nash) {
    lines.push_back({"nash", "", row_label(cell.row), col_label(cell.col),
                     strictness(cell.strict)});
  }
  for (Player p : {Player::kAlice, Player::kBob}) {
    for (const auto& d : DominantStrategies(t, p)) {
      lines.push_back({"dominant", PlayerName(p),
                       p == Player::kAlice ? row_label(d.index) : "",
                       p == Player::kBob ? col_label(d.index) : "",
                       strictness(d.strict)});
    }
  }
  for (Player p : {Player::kAlice, Player::kBob}) {
    const Player opp = p == Player::kAlice ? Player::kBob : Player::kAlice;
    for (std::size_t j = 0; j < t.num_strategies(opp); ++j) {
      for (std::size_t k : BestResponseSet(t, p, j)) {
        lines.push_back({"best_response", PlayerName(p),
                         p == Player::kAlice ? row_label(k) : row_label(j),
                         p == Player::kAlice ? col_label(j) : col_label(k), ""});
      }
    }
  }

  switch (format) {
    case Format::kCsv: {
      std::string out = JoinCsv({"kind", "player", "alice", "bob", "strict"});
      for (const auto& l : lines) out += JoinCsv({l.kind, l.player, l.alice, l.bob, l.strict});
      return out;
    }
    case Format::kJson: {
      Json j{{"command", "nash"}, {"config", ToJson(config)}, {"table", ToJson(t)}};
      Json cells = Json::array();
      for (const auto& c : nash)
        cells.push_back({{"row", c.row}, {"col", c.col}, {"strict", c.strict}});
      j["pure_nash"] = cells;
      Json dom = Json::object();
      for (Player p : {Player::kAlice, Player::kBob}) {
        Json list = Json::array();
        for (const auto& d : DominantStrategies(t, p))
          list.push_back({{"index", d.index}, {"strict", d.strict}});
        dom[PlayerName(p)] = list;
      }
      j["dominant"] = dom;
      Json br = Json::object();
      for (Player p : {Player::kAlice, Player::kBob}) {
        const Player opp = p == Player::kAlice ? Player::kBob : Player::kAlice;
        Json list = Json::array();
        for (std::size_t k = 0; k < t.num_strategies(opp); ++k) list.push_back(BestResponseSet(t, p, k));
        br[PlayerName(p)] = list;
      }
      j["best_response"] = br;
      return Dump(j);
    }
    case Format::kPretty:
      break;
  }
  std::ostringstream out;
  out << RenderBimatrix(t, config, Format::kPretty) << '\n';
  out << "pure Nash equilibria:";
  if (nash.empty()) out << " none";
  out << '\n';
  for (const auto& c : nash) {
    out << "  (" << row_label(c.row) << "," << col_label(c.col) << ") "
        << strictness(c.strict) << '\n';
  }
  for (Player p : {Player::kAlice, Player::kBob}) {
    const auto dom = DominantStrategies(t, p);
    out << "dominant strategies of " << PlayerName(p) << ":";
    if (dom.empty()) out << " none";
    for (const auto& d : dom) {
      out << ' ' << (p == Player::kAlice ? row_label(d.index) : col_label(d.index))
          << " (" << strictness(d.strict) << ")";
    }
    out << '\n';
  }
  for (Player p : {Player::kAlice, Player::kBob}) {
    const Player opp = p == Player::kAlice ? Player::kBob : Player::kAlice;
    for (std::size_t j = 0; j < t.num_strategies(opp); ++j) {
      out << "best response of " << PlayerName(p) << " to "
          << (p == Player::kAlice ? col_label(j) : row_label(j)) << ":";
      for (std::size_t k : BestResponseSet(t, p, j))
        out << ' ' << (p == Player::kAlice ? row_label(k) : col_label(k));
      out << '\n';
    }
  }
  return out.str();
}

std::string RenderBestResponse(const StrategySpec& fixed, Player side,
                               StrategyFamily family, const GameConfig& config,
                               const SearchResult& r, Format format) {
  const std::vector<std::string> names = FamilyParamNames(family);
  switch (format) {
    case Format::kCsv: {
      std::vector<std::string> header{"side", "family", "fixed", "value", "evaluations"};
      std::vector<std::string> row{PlayerName(side), FamilyName(family),
                                   StrategyLabel(fixed), FormatNumber(r.value),
                                   std::to_string(r.evaluations)};
      for (std::size_t i = 0; i < names.size(); ++i) {
        header.push_back(names[i]);
        row.push_back(FormatNumber(r.argmax[i]));
      }
      return JoinCsv(header) + JoinCsv(row);
    }
    case Format::kJson:
      return Dump(Json{{"command", "best-response"},
                       {"config", ToJson(config)},
                       {"fixed", ToJson(fixed)},
                       {"side", PlayerName(side)},
                       {"family", FamilyName(family)},
                       {"params", names},
                       {"result", ToJson(r)}});
    case Format::kPretty:
      break;
  }
  std::ostringstream out;
  out << "best response of " << PlayerName(side) << " in " << FamilyName(family)
      << " to " << StrategyLabel(fixed) << "; " << ConfigLine(config) << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << "  " << names[i] << " = " << FormatNumber(r.argmax[i]) << '\n';
  }
  out << "  value = " << FormatNumber(r.value) << "  (" << r.evaluations
      << " evaluations)\n";
  return out.str();
}

std::string RenderRoundRobin(const std::vector<Policy>& field,
                             const RoundRobinResult& r,
                             const TournamentArgs& args,
                             const GameConfig& config, Format format) {
  const char* mode = args.mode == RunMode::kExpected ? "expected" : "sampled";
  switch (format) {
    case Format::kCsv: {
      std::vector<std::string> header{"rank", "label", "total"};
      for (const auto& p : field) header.push_back("vs " + p.label());
      std::string out = JoinCsv(header);
      for (std::size_t i = 0; i < r.standings.size(); ++i) {
        const Standing& s = r.standings[i];
        std::vector<std::string> row{std::to_string(i + 1), s.label, FormatNumber(s.total)};
        for (std::size_t j = 0; j < field.size(); ++j)
          row.push_back(j == s.policy_index ? "" : FormatNumber(s.vs[j]));
        out += JoinCsv(row);
      }
      return out;
    }
    case Format::kJson: {
      Json j{{"command", "tournament"},
             {"config", ToJson(config)},
             {"mode", mode},
             {"rounds", args.rounds},
             {"seed", nullptr}};
      if (args.mode == RunMode::kSampled) j["seed"] = args.seed;
      Json standings = Json::array();
      for (const auto& s : r.standings) {
        Json vs = Json::object();
        for (std::size_t k = 0; k < field.size(); ++k)
          if (k != s.policy_index) vs[field[k].label()] = s.vs[k];
        standings.push_back({{"label", s.label}, {"total", s.total}, {"vs", vs}});
      }
      j["standings"] = standings;
      Json pairings = Json::array();
      for (const auto& p : r.pairings) {
        pairings.push_back({{"first", field[p.first].label()},
                            {"second", field[p.second].label()},
                            {"first_as_alice", ToJson(p.first_as_alice.average)},
                            {"second_as_alice", ToJson(p.second_as_alice.average)},
                            {"first_score", p.first_score},
                            {"second_score", p.second_score}});
      }
      j["pairings"] = pairings;
      return Dump(j);
    }
    case Format::kPretty:
      break;
  }
  std::ostringstream out;
  out << "round robin, " << args.rounds << " rounds, " << mode << " mode";
  if (args.mode == RunMode::kSampled) out << ", seed " << args.seed;
  out << "; " << ConfigLine(config) << '\n';
  std::vector<std::string> header{"rank", "policy", "total"};
  for (const auto& p : field) header.push_back("vs " + p.label());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.standings.size(); ++i) {
    const Standing& s = r.standings[i];
    std::vector<std::string> row{std::to_string(i + 1), s.label, FormatNumber(s.total)};
    for (std::size_t j = 0; j < field.size(); ++j)
      row.push_back(j == s.policy_index ? "-" : FormatNumber(s.vs[j]));
    rows.push_back(std::move(row));
  }
  out << Grid(header, rows);
  return out.str();
}

std::string RenderSweep(const StrategySpec& alice, const StrategySpec& bob,
                        SweepVariable variable,
                        const std::vector<SweepRecord>& records,
                        const GameConfig& config, Format format) {
  const char* name = variable == SweepVariable::kGamma ? "gamma" : "theta";
  switch (format) {
    case Format::kCsv: {
      std::string out = JoinCsv({name, "payoff_a", "payoff_b"});
      for (const auto& r : records)
        out += JoinCsv({FormatNumber(r.value), FormatNumber(r.payoff_a), FormatNumber(r.payoff_b)});
      return out;
    }
    case Format::kJson: {
      Json list = Json::array();
      for (const auto& r : records)
        list.push_back({{"value", r.value}, {"payoff_a", r.payoff_a}, {"payoff_b", r.payoff_b}});
      return Dump(Json{{"command", "sweep"},
                       {"config", ToJson(config)},
                       {"alice", ToJson(alice)},
                       {"bob", ToJson(bob)},
                       {"variable", name},
                       {"records", list}});
    }
    case Format::kPretty:
      break;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records)
    rows.push_back({FormatNumber(r.value), FormatNumber(r.payoff_a), FormatNumber(r.payoff_b)});
  return "alice " + StrategyLabel(alice) + " vs bob " + StrategyLabel(bob) +
         ", sweeping " + name + "; " + ConfigLine(config) + "\n" +
         Grid({name, "$A", "$B"}, rows);
}

std::string RenderCalibration(const CalibrationResult& r,
                              const GameConfig& config, Format format) {
  auto p3 = [](const Param3& p) {
    return Json{{"theta", p.theta}, {"alpha", p.alpha}, {"beta", p.beta}};
  };
  switch (format) {
    case Format::kCsv: {
      std::string out = JoinCsv({"kind", "theta", "alpha", "beta", "max_dev"});
      out += JoinCsv({"canonical", FormatNumber(r.spec.theta), FormatNumber(r.spec.alpha),
                      FormatNumber(r.spec.beta), FormatResidual(r.max_deviation)});
      out += JoinCsv({"raw", FormatNumber(r.raw.theta), FormatNumber(r.raw.alpha),
                      FormatNumber(r.raw.beta), ""});
      for (const auto& s : r.solutions)
        out += JoinCsv({"solution", FormatNumber(s.theta), FormatNumber(s.alpha),
                        FormatNumber(s.beta), ""});
      return out;
    }
    case Format::kJson: {
      Json sols = Json::array();
      for (const auto& s : r.solutions) sols.push_back(p3(s));
      return Dump(Json{{"command", "calibrate"},
                       {"config", ToJson(config)},
                       {"canonical", p3(r.spec)},
                       {"label", StrategyLabel(r.spec)},
                       {"raw", p3(r.raw)},
                       {"max_deviation", r.max_deviation},
                       {"equivalence_classes", r.equivalence_classes},
                       {"solutions", sols}});
    }
    case Format::kPretty:
      break;
  }
  std::ostringstream out;
  out << "M3 = " << StrategyLabel(r.spec) << "  max_dev = " << FormatResidual(r.max_deviation)
      << "; " << ConfigLine(config) << '\n'
      << "raw = (" << FormatNumber(r.raw.theta) << ", " << FormatNumber(r.raw.alpha)
      << ", " << FormatNumber(r.raw.beta) << ")\n"
      << r.solutions.size() << " matching parameter points in "
      << r.equivalence_classes << " global-phase class(es):\n";
  for (const auto& s : r.solutions) out << "  " << StrategyLabel(s) << '\n';
  return out.str();
}

}  // namespace qpd::cli
