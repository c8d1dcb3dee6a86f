// Copyright 2026 The dgame Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end; talks to the engine only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgame/dgame.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitEve = 0;
constexpr int kExitAdam = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
};

struct StructureDeleter {
  void operator()(dgame_structure* s) const { dgame_structure_free(s); }
};
struct SessionDeleter {
  void operator()(dgame_session* s) const { dgame_session_free(s); }
};
using StructurePtr = std::unique_ptr<dgame_structure, StructureDeleter>;
using SessionPtr = std::unique_ptr<dgame_session, SessionDeleter>;

void Check(dgame_status status) {
  if (status != DGAME_OK) throw Failure{dgame_last_error()};
}

// Takes ownership of a string returned by the library.
std::string Take(char* s) {
  std::string out = s ? s : "";
  dgame_string_free(s);
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text << '\n')) throw Failure{"cannot write '" + path + "'"};
}

struct Globals {
  std::uint64_t node_budget = 10'000'000;
  std::string mode = "lazy";
  std::uint64_t seed = 0;
  std::string json_out;
};

struct GameArgs {
  std::string beta, alpha;
  int theta = 1;

  dgame_params params() const { return {beta.c_str(), theta, alpha.c_str()}; }
};

// A structure argument is a JSON file path or "gen:<generator call>".
StructurePtr LoadStructure(const std::string& arg, std::uint64_t seed) {
  dgame_structure* s = nullptr;
  if (arg.rfind("gen:", 0) == 0) {
    Check(dgame_structure_generate(arg.substr(4).c_str(), seed, &s));
  } else {
    Check(dgame_structure_from_json(ReadFile(arg).c_str(), &s));
  }
  return StructurePtr(s);
}

// Catalog arguments: files holding a structure or an array, or gen: calls.
std::string LoadCatalog(const std::vector<std::string>& args, const std::string& family,
                        std::uint64_t seed) {
  Json list = Json::array();
  if (!family.empty()) {
    char* out = nullptr;
    Check(dgame_family_generate(family.c_str(), seed, &out));
    for (auto& s : Json::parse(Take(out))) list.push_back(std::move(s));
  }
  for (const std::string& arg : args) {
    if (arg.rfind("gen:", 0) == 0) {
      auto s = LoadStructure(arg, seed);
      char* out = nullptr;
      Check(dgame_structure_to_json(s.get(), &out));
      list.push_back(Json::parse(Take(out)));
      continue;
    }
    Json j;
    try {
      j = Json::parse(ReadFile(arg));
    } catch (const nlohmann::json::exception& e) {
      throw Failure{"'" + arg + "' is not valid JSON: " + e.what()};
    }
    if (j.is_array()) {
      for (auto& s : j) list.push_back(std::move(s));
    } else {
      list.push_back(std::move(j));
    }
  }
  if (list.empty()) throw Failure{"no structures given"};
  return list.dump();
}

dgame_options Options(const Globals& g, bool strategy) {
  dgame_options o;
  dgame_options_init(&o);
  o.mode = g.mode.c_str();
  o.node_budget = g.node_budget;
  o.include_strategy = strategy ? 1 : 0;
  return o;
}

// Writes the JSON report to --json-out (printing `summary` instead) or to
// stdout.
void Output(const Globals& g, const Json& report, const std::string& summary) {
  if (g.json_out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    WriteFile(g.json_out, report.dump(2));
    if (!summary.empty()) std::cout << summary << '\n';
  }
}

void AddGameOptions(CLI::App* cmd, GameArgs& a, bool need_beta = true) {
  auto* beta = cmd->add_option("--beta", a.beta, "game height, e.g. 3 or w");
  if (need_beta) beta->required();
  cmd->add_option("--theta", a.theta, "challenge size bound")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", a.alpha, "height value bound, e.g. 1 or w")->required();
}

int RunGen(const Globals& g, const std::vector<std::string>& words, bool family) {
  std::string spec;
  for (const auto& w : words) spec += (spec.empty() ? "" : " ") + w;
  std::string text;
  if (family) {
    char* out = nullptr;
    Check(dgame_family_generate(spec.c_str(), g.seed, &out));
    text = Take(out);
  } else {
    auto s = LoadStructure("gen:" + spec, g.seed);
    char* out = nullptr;
    Check(dgame_structure_to_json(s.get(), &out));
    text = Take(out);
  }
  if (g.json_out.empty()) {
    std::cout << text << '\n';
  } else {
    WriteFile(g.json_out, text);
  }
  return 0;
}

int RunSolve(const Globals& g, const std::string& a0, const std::string& a1, const GameArgs& a,
             bool strategy) {
  auto m0 = LoadStructure(a0, g.seed);
  auto m1 = LoadStructure(a1, g.seed);
  const dgame_params p = a.params();
  const dgame_options o = Options(g, strategy);
  dgame_player winner;
  char* report = nullptr;
  Check(dgame_solve(m0.get(), m1.get(), &p, &o, &winner, &report));
  const Json j = Json::parse(Take(report));
  Output(g, j,
         "winner: " + j["winner"].get<std::string>() +
             " (nodes " + std::to_string(j["stats"]["nodes"].get<std::uint64_t>()) + ")");
  return winner == DGAME_EVE ? kExitEve : kExitAdam;
}

int RunKarp(const Globals& g, const std::string& a0, const std::string& a1, int theta, int up_to,
            int beta) {
  auto m0 = LoadStructure(a0, g.seed);
  auto m1 = LoadStructure(a1, g.seed);
  char* out = nullptr;
  Check(dgame_karp(m0.get(), m1.get(), theta, beta >= 0 ? std::max(up_to, beta) : up_to,
                   g.node_budget, &out));
  Json j = Json::parse(Take(out));
  int code = 0;
  std::string summary = "stabilization rank " + std::to_string(j["stabilization_rank"].get<int>());
  if (beta >= 0) {
    const auto& levels = j["levels"];
    const std::size_t at = std::min<std::size_t>(static_cast<std::size_t>(beta), levels.size() - 1);
    const bool equiv = levels[at]["size"].get<std::size_t>() > 0;
    j["beta"] = beta;
    j["equivalent"] = equiv;
    summary += equiv ? "; equivalent" : "; not equivalent";
    code = equiv ? 0 : 1;
  }
  Output(g, j, summary);
  return code;
}

int RunClassify(const Globals& g, const std::vector<std::string>& files, const std::string& family,
                const GameArgs& a) {
  const std::string catalog = LoadCatalog(files, family, g.seed);
  const dgame_params p = a.params();
  const dgame_options o = Options(g, false);
  char* out = nullptr;
  Check(dgame_classify(catalog.c_str(), &p, &o, &out));
  const Json j = Json::parse(Take(out));
  Output(g, j, std::to_string(j["classes"].size()) + " class(es)");
  return 0;
}

std::string SolveLeg(const Globals& g, dgame_structure* x, dgame_structure* y,
                     const dgame_params& p, const char* name) {
  const dgame_options o = Options(g, true);
  dgame_player winner;
  char* report = nullptr;
  Check(dgame_solve(x, y, &p, &o, &winner, &report));
  std::string text = Take(report);
  if (winner != DGAME_EVE) throw Failure{std::string("Adam wins the ") + name + " game"};
  return text;
}

int RunCompose(const Globals& g, const std::vector<std::string>& boards, const GameArgs& a,
               const std::string& alpha2, const std::string& kab_path,
               const std::string& kbc_path) {
  auto m0 = LoadStructure(boards[0], g.seed);
  auto m1 = LoadStructure(boards[1], g.seed);
  auto m2 = LoadStructure(boards[2], g.seed);
  const dgame_params p = a.params();
  const dgame_params p2{a.beta.c_str(), a.theta, alpha2.c_str()};
  const std::string kab = kab_path.empty() ? SolveLeg(g, m0.get(), m1.get(), p, "first")
                                           : ReadFile(kab_path);
  const std::string kbc = kbc_path.empty() ? SolveLeg(g, m1.get(), m2.get(), p2, "second")
                                           : ReadFile(kbc_path);
  char* out = nullptr;
  Check(dgame_compose(m0.get(), m1.get(), m2.get(), &p, alpha2.c_str(), kab.c_str(), kbc.c_str(),
                      &out));
  const Json j = Json::parse(Take(out));
  const bool ok = j["verified"].get<bool>();
  Output(g, j,
         std::string(ok ? "composed strategy verifies" : "composed strategy FAILS verification") +
             " (" + std::to_string(j["strategy"].size()) + " positions)");
  return ok ? 0 : kExitError;
}

int RunSearch(const Globals& g, const std::vector<std::string>& files, const std::string& family,
              const GameArgs& a) {
  const std::string catalog = LoadCatalog(files, family, g.seed);
  const dgame_params p = a.params();
  const dgame_options o = Options(g, false);
  char* out = nullptr;
  Check(dgame_search_intransitive(catalog.c_str(), &p, &o, &out));
  const Json j = Json::parse(Take(out));
  std::string summary = j["outcome"] == "exhausted" ? "exhausted, no counterexample"
                                                    : "counterexample found";
  if (j.contains("reverified")) summary += j["reverified"].get<bool>() ? " (re-verified)" : " (NOT re-verified)";
  Output(g, j, summary);
  if (j.contains("reverified") && !j["reverified"].get<bool>()) return kExitError;
  return 0;
}

// ---- interactive play ----

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  if (s == "-" || s.empty()) return out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "move BETA B0 B1" with comma-separated ids or "-".
Json ParseMoveLine(std::istringstream& in) {
  std::string beta, b0 = "-", b1 = "-";
  if (!(in >> beta)) throw Failure{"usage: move BETA B0 B1   (ids comma-separated, - for none)"};
  in >> b0 >> b1;
  return {{"beta", beta}, {"b0", SplitList(b0)}, {"b1", SplitList(b1)}};
}

// "reply a0=ID:H,... a1=ID:H,... g=ID>ID,..." at the pending height.
Json ParseReplyLine(std::istringstream& in, const std::string& height) {
  Json pos = {{"height", height}, {"a0", Json::array()}, {"a1", Json::array()},
              {"g", Json::array()}, {"h0", Json::object()}, {"h1", Json::object()}};
  for (std::string field; in >> field;) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw Failure{"expected a0=..., a1=... or g=..., got '" + field + "'"};
    const std::string key = field.substr(0, eq);
    for (const std::string& item : SplitList(field.substr(eq + 1))) {
      if (key == "a0" || key == "a1") {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos) throw Failure{"expected ID:HEIGHT, got '" + item + "'"};
        const std::string id = item.substr(0, colon);
        pos[key].push_back(id);
        pos[key == "a0" ? "h0" : "h1"][id] = item.substr(colon + 1);
      } else if (key == "g") {
        const auto arrow = item.find('>');
        if (arrow == std::string::npos) throw Failure{"expected SRC>DST, got '" + item + "'"};
        pos["g"].push_back({item.substr(0, arrow), item.substr(arrow + 1)});
      } else {
        throw Failure{"unknown field '" + key + "'"};
      }
    }
  }
  return pos;
}

std::string Brief(const Json& pos) {
  auto side = [](const Json& ids, const Json& h) {
    std::string s = "{";
    for (const auto& id : ids) s += " " + id.get<std::string>() + ":" + h[id.get<std::string>()].get<std::string>();
    return s + " }";
  };
  std::string g = "{";
  for (const auto& p : pos["g"]) g += " " + p[0].get<std::string>() + ">" + p[1].get<std::string>();
  return "height " + pos["height"].get<std::string>() + "  A0 " + side(pos["a0"], pos["h0"]) +
         "  A1 " + side(pos["a1"], pos["h1"]) + "  g " + g + " }";
}

Json State(const dgame_session* s) {
  char* out = nullptr;
  Check(dgame_session_state(s, &out));
  return Json::parse(Take(out));
}

void PrintState(const Json& st) {
  std::cout << "  " << Brief(st["position"]) << '\n';
  if (st.contains("pending_move")) {
    const auto& m = st["pending_move"];
    std::cout << "  Adam challenged: height " << m["beta"].get<std::string>() << ", B0 "
              << m["b0"].dump() << ", B1 " << m["b1"].dump() << '\n';
  }
  if (st["over"].get<bool>()) {
    std::cout << "  " << st["message"].get<std::string>() << '\n';
  } else {
    std::cout << "  " << st["to_move"].get<std::string>() << " to move\n";
  }
}

int Outcome(const Json& st) {
  if (!st["over"].get<bool>()) return kExitError;
  return st["winner"] == "eve" ? kExitEve : kExitAdam;
}

constexpr const char* kPlayHelp =
    "commands:\n"
    "  move BETA B0 B1        (as Adam) e.g. move 1 e0,e1 -\n"
    "  reply a0=ID:H,.. a1=ID:H,.. g=SRC>DST,..   (as Eve, at the challenged height)\n"
    "  {json}                 a move or position object\n"
    "  state | transcript | help | quit\n";

int RunPlay(const Globals& g, const std::string& a0, const std::string& a1, const GameArgs& a,
            const std::string& side, const std::string& replay, const std::string& transcript_out) {
  const dgame_options o = Options(g, false);
  dgame_session* raw = nullptr;
  if (!replay.empty()) {
    Check(dgame_session_replay(ReadFile(replay).c_str(), &o, &raw));
    SessionPtr s(raw);
    const Json st = State(s.get());
    Output(g, st, st["message"].get<std::string>());
    return Outcome(st);
  }
  if (a0.empty() || a1.empty() || a.beta.empty() || a.alpha.empty()) {
    throw Failure{"play needs two structures, --beta, --theta and --alpha (or --replay)"};
  }
  auto m0 = LoadStructure(a0, g.seed);
  auto m1 = LoadStructure(a1, g.seed);
  const dgame_params p = a.params();
  Check(dgame_session_new(m0.get(), m1.get(), &p, side == "eve" ? DGAME_EVE : DGAME_ADAM, &o, &raw));
  SessionPtr s(raw);
  auto save = [&] {
    if (transcript_out.empty()) return;
    char* out = nullptr;
    Check(dgame_session_transcript(s.get(), &out));
    WriteFile(transcript_out, Json::parse(Take(out)).dump(2));
  };
  std::cout << "You play " << side << ". Type 'help' for commands.\n";
  Json st = State(s.get());
  PrintState(st);
  std::string line;
  while (!st["over"].get<bool>() && std::cout << "> " << std::flush && std::getline(std::cin, line)) {
    std::istringstream in(line);
    std::string cmd;
    if (!(in >> cmd)) continue;
    try {
      dgame_status status = DGAME_OK;
      if (cmd == "quit") break;
      if (cmd == "help") {
        std::cout << kPlayHelp;
        continue;
      }
      if (cmd == "state") {
        PrintState(st);
        continue;
      }
      if (cmd == "transcript") {
        char* out = nullptr;
        Check(dgame_session_transcript(s.get(), &out));
        std::cout << Json::parse(Take(out)).dump(2) << '\n';
        continue;
      }
      if (cmd == "move" || (cmd[0] == '{' && side == "adam")) {
        const Json move = cmd == "move" ? ParseMoveLine(in) : Json::parse(line);
        status = dgame_session_adam_move(s.get(), move.dump().c_str());
      } else if (cmd == "reply" || (cmd[0] == '{' && side == "eve")) {
        if (!st.contains("pending_move")) throw Failure{"there is no challenge to answer"};
        const Json pos = cmd == "reply" ? ParseReplyLine(in, st["pending_move"]["beta"].get<std::string>())
                                        : Json::parse(line);
        status = dgame_session_eve_reply(s.get(), pos.dump().c_str());
      } else {
        throw Failure{"unknown command '" + cmd + "'; type 'help'"};
      }
      if (status == DGAME_ERR_ILLEGAL_MOVE || status == DGAME_ERR_PARSE ||
          status == DGAME_ERR_INVALID_ARGUMENT) {
        std::cout << "  rejected: " << dgame_last_error() << '\n';
        continue;
      }
      Check(status);
      st = State(s.get());
      PrintState(st);
    } catch (const Failure& f) {
      std::cout << "  " << f.message << '\n';
    } catch (const nlohmann::json::exception& e) {
      std::cout << "  invalid JSON: " << e.what() << '\n';
    }
  }
  save();
  if (!g.json_out.empty()) WriteFile(g.json_out, st.dump(2));
  if (!st["over"].get<bool>()) std::cout << "session ended before the game finished\n";
  return Outcome(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for parameterized similarity games on finite structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--node-budget", g.node_budget, "maximum expanded nodes per solve")
      ->check(CLI::PositiveNumber);
  app.add_option("--mode", g.mode, "solver mode")->check(CLI::IsMember({"lazy", "normalized", "full"}));
  app.add_option("--seed", g.seed, "seed for random generators");
  app.add_option("--json-out", g.json_out, "write the JSON report to this file");

  std::vector<std::string> gen_words;
  bool gen_family = false;
  auto* gen = app.add_subcommand("gen", "generate a structure (or a family with --family)");
  gen->add_option("spec", gen_words, "generator call, e.g. linear_order 4")->required();
  gen->add_flag("--family", gen_family, "treat the spec as a family, e.g. digraphs 3");

  std::string s0, s1;
  GameArgs ga;
  bool no_strategy = false;
  auto* solve = app.add_subcommand("solve", "decide the winner of a game");
  solve->add_option("m0", s0, "structure file or gen:<spec>")->required();
  solve->add_option("m1", s1, "structure file or gen:<spec>")->required();
  AddGameOptions(solve, ga);
  solve->add_flag("--no-strategy", no_strategy, "skip strategy / refutation extraction");

  int karp_theta = 1, karp_up_to = -1, karp_beta = -1;
  auto* karp = app.add_subcommand("karp", "back-and-forth levels");
  karp->add_option("m0", s0)->required();
  karp->add_option("m1", s1)->required();
  karp->add_option("--theta", karp_theta)->required()->check(CLI::PositiveNumber);
  karp->add_option("--up-to", karp_up_to, "last level to compute (default: until stable)");
  karp->add_option("--beta", karp_beta, "also report equivalence at this level");

  std::vector<std::string> files;
  std::string family;
  auto* classify = app.add_subcommand("classify", "partition a catalog into equivalence classes");
  classify->add_option("structures", files, "files (structure or array) or gen:<spec>");
  classify->add_option("--family", family, "family spec, e.g. linear_orders 3");
  AddGameOptions(classify, ga);

  std::vector<std::string> boards;
  std::string alpha2, kab, kbc;
  auto* compose = app.add_subcommand("compose", "compose strategies along m0, m1, m2");
  compose->add_option("boards", boards, "three structures")->required()->expected(3);
  AddGameOptions(compose, ga);
  compose->add_option("--alpha2", alpha2, "alpha of the second game")->required();
  compose->add_option("--kab", kab, "strategy for (m0, m1); solved if omitted");
  compose->add_option("--kbc", kbc, "strategy for (m1, m2); solved if omitted");

  auto* search = app.add_subcommand("search-intransitive", "look for E(a,b), E(b,c), not E(a,c)");
  search->add_option("structures", files);
  search->add_option("--family", family);
  AddGameOptions(search, ga);

  std::string side = "adam", replay, transcript_out;
  auto* play = app.add_subcommand("play", "play against the engine");
  play->add_option("m0", s0);
  play->add_option("m1", s1);
  play->add_option("--beta", ga.beta);
  play->add_option("--theta", ga.theta)->check(CLI::PositiveNumber);
  play->add_option("--alpha", ga.alpha);
  play->add_option("--side", side, "the side you play")->check(CLI::IsMember({"adam", "eve"}));
  play->add_option("--replay", replay, "replay a transcript in batch mode");
  play->add_option("--transcript-out", transcript_out, "save the transcript");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*gen) return RunGen(g, gen_words, gen_family);
    if (*solve) return RunSolve(g, s0, s1, ga, !no_strategy);
    if (*karp) return RunKarp(g, s0, s1, karp_theta, karp_up_to, karp_beta);
    if (*classify) return RunClassify(g, files, family, ga);
    if (*compose) return RunCompose(g, boards, ga, alpha2, kab, kbc);
    if (*search) return RunSearch(g, files, family, ga);
    if (*play) return RunPlay(g, s0, s1, ga, side, replay, transcript_out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
