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

#include "dgame/dgame.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "dgame/backforth.hpp"
#include "dgame/errors.hpp"
#include "dgame/game.hpp"
#include "dgame/generators.hpp"
#include "dgame/json_io.hpp"
#include "dgame/logic.hpp"
#include "dgame/play.hpp"

struct dgame_structure {
  dgame::Structure s;
};

struct dgame_session {
  dgame::PlaySession s;
};

namespace {

using dgame::ErrorCode;
using dgame::Fail;
namespace json = dgame::json;

thread_local std::string last_error;

template <typename F>
dgame_status Guard(F&& f) {
  try {
    f();
    last_error.clear();
    return DGAME_OK;
  } catch (const dgame::Error& e) {
    last_error = e.what();
    return static_cast<dgame_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("invalid JSON: ") + e.what();
    return DGAME_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DGAME_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DGAME_ERR_INTERNAL;
  }
}

template <typename T>
void Require(const T* p, const char* what) {
  if (p == nullptr) Fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

char* CopyOut(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Emit(char** out, const json::Json& j) {
  if (out != nullptr) *out = CopyOut(j.dump());
}

json::Json Parse(const char* text, const char* what) {
  Require(text, what);
  try {
    return json::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw dgame::ParseError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

dgame::Ordinal Ord(const char* text, const char* what) {
  Require(text, what);
  return dgame::Ordinal::Parse(text);
}

dgame::GameParams Params(const dgame_params* p) {
  Require(p, "params");
  return {Ord(p->beta, "beta"), p->theta, Ord(p->alpha, "alpha")};
}

dgame::SolveOptions Options(const dgame_options* o) {
  dgame::SolveOptions out;
  if (o == nullptr) return out;
  if (o->mode != nullptr) out.mode = dgame::ParseSolveMode(o->mode);
  if (o->node_budget != 0) out.node_budget = o->node_budget;
  out.symmetry = o->symmetry != 0;
  out.extract = o->include_strategy != 0;
  return out;
}

const dgame::Structure& S(const dgame_structure* s, const char* what) {
  Require(s, what);
  return s->s;
}

dgame_player ToPlayer(dgame::Player p) { return p == dgame::Player::kEve ? DGAME_EVE : DGAME_ADAM; }

}  // namespace

extern "C" {

const char* dgame_version(void) { return "1.0.0"; }

const char* dgame_last_error(void) { return last_error.c_str(); }

void dgame_string_free(char* s) { std::free(s); }

void dgame_options_init(dgame_options* options) {
  if (options == nullptr) return;
  options->mode = "lazy";
  options->node_budget = 0;
  options->symmetry = 0;
  options->include_strategy = 1;
}

dgame_status dgame_structure_from_json(const char* text, dgame_structure** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new dgame_structure{json::ToStructure(Parse(text, "structure"))};
  });
}

dgame_status dgame_structure_generate(const char* spec, uint64_t seed, dgame_structure** out) {
  return Guard([&] {
    Require(spec, "spec");
    Require(out, "out");
    *out = new dgame_structure{dgame::Generate(spec, seed)};
  });
}

dgame_status dgame_structure_to_json(const dgame_structure* s, char** out) {
  return Guard([&] {
    Require(out, "out");
    *out = CopyOut(json::SerializeStructure(S(s, "structure")));
  });
}

void dgame_structure_free(dgame_structure* s) { delete s; }

dgame_status dgame_family_generate(const char* spec, uint64_t seed, char** out) {
  return Guard([&] {
    Require(spec, "spec");
    Require(out, "out");
    json::Json list = json::Json::array();
    for (const auto& s : dgame::GenerateFamily(spec, seed)) list.push_back(json::FromStructure(s));
    Emit(out, list);
  });
}

dgame_status dgame_solve(const dgame_structure* m0, const dgame_structure* m1,
                         const dgame_params* params, const dgame_options* options,
                         dgame_player* winner, char** report) {
  return Guard([&] {
    const auto p = Params(params);
    const auto o = Options(options);
    const auto r = dgame::Solve(S(m0, "m0"), S(m1, "m1"), p, o);
    if (winner != nullptr) *winner = ToPlayer(r.winner);
    Emit(report, json::FromSolveResult(r, p, o.mode, m0->s, m1->s));
  });
}

dgame_status dgame_verify_strategy(const dgame_structure* m0, const dgame_structure* m1,
                                   const dgame_params* params, const char* strategy_json,
                                   int full_width, int* ok, char** reason) {
  return Guard([&] {
    Require(ok, "ok");
    const auto p = Params(params);
    const auto k = json::ToStrategy(Parse(strategy_json, "strategy"), S(m0, "m0"), S(m1, "m1"));
    const auto check = dgame::CheckEveStrategy(
        k, p, m0->s, m1->s, full_width ? dgame::AdamMode::kFull : dgame::AdamMode::kNormalized);
    *ok = check.ok ? 1 : 0;
    if (reason != nullptr) *reason = CopyOut(check.reason);
  });
}

dgame_status dgame_trivial_strategy(const dgame_structure* m0, const dgame_structure* m1,
                                    const dgame_params* params, char** out) {
  return Guard([&] {
    const auto p = Params(params);
    const auto k = dgame::EveTrivialStrategy(p, S(m0, "m0"), S(m1, "m1"));
    json::Json j = json::Json::object();
    j["schema_version"] = json::kSchemaVersion;
    j["params"] = json::FromParams(p);
    j["strategy"] = json::FromStrategy(k, m0->s, m1->s);
    Emit(out, j);
  });
}

dgame_status dgame_compose(const dgame_structure* m0, const dgame_structure* m1,
                           const dgame_structure* m2, const dgame_params* params,
                           const char* alpha2, const char* kab_json, const char* kbc_json,
                           char** out) {
  return Guard([&] {
    const auto p = Params(params);
    const auto a2 = Ord(alpha2, "alpha2");
    const auto& s0 = S(m0, "m0");
    const auto& s1 = S(m1, "m1");
    const auto& s2 = S(m2, "m2");
    const auto kab = json::ToStrategy(Parse(kab_json, "first strategy"), s0, s1);
    const auto kbc = json::ToStrategy(Parse(kbc_json, "second strategy"), s1, s2);
    const auto k = dgame::ComposeStrategies(kab, kbc, p, a2, s0, s1, s2);
    const dgame::GameParams q{p.beta, p.theta, dgame::NatSum(p.alpha, a2)};
    const auto check = dgame::CheckEveStrategy(k, q, s0, s2);
    json::Json j = json::Json::object();
    j["schema_version"] = json::kSchemaVersion;
    j["params"] = json::FromParams(q);
    j["verified"] = check.ok;
    if (!check.ok) j["reason"] = check.reason;
    j["strategy"] = json::FromStrategy(k, s0, s2);
    Emit(out, j);
  });
}

dgame_status dgame_winning_heights(const dgame_structure* m0, const dgame_structure* m1,
                                   int theta, const char* alpha, const dgame_options* options,
                                   char** out) {
  return Guard([&] {
    const auto w = dgame::ComputeWinningHeights(S(m0, "m0"), S(m1, "m1"), theta,
                                                Ord(alpha, "alpha"), Options(options));
    Emit(out, json::FromWinningHeights(w, m0->s, m1->s));
  });
}

dgame_status dgame_solve_infinite(const dgame_structure* m0, const dgame_structure* m1,
                                  int theta, const char* alpha, const dgame_options* options,
                                  dgame_player* winner) {
  return Guard([&] {
    Require(winner, "winner");
    *winner = ToPlayer(dgame::SolveInfinite(S(m0, "m0"), S(m1, "m1"), theta,
                                            Ord(alpha, "alpha"), Options(options)));
  });
}

dgame_status dgame_karp(const dgame_structure* m0, const dgame_structure* m1, int theta,
                        int up_to, uint64_t node_budget, char** out) {
  return Guard([&] {
    const auto levels = dgame::ComputeKarpLevels(S(m0, "m0"), S(m1, "m1"), theta, up_to,
                                                 node_budget ? node_budget : 10'000'000);
    json::Json j = json::FromKarpLevels(levels, m0->s, m1->s);
    j["theta"] = theta;
    Emit(out, j);
  });
}

dgame_status dgame_classify(const char* catalog_json, const dgame_params* params,
                            const dgame_options* options, char** out) {
  return Guard([&] {
    const auto catalog =
        dgame::Catalog::Make(json::ToStructureList(Parse(catalog_json, "catalog")));
    Emit(out, json::FromPartition(dgame::Partition(*catalog, Params(params), Options(options))));
  });
}

dgame_status dgame_search_intransitive(const char* family_json, const dgame_params* params,
                                       const dgame_options* options, char** out) {
  return Guard([&] {
    const auto family = json::ToStructureList(Parse(family_json, "family"));
    const auto r = dgame::SearchIntransitivity(family, Params(params), Options(options));
    Emit(out, json::FromIntransitivity(r, family));
  });
}

dgame_status dgame_session_new(const dgame_structure* m0, const dgame_structure* m1,
                               const dgame_params* params, dgame_player human,
                               const dgame_options* options, dgame_session** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new dgame_session{dgame::PlaySession(
        S(m0, "m0"), S(m1, "m1"), Params(params),
        human == DGAME_EVE ? dgame::Player::kEve : dgame::Player::kAdam, Options(options))};
  });
}

dgame_status dgame_session_replay(const char* transcript_json, const dgame_options* options,
                                  dgame_session** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new dgame_session{
        dgame::PlaySession::Replay(Parse(transcript_json, "transcript"), Options(options))};
  });
}

dgame_status dgame_session_state(const dgame_session* s, char** out) {
  return Guard([&] {
    Require(s, "session");
    Require(out, "out");
    Emit(out, s->s.State());
  });
}

dgame_status dgame_session_transcript(const dgame_session* s, char** out) {
  return Guard([&] {
    Require(s, "session");
    Require(out, "out");
    Emit(out, s->s.Transcript());
  });
}

dgame_status dgame_session_adam_move(dgame_session* s, const char* move_json) {
  return Guard([&] {
    Require(s, "session");
    s->s.PlayAdam(json::ToMove(Parse(move_json, "move"), s->s.m0(), s->s.m1()));
  });
}

dgame_status dgame_session_eve_reply(dgame_session* s, const char* position_json) {
  return Guard([&] {
    Require(s, "session");
    s->s.PlayEve(json::ToPosition(Parse(position_json, "reply"), s->s.m0(), s->s.m1()));
  });
}

void dgame_session_free(dgame_session* s) { delete s; }

}  // extern "C"
