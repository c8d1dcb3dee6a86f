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

#include "dgame/play.hpp"

#include "dgame/errors.hpp"

namespace dgame {

namespace {

constexpr const char* kAdamStuck = "Adam has no legal move at height 0; Eve wins.";
constexpr const char* kEveStuck = "Eve has no legal reply; Adam wins.";

Player ParsePlayer(const json::Json& j) {
  if (j == "adam") return Player::kAdam;
  if (j == "eve") return Player::kEve;
  throw ParseError("player must be \"adam\" or \"eve\"");
}

}  // namespace

PlaySession::PlaySession(Structure m0, Structure m1, GameParams params, Player human,
                         SolveOptions options)
    : m0_(std::move(m0)), m1_(std::move(m1)), params_(std::move(params)), human_(human),
      options_(options) {
  CheckAdmissible(params_);
  if (!params_.beta.IsFinite()) {
    Fail(ErrorCode::kInadmissible, "interactive play needs a finite beta");
  }
  options_.extract = false;
  position_ = Position::Start(params_.beta);
  if (position_.height.IsZero()) {
    winner_ = Player::kEve;
    message_ = kAdamStuck;
  } else if (human_ == Player::kEve) {
    EngineAdam();
  }
}

bool PlaySession::EveWinsFrom(const Position& p) const {
  return SolveFrom(p, m0_, m1_, params_, options_) == Player::kEve;
}

void PlaySession::PlayAdam(const AdamMove& move) {
  if (over()) Fail(ErrorCode::kIllegalMove, "the game is over");
  if (human_ != Player::kAdam) Fail(ErrorCode::kIllegalMove, "the engine plays Adam");
  if (pending_) Fail(ErrorCode::kIllegalMove, "it is Eve's turn");
  if (!(move.beta < position_.height)) {
    Fail(ErrorCode::kIllegalMove, "the new height must be below the current height " +
                                      position_.height.ToString());
  }
  if (move.b0.size() > static_cast<std::size_t>(params_.theta) ||
      move.b1.size() > static_cast<std::size_t>(params_.theta)) {
    Fail(ErrorCode::kIllegalMove,
         "each challenge set may have at most " + std::to_string(params_.theta) + " elements");
  }
  if (!IsLegalMove(position_, move, params_, m0_, m1_)) {
    Fail(ErrorCode::kIllegalMove, "challenge refers to unknown elements");
  }
  events_.push_back({{"player", "adam"}, {"move", json::FromMove(move, m0_, m1_)}});
  AfterAdam(move);
}

void PlaySession::PlayEve(const Position& reply) {
  if (over()) Fail(ErrorCode::kIllegalMove, "the game is over");
  if (human_ != Player::kEve) Fail(ErrorCode::kIllegalMove, "the engine plays Eve");
  if (!pending_) Fail(ErrorCode::kIllegalMove, "it is Adam's turn");
  const Violation v = CheckReply(reply, position_, *pending_, params_, m0_, m1_);
  if (v != Violation::kNone) Fail(ErrorCode::kIllegalMove, "illegal reply: " + Describe(v));
  events_.push_back({{"player", "eve"}, {"position", json::FromPosition(reply, m0_, m1_)}});
  AfterEve(reply);
}

void PlaySession::AfterAdam(const AdamMove& move) {
  pending_ = move;
  if (EveReplies(position_, move, params_, m0_, m1_, EveMode::kLazy).empty()) {
    winner_ = Player::kAdam;
    message_ = kEveStuck;
    return;
  }
  message_.clear();
  if (human_ == Player::kAdam) EngineEve();
}

void PlaySession::AfterEve(const Position& reply) {
  position_ = reply;
  pending_.reset();
  if (position_.height.IsZero()) {
    winner_ = Player::kEve;
    message_ = kAdamStuck;
    return;
  }
  message_.clear();
  if (human_ == Player::kEve) EngineAdam();
}

void PlaySession::EngineEve() {
  const auto replies = EveReplies(position_, *pending_, params_, m0_, m1_, EveMode::kLazy);
  const Position* choice = &replies.front();
  for (const Position& q : replies) {
    if (EveWinsFrom(q)) {
      choice = &q;
      break;
    }
  }
  const Position reply = *choice;
  events_.push_back({{"player", "eve"}, {"position", json::FromPosition(reply, m0_, m1_)}});
  AfterEve(reply);
}

void PlaySession::EngineAdam() {
  const auto moves = AdamMoves(position_, params_, m0_, m1_, AdamMode::kNormalized);
  const AdamMove* choice = &moves.front();
  for (const AdamMove& m : moves) {
    bool refutes = true;
    for (const Position& q : EveReplies(position_, m, params_, m0_, m1_, EveMode::kLazy)) {
      if (EveWinsFrom(q)) {
        refutes = false;
        break;
      }
    }
    if (refutes) {
      choice = &m;
      break;
    }
  }
  const AdamMove move = *choice;
  events_.push_back({{"player", "adam"}, {"move", json::FromMove(move, m0_, m1_)}});
  AfterAdam(move);
}

json::Json PlaySession::State() const {
  json::Json out = json::Json::object();
  out["schema_version"] = json::kSchemaVersion;
  out["params"] = json::FromParams(params_);
  out["human"] = PlayerName(human_);
  out["position"] = json::FromPosition(position_, m0_, m1_);
  if (pending_) out["pending_move"] = json::FromMove(*pending_, m0_, m1_);
  out["over"] = over();
  if (winner_) {
    out["winner"] = PlayerName(*winner_);
  } else {
    out["to_move"] = PlayerName(to_move());
  }
  out["message"] = message_;
  return out;
}

json::Json PlaySession::Transcript() const {
  json::Json out = json::Json::object();
  out["schema_version"] = json::kSchemaVersion;
  out["m0"] = json::FromStructure(m0_);
  out["m1"] = json::FromStructure(m1_);
  out["params"] = json::FromParams(params_);
  out["human"] = PlayerName(human_);
  out["events"] = events_;
  out["winner"] = winner_ ? json::Json(PlayerName(*winner_)) : json::Json(nullptr);
  return out;
}

PlaySession PlaySession::Replay(const json::Json& t, SolveOptions options) {
  if (!t.is_object() || !t.contains("events") || !t["events"].is_array()) {
    throw ParseError("a transcript needs an events array");
  }
  PlaySession s(json::ToStructure(t.at("m0")), json::ToStructure(t.at("m1")),
                json::ToParams(t.at("params")), ParsePlayer(t.at("human")), options);
  const json::Json& events = t["events"];
  std::size_t i = 0;
  while (i < events.size()) {
    if (s.events_.size() > i) {
      if (s.events_[i] != events[i]) {
        Fail(ErrorCode::kInvalidArgument,
             "transcript diverges from the engine at event " + std::to_string(i));
      }
      ++i;
      continue;
    }
    const json::Json& e = events[i];
    if (!e.is_object() || !e.contains("player")) throw ParseError("malformed event");
    if (ParsePlayer(e["player"]) != s.human_) {
      Fail(ErrorCode::kInvalidArgument, "transcript has an engine move the engine did not make");
    }
    if (s.human_ == Player::kAdam) {
      s.PlayAdam(json::ToMove(e.at("move"), s.m0_, s.m1_));
    } else {
      s.PlayEve(json::ToPosition(e.at("position"), s.m0_, s.m1_));
    }
  }
  if (s.events_.size() != events.size()) {
    Fail(ErrorCode::kInvalidArgument, "the engine continues beyond the end of the transcript");
  }
  const json::Json recorded = t.value("winner", json::Json(nullptr));
  const json::Json actual = s.winner_ ? json::Json(PlayerName(*s.winner_)) : json::Json(nullptr);
  if (recorded != actual) Fail(ErrorCode::kInvalidArgument, "the replay reaches a different outcome");
  return s;
}

}  // namespace dgame
