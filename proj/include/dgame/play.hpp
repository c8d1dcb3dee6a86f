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

#ifndef DGAME_PLAY_HPP_
#define DGAME_PLAY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dgame/game.hpp"
#include "dgame/json_io.hpp"

namespace dgame {

// One game between a human and the engine. The engine plays the other side
// optimally: it picks a winning reply or refuting move whenever one exists.
class PlaySession {
 public:
  // Finite beta only. When the human is Eve the engine makes Adam's first
  // move immediately.
  PlaySession(Structure m0, Structure m1, GameParams params, Player human,
              SolveOptions options = {});

  const Position& position() const { return position_; }
  const std::optional<AdamMove>& pending_move() const { return pending_; }
  Player to_move() const { return pending_ ? Player::kEve : Player::kAdam; }
  Player human() const { return human_; }
  bool over() const { return winner_.has_value(); }
  const std::optional<Player>& winner() const { return winner_; }
  const std::string& message() const { return message_; }
  const Structure& m0() const { return m0_; }
  const Structure& m1() const { return m1_; }
  const GameParams& params() const { return params_; }

  // Human moves. An illegal move throws kIllegalMove and leaves the session
  // unchanged.
  void PlayAdam(const AdamMove& move);
  void PlayEve(const Position& reply);

  json::Json State() const;
  json::Json Transcript() const;

  // Re-plays a transcript; throws kInvalidArgument if the engine's recorded
  // moves or the outcome differ.
  static PlaySession Replay(const json::Json& transcript, SolveOptions options = {});

 private:
  void AfterAdam(const AdamMove& move);
  void AfterEve(const Position& reply);
  void EngineAdam();
  void EngineEve();
  bool EveWinsFrom(const Position& p) const;

  Structure m0_, m1_;
  GameParams params_;
  Player human_;
  SolveOptions options_;
  Position position_;
  std::optional<AdamMove> pending_;
  std::optional<Player> winner_;
  std::string message_;
  json::Json events_ = json::Json::array();
};

}  // namespace dgame

#endif  // DGAME_PLAY_HPP_
