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

#ifndef DGAME_GAME_HPP_
#define DGAME_GAME_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgame/ordinal.hpp"
#include "dgame/structure.hpp"

namespace dgame {

enum class Player { kAdam, kEve };
const char* PlayerName(Player p);

struct GameParams {
  Ordinal beta;
  int theta = 1;
  Ordinal alpha = Ordinal::One();
};

using ElementSet = std::set<Element>;
using HeightMap = std::map<Element, Ordinal>;

// (A0, A1, g, h) without the ordinal height. h is split by board: h0 is
// defined exactly on a0 and h1 exactly on a1.
struct CorePosition {
  ElementSet a0, a1;
  PartialMap g;
  HeightMap h0, h1;

  friend bool operator==(const CorePosition&, const CorePosition&) = default;
  friend auto operator<=>(const CorePosition&, const CorePosition&) = default;
};

struct Position {
  Ordinal height;
  ElementSet a0, a1;
  PartialMap g;
  HeightMap h0, h1;

  static Position Start(const Ordinal& beta);
  CorePosition core() const { return {a0, a1, g, h0, h1}; }
  static Position FromCore(const Ordinal& height, const CorePosition& core);

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

// Why a position or a reply is not acceptable. Used for diagnostics in
// interactive play.
enum class Violation {
  kNone,
  kHeightAboveBeta,
  kHeightDomain,        // h is not defined exactly on A0 / A1
  kMapOutsideSets,      // g leaves A0 x A1
  kNotPartialIsomorphism,
  kHeightNotBelowAlpha,
  kUnmatchedZero,       // an element of height 0 outside dom(g) / ran(g)
  kHeightNotDecreased,  // the position height did not drop
  kWrongHeight,         // the reply height differs from Adam's choice
  kSetsShrunk,
  kMapNotExtended,
  kHeightIncreased,
  kPositiveNotDecreased,
  kChallengeNotCovered,
};
std::string Describe(Violation v);

// Returns the first violated validity condition, or kNone. Throws
// kInvalidArgument for element indices outside the structures.
Violation CheckPosition(const Position& p, const GameParams& params,
                        const Structure& m0, const Structure& m1);
bool ValidatePosition(const Position& p, const GameParams& params,
                      const Structure& m0, const Structure& m1);

// q < p: the height drops, A-sets grow, g_q extends g_p, heights never grow
// and positive heights strictly drop.
Violation CheckExtension(const Position& q, const Position& p);
bool Extends(const Position& q, const Position& p);

struct AdamMove {
  Ordinal beta;
  ElementSet b0, b1;

  friend bool operator==(const AdamMove&, const AdamMove&) = default;
  friend auto operator<=>(const AdamMove&, const AdamMove&) = default;
};

enum class AdamMode { kNormalized, kFull };
enum class EveMode { kLazy, kFull };

// Normalized: beta' is the predecessor and each challenge consists of
// min(theta, |M_i \ A_i|) fresh elements. Full: every finite beta' < height
// and every B_i with |B_i| <= theta. Heights with no finite enumeration
// (limits in normalized mode, infinite heights in full mode) throw
// kInadmissible.
std::vector<AdamMove> AdamMoves(const Position& p, const GameParams& params,
                                const Structure& m0, const Structure& m1, AdamMode mode);

// Whether `move` is legal at p: beta' < height and both challenges within
// theta and inside the universes.
bool IsLegalMove(const Position& p, const AdamMove& move, const GameParams& params,
                 const Structure& m0, const Structure& m1);

// Eve's answers q < p with height beta' covering the challenge. An illegal
// move yields no replies.
std::vector<Position> EveReplies(const Position& p, const AdamMove& move,
                                 const GameParams& params, const Structure& m0,
                                 const Structure& m1, EveMode mode);
Violation CheckReply(const Position& q, const Position& p, const AdamMove& move,
                     const GameParams& params, const Structure& m0, const Structure& m1);

// A positional strategy for Eve: a finite set of positions, kept sorted.
struct PositionalStrategy {
  std::vector<Position> positions;

  bool Contains(const Position& p) const;
  void Normalize();  // sort + dedupe
};

enum class SolveMode {
  kLazy,        // normalized Adam, lazy Eve, canonical memo keys
  kNormalized,  // normalized Adam, every Eve reply
  kFull,        // every Adam move, every Eve reply
};
const char* SolveModeName(SolveMode m);
SolveMode ParseSolveMode(const std::string& text);

struct SolveOptions {
  SolveMode mode = SolveMode::kLazy;
  std::uint64_t node_budget = 10'000'000;
  bool symmetry = false;
  bool extract = true;               // strategy or refutation table
  std::size_t refutation_limit = 10'000;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
};

struct Refutation {
  Position position;
  AdamMove move;
};

struct SolveResult {
  Player winner = Player::kEve;
  // Present when Eve wins at a finite beta and extraction was requested.
  std::optional<PositionalStrategy> strategy;
  // When Adam wins: refuting moves for the positions Eve can reach.
  std::vector<Refutation> refutation;
  SolveStats stats;
  // Set when beta = w was decided through stabilization.
  std::optional<int> stabilization_rank;
};

// Throws kInadmissible when beta or alpha exceed w or theta < 1 or alpha = 0,
// kVocabularyMismatch when the boards differ in vocabulary.
void CheckAdmissible(const GameParams& params);
SolveResult Solve(const Structure& m0, const Structure& m1, const GameParams& params,
                  const SolveOptions& options = {});
// Winner of the game started at an arbitrary valid position with a finite
// height.
Player SolveFrom(const Position& p, const Structure& m0, const Structure& m1,
                 const GameParams& params, const SolveOptions& options = {});

// Positions with empty g and h = height + 1 on every subset pair. Throws
// kInvalidArgument when beta > alpha and kInadmissible for infinite beta.
PositionalStrategy EveTrivialStrategy(const GameParams& params, const Structure& m0,
                                      const Structure& m1);

struct StrategyCheck {
  bool ok = true;
  std::string reason;  // first failure, empty when ok
};
StrategyCheck CheckEveStrategy(const PositionalStrategy& k, const GameParams& params,
                               const Structure& m0, const Structure& m1,
                               AdamMode mode = AdamMode::kNormalized);
bool VerifyEveStrategy(const PositionalStrategy& k, const GameParams& params,
                       const Structure& m0, const Structure& m1,
                       AdamMode mode = AdamMode::kNormalized);

// Composes Eve strategies for (m0, m1) at (beta, theta, alpha) and for
// (m1, m2) at (beta, theta, alpha2) into one for (m0, m2) at
// (beta, theta, alpha (+) alpha2). The result contains the composed pairs
// reachable from the start. Throws kInvalidArgument when an input does not
// verify or the inputs cannot answer a composed challenge.
PositionalStrategy ComposeStrategies(const PositionalStrategy& kab,
                                     const PositionalStrategy& kbc,
                                     const GameParams& params, const Ordinal& alpha2,
                                     const Structure& m0, const Structure& m1,
                                     const Structure& m2);
// p o q for a single pair; exposed for tests.
Position ComposePositions(const Position& p, const Position& q, const Ordinal& alpha,
                          const Ordinal& alpha2);

// Canonical core positions: matched elements carry height 0, unmatched ones a
// positive height below alpha.
struct WinningHeights {
  std::vector<std::vector<CorePosition>> levels;  // S(0), S(1), ..., S(n*)
  int stabilization_rank = 0;                     // n*
};
WinningHeights ComputeWinningHeights(const Structure& m0, const Structure& m1, int theta,
                                     const Ordinal& alpha, const SolveOptions& options = {});

// Greatest fixpoint of the survival operator for the w-length game, computed
// by removing positions with an unanswerable challenge until none is left.
std::vector<CorePosition> InfiniteWinningRegion(const Structure& m0, const Structure& m1,
                                                int theta, const Ordinal& alpha,
                                                const SolveOptions& options = {});
Player SolveInfinite(const Structure& m0, const Structure& m1, int theta,
                     const Ordinal& alpha, const SolveOptions& options = {});

}  // namespace dgame

#endif  // DGAME_GAME_HPP_
