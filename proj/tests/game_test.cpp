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

#include <gtest/gtest.h>

#include "dgame/errors.hpp"
#include "dgame/game.hpp"
#include "dgame/generators.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace dgame {
namespace {

using testing::Name;
using testing::SameVocabularyPairs;
using testing::SmallGrid;

Ordinal N(int n) { return Ordinal::FromNat(static_cast<std::uint64_t>(n)); }

Player Winner(const Structure& a, const Structure& b, const GameParams& p, SolveMode mode) {
  SolveOptions o;
  o.mode = mode;
  o.extract = false;
  return Solve(a, b, p, o).winner;
}

oracle::Pos ToOracle(int height, const CorePosition& c) {
  oracle::Pos p;
  p.height = height;
  p.a0 = c.a0;
  p.a1 = c.a1;
  for (const auto& [x, y] : c.g.pairs()) p.g[x] = y;
  for (const auto& [e, h] : c.h0) p.h0[e] = static_cast<int>(*h.ToNat());
  for (const auto& [e, h] : c.h1) p.h1[e] = static_cast<int>(*h.ToNat());
  return p;
}

bool Canonical(const oracle::Pos& p) {
  for (const auto& [x, y] : p.g) {
    if (p.h0.at(x) != 0 || p.h1.at(y) != 0) return false;
  }
  return true;
}

TEST(Solve, AgreesWithLiteralGameOnTinyStructures) {
  const auto grid = SmallGrid(2);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        oracle::Game game(*a, *b, theta, alpha);
        for (int beta = 0; beta <= 3; ++beta) {
          const Player expected = game.EveWinsGame(beta) ? Player::kEve : Player::kAdam;
          const GameParams p{N(beta), theta, N(alpha)};
          for (SolveMode mode : {SolveMode::kLazy, SolveMode::kNormalized, SolveMode::kFull}) {
            ASSERT_EQ(Winner(*a, *b, p, mode), expected)
                << Name(*a) << " vs " << Name(*b) << " beta=" << beta << " theta=" << theta
                << " alpha=" << alpha << " mode=" << SolveModeName(mode);
          }
        }
      }
    }
  }
}

TEST(Solve, AgreesWithLiteralGameAtAlphaOneOnSizeThree) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    if (a->size() + b->size() > 5) continue;
    for (int theta = 1; theta <= 2; ++theta) {
      oracle::Game game(*a, *b, theta, 1);
      for (int beta = 0; beta <= 2; ++beta) {
        const Player expected = game.EveWinsGame(beta) ? Player::kEve : Player::kAdam;
        ASSERT_EQ(Winner(*a, *b, {N(beta), theta, Ordinal::One()}, SolveMode::kLazy), expected)
            << Name(*a) << " vs " << Name(*b) << " beta=" << beta << " theta=" << theta;
      }
    }
  }
}

TEST(Solve, AlphaOneIsTheEhrenfeuchtFraisseGame) {
  const GameParams one{N(1), 1, Ordinal::One()};
  const GameParams two{N(2), 1, Ordinal::One()};
  EXPECT_EQ(Winner(LinearOrder(3), LinearOrder(4), one, SolveMode::kLazy), Player::kEve);
  EXPECT_EQ(Winner(LinearOrder(3), LinearOrder(4), two, SolveMode::kLazy), Player::kAdam);
  EXPECT_EQ(Winner(PureSet(2), PureSet(3), two, SolveMode::kLazy), Player::kEve);
  EXPECT_EQ(Winner(PureSet(2), PureSet(3), {N(3), 1, Ordinal::One()}, SolveMode::kLazy), Player::kAdam);
}

TEST(Solve, OneWideRoundAtAlphaOneDecidesIsomorphism) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    const int theta = static_cast<int>(std::max(a->size(), b->size()));
    const bool eve = Winner(*a, *b, {N(1), theta, Ordinal::One()}, SolveMode::kFull) == Player::kEve;
    ASSERT_EQ(eve, oracle::Isomorphic(*a, *b)) << Name(*a) << " vs " << Name(*b);
  }
}

TEST(Solve, HeightZeroIsAlwaysEve) {
  const SolveResult r = Solve(Cycle(2), Cycle(3), {N(0), 3, N(2)});
  EXPECT_EQ(r.winner, Player::kEve);
  ASSERT_TRUE(r.strategy.has_value());
  EXPECT_TRUE(r.strategy->Contains(Position::Start(N(0))));
}

TEST(Solve, WinningIsMonotoneInHeight) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        bool adam = false;
        for (int beta = 0; beta <= 5; ++beta) {
          const bool eve = Winner(*a, *b, {N(beta), theta, N(alpha)}, SolveMode::kLazy) == Player::kEve;
          ASSERT_FALSE(adam && eve) << Name(*a) << " vs " << Name(*b) << " beta=" << beta;
          adam = adam || !eve;
        }
      }
    }
  }
}

TEST(Solve, IsomorphicStructuresAreEveWins) {
  for (const auto& s : SmallGrid(3)) {
    EXPECT_EQ(Winner(s, s, {N(4), 3, N(2)}, SolveMode::kLazy), Player::kEve) << Name(s);
  }
}

TEST(Solve, ExtractedStrategiesVerify) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int beta = 0; beta <= 3; ++beta) {
      const GameParams p{N(beta), 2, N(2)};
      const SolveResult r = Solve(*a, *b, p);
      if (r.winner == Player::kAdam) {
        EXPECT_FALSE(r.strategy.has_value());
        EXPECT_FALSE(r.refutation.empty());
        continue;
      }
      ASSERT_TRUE(r.strategy.has_value());
      const StrategyCheck c = CheckEveStrategy(*r.strategy, p, *a, *b, AdamMode::kFull);
      ASSERT_TRUE(c.ok) << Name(*a) << " vs " << Name(*b) << ": " << c.reason;
    }
  }
}

TEST(Solve, EmptyStrategyIsRejected) {
  const StrategyCheck c = CheckEveStrategy({}, {N(1), 1, N(1)}, PureSet(1), PureSet(1));
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.reason.empty());
}

TEST(Solve, RejectsInadmissibleParameters) {
  const Structure s = PureSet(1);
  auto code = [&](const GameParams& p) {
    try {
      Solve(s, s, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  EXPECT_EQ(code({N(1), 0, N(1)}), ErrorCode::kInadmissible);
  EXPECT_EQ(code({N(1), 1, N(0)}), ErrorCode::kInadmissible);
  EXPECT_EQ(code({Ordinal::Parse("w+1"), 1, N(1)}), ErrorCode::kInadmissible);
  EXPECT_THROW(Solve(PureSet(1), LinearOrder(1), {N(1), 1, N(1)}), Error);
}

TEST(Solve, BudgetIsEnforced) {
  SolveOptions o;
  o.node_budget = 1;
  try {
    Solve(LinearOrder(3), LinearOrder(4), {N(3), 2, N(2)}, o);
    FAIL() << "expected the budget to run out";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
}

TEST(Solve, OmegaHeightFollowsTheInfiniteRegion) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int alpha = 1; alpha <= 2; ++alpha) {
      const GameParams p{Ordinal::Omega(), 1, N(alpha)};
      const SolveResult r = Solve(*a, *b, p);
      EXPECT_FALSE(r.strategy.has_value());
      const WinningHeights w = ComputeWinningHeights(*a, *b, 1, N(alpha));
      bool below_all = true;
      for (int n = 0; n <= w.stabilization_rank + 1; ++n) {
        below_all = below_all && Winner(*a, *b, {N(n), 1, N(alpha)}, SolveMode::kLazy) == Player::kEve;
      }
      EXPECT_EQ(r.winner == Player::kEve, below_all) << Name(*a) << " vs " << Name(*b);
      EXPECT_EQ(SolveInfinite(*a, *b, 1, N(alpha)), r.winner);
    }
  }
  EXPECT_EQ(Solve(PureSet(1), PureSet(2), {Ordinal::Omega(), 1, Ordinal::Omega()}).winner, Player::kEve);
}

TEST(Positions, ViolationsAreNamed) {
  const Structure l = LinearOrder(2);
  const GameParams p{N(2), 1, N(2)};
  Position q = Position::Start(N(1));
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kNone);
  q.a0 = {0};
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kHeightDomain);
  q.h0[0] = N(0);
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kUnmatchedZero);
  q.h0[0] = N(2);
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kHeightNotBelowAlpha);
  q.h0[0] = N(1);
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kNone);
  q.g = PartialMap::FromPairs({{0, 1}});
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kMapOutsideSets);
  q.a0 = {0, 1};
  q.a1 = {0, 1};
  q.h0 = {{0, N(0)}, {1, N(0)}};
  q.h1 = {{0, N(0)}, {1, N(0)}};
  q.g = PartialMap::FromPairs({{0, 1}, {1, 0}});
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kNotPartialIsomorphism);
  q.g = PartialMap::FromPairs({{0, 0}, {1, 1}});
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kNone);
  q.height = N(3);
  EXPECT_EQ(CheckPosition(q, p, l, l), Violation::kHeightAboveBeta);
  EXPECT_FALSE(Describe(Violation::kNotPartialIsomorphism).empty());
}

TEST(Positions, ExtensionRules) {
  Position p = Position::Start(N(2));
  p.a0 = {0};
  p.h0 = {{0, N(1)}};
  Position q = p;
  q.height = N(1);
  q.h0 = {{0, N(0)}};
  q.a1 = {0};
  q.h1 = {{0, N(0)}};
  q.g = PartialMap::FromPairs({{0, 0}});
  EXPECT_EQ(CheckExtension(q, p), Violation::kNone);
  Position r = q;
  r.height = N(2);
  EXPECT_EQ(CheckExtension(r, p), Violation::kHeightNotDecreased);
  r = q;
  r.a0.clear();
  r.h0.clear();
  EXPECT_EQ(CheckExtension(r, p), Violation::kSetsShrunk);
  r = q;
  r.h0 = {{0, N(1)}};
  EXPECT_NE(CheckExtension(r, p), Violation::kNone);
  EXPECT_FALSE(Extends(p, q));
}

TEST(Moves, RepliesAreLegalAndCoverTheChallenge) {
  const Structure a = LinearOrder(3), b = LinearOrder(4);
  const GameParams p{N(2), 2, N(2)};
  const Position start = Position::Start(p.beta);
  const auto moves = AdamMoves(start, p, a, b, AdamMode::kFull);
  ASSERT_FALSE(moves.empty());
  for (const AdamMove& m : moves) {
    ASSERT_TRUE(IsLegalMove(start, m, p, a, b));
    for (EveMode mode : {EveMode::kLazy, EveMode::kFull}) {
      for (const Position& q : EveReplies(start, m, p, a, b, mode)) {
        ASSERT_EQ(CheckReply(q, start, m, p, a, b), Violation::kNone);
      }
    }
  }
  EXPECT_FALSE(IsLegalMove(start, {N(2), {}, {}}, p, a, b));
  EXPECT_FALSE(IsLegalMove(start, {N(1), {0, 1, 2}, {}}, p, a, b));
}

TEST(Moves, NormalizedMovesAreAmongTheFullMoves) {
  const Structure a = Cycle(2), b = Cycle(3);
  const GameParams p{N(3), 2, N(2)};
  const Position start = Position::Start(p.beta);
  const auto full = AdamMoves(start, p, a, b, AdamMode::kFull);
  for (const AdamMove& m : AdamMoves(start, p, a, b, AdamMode::kNormalized)) {
    EXPECT_NE(std::find(full.begin(), full.end(), m), full.end());
  }
}

TEST(TrivialStrategy, VerifiesWheneverBetaIsBelowAlpha) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        for (int beta = 0; beta < alpha; ++beta) {
          const GameParams p{N(beta), theta, N(alpha)};
          const StrategyCheck c = CheckEveStrategy(EveTrivialStrategy(p, *a, *b), p, *a, *b);
          ASSERT_TRUE(c.ok) << Name(*a) << " vs " << Name(*b) << " beta=" << beta << ": " << c.reason;
        }
      }
    }
  }
}

TEST(TrivialStrategy, FailsAtBetaEqualToAlpha) {
  // At beta = alpha the first reply needs height alpha for unmatched
  // elements, which is out of range; Adam can even win outright.
  const GameParams p{N(1), 2, N(1)};
  EXPECT_FALSE(CheckEveStrategy(EveTrivialStrategy(p, PureSet(1), PureSet(2)), p, PureSet(1), PureSet(2)).ok);
  EXPECT_EQ(Winner(PureSet(1), PureSet(2), p, SolveMode::kFull), Player::kAdam);
  oracle::Game game(PureSet(1), PureSet(2), 2, 1);
  EXPECT_FALSE(game.EveWinsGame(1));
}

TEST(WinningHeights, LevelsMatchTheLiteralGame) {
  const auto grid = SmallGrid(2);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      for (int alpha = 1; alpha <= 2; ++alpha) {
        oracle::Game game(*a, *b, theta, alpha);
        const WinningHeights w = ComputeWinningHeights(*a, *b, theta, N(alpha));
        ASSERT_EQ(w.levels.size(), static_cast<std::size_t>(w.stabilization_rank) + 1);
        std::set<oracle::Pos> all;
        for (const oracle::Pos& c : game.AllCores()) {
          if (Canonical(c)) all.insert(c);
        }
        for (int n = 0; n < static_cast<int>(w.levels.size()); ++n) {
          std::set<oracle::Pos> got;
          for (const CorePosition& c : w.levels[n]) got.insert(ToOracle(0, c));
          for (const oracle::Pos& c : all) {
            oracle::Pos at = c;
            at.height = n;
            bool expected = true;
            for (int m = 0; m <= n; ++m) {
              at.height = m;
              expected = expected && game.EveWins(at);
            }
            ASSERT_EQ(got.contains(c), expected) << Name(*a) << " vs " << Name(*b) << " n=" << n;
          }
        }
      }
    }
  }
}

TEST(WinningHeights, InfiniteRegionIsTheGreatestFixpoint) {
  const auto grid = SmallGrid(2);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      for (int alpha = 1; alpha <= 2; ++alpha) {
        oracle::Game game(*a, *b, theta, alpha);
        std::set<oracle::Pos> expected;
        for (const oracle::Pos& c : game.InfiniteRegion()) {
          if (Canonical(c)) expected.insert(c);
        }
        std::set<oracle::Pos> got;
        for (const CorePosition& c : InfiniteWinningRegion(*a, *b, theta, N(alpha))) got.insert(ToOracle(0, c));
        ASSERT_EQ(got, expected) << Name(*a) << " vs " << Name(*b) << " theta=" << theta;
        ASSERT_EQ(ComputeWinningHeights(*a, *b, theta, N(alpha)).levels.back(),
                  InfiniteWinningRegion(*a, *b, theta, N(alpha)));
      }
    }
  }
}

TEST(WinningHeights, PureSetsOfSizesOneAndTwoStabilizeAtOne) {
  // With two challenges per move and alpha = 1 Adam wins in a single round.
  const WinningHeights w = ComputeWinningHeights(PureSet(1), PureSet(2), 2, Ordinal::One());
  EXPECT_EQ(w.stabilization_rank, 1);
  EXPECT_TRUE(w.levels.back().empty());
  EXPECT_EQ(SolveInfinite(PureSet(1), PureSet(2), 2, Ordinal::One()), Player::kAdam);
}

TEST(Compose, PositionsCombineHeights) {
  Position p = Position::Start(N(1));
  p.a0 = {0};
  p.a1 = {0};
  p.g = PartialMap::FromPairs({{0, 0}});
  p.h0 = {{0, N(0)}};
  p.h1 = {{0, N(0)}};
  Position q = p;
  const Position r = ComposePositions(p, q, N(1), N(1));
  EXPECT_EQ(r.g, PartialMap::FromPairs({{0, 0}}));
  EXPECT_EQ(r.h0.at(0), N(0));
  EXPECT_EQ(r.height, N(1));
}

TEST(Compose, SolverStrategiesComposeAcrossAChain) {
  const Structure m0 = LinearOrder(3), m1 = LinearOrder(4), m2 = LinearOrder(5);
  const GameParams p{N(1), 1, N(1)};
  const SolveResult r01 = Solve(m0, m1, p);
  const SolveResult r12 = Solve(m1, m2, p);
  ASSERT_EQ(r01.winner, Player::kEve);
  ASSERT_EQ(r12.winner, Player::kEve);
  const auto k = ComposeStrategies(*r01.strategy, *r12.strategy, p, N(1), m0, m1, m2);
  const GameParams q{N(1), 1, N(2)};
  const StrategyCheck c = CheckEveStrategy(k, q, m0, m2);
  EXPECT_TRUE(c.ok) << c.reason;
}

TEST(Compose, RejectsUnverifiedInputs) {
  const Structure a = PureSet(1);
  const GameParams p{N(1), 1, N(1)};
  const SolveResult ok = Solve(a, a, p);
  PositionalStrategy bogus;
  bogus.positions.push_back(Position::Start(N(1)));
  EXPECT_THROW(ComposeStrategies(bogus, *ok.strategy, p, N(1), a, a, a), Error);
}

}  // namespace
}  // namespace dgame
