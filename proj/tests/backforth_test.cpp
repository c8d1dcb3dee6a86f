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

#include "dgame/backforth.hpp"
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

std::set<oracle::Map> ToOracle(const KarpLevel& level) {
  std::set<oracle::Map> out;
  for (const PartialMap& f : level.maps) {
    oracle::Map m;
    for (const auto& [x, y] : f.pairs()) m[x] = y;
    out.insert(m);
  }
  return out;
}

TEST(Karp, AgreesWithLiteralRefinement) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 3; ++theta) {
      const KarpLevels got = ComputeKarpLevels(*a, *b, theta);
      const int depth = got.stabilization_rank + 2;
      const auto expected = oracle::KarpLevels(*a, *b, theta, depth);
      for (int gamma = 0; gamma <= depth; ++gamma) {
        ASSERT_EQ(ToOracle(got.At(gamma)), expected[static_cast<std::size_t>(gamma)])
            << Name(*a) << " vs " << Name(*b) << " theta=" << theta << " gamma=" << gamma;
      }
    }
  }
}

TEST(Karp, LevelsAreRestrictionClosedAndDecreasing) {
  const auto grid = SmallGrid(4);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    const KarpLevels k = ComputeKarpLevels(*a, *b, 2);
    for (std::size_t i = 0; i < k.levels.size(); ++i) {
      const auto& maps = k.levels[i].maps;
      ASSERT_TRUE(std::is_sorted(maps.begin(), maps.end()));
      for (const PartialMap& f : maps) {
        for (const auto& [x, y] : f.pairs()) {
          const PartialMap smaller = f.RestrictDomain([x = x](Element e) { return e != x; });
          ASSERT_TRUE(std::binary_search(maps.begin(), maps.end(), smaller));
        }
        if (i > 0) {
          const auto& prev = k.levels[i - 1].maps;
          ASSERT_TRUE(std::binary_search(prev.begin(), prev.end(), f));
        }
      }
    }
  }
}

TEST(Karp, LevelsComposeAndInvert) {
  const auto grid = SmallGrid(3);
  for (const auto& m0 : grid) {
    for (const auto& m1 : grid) {
      for (const auto& m2 : grid) {
        if (!(m0.vocabulary() == m1.vocabulary()) || !(m1.vocabulary() == m2.vocabulary())) continue;
        const KarpLevels k01 = ComputeKarpLevels(m0, m1, 1, 3);
        const KarpLevels k12 = ComputeKarpLevels(m1, m2, 1, 3);
        const KarpLevels k02 = ComputeKarpLevels(m0, m2, 1, 3);
        const KarpLevels k10 = ComputeKarpLevels(m1, m0, 1, 3);
        for (int gamma = 0; gamma <= 3; ++gamma) {
          const auto& target = k02.At(gamma).maps;
          const auto& back = k10.At(gamma).maps;
          for (const PartialMap& f : k01.At(gamma).maps) {
            ASSERT_TRUE(std::binary_search(back.begin(), back.end(), f.Inverse()));
            for (const PartialMap& g : k12.At(gamma).maps) {
              PartialMap h;
              for (const auto& [x, y] : f.pairs()) {
                if (auto z = g.Image(y)) h.Insert(x, *z);
              }
              ASSERT_TRUE(std::binary_search(target.begin(), target.end(), h))
                  << Name(m0) << ", " << Name(m1) << ", " << Name(m2) << " gamma=" << gamma;
            }
          }
        }
      }
    }
  }
}

TEST(Karp, LinearOrdersFollowTheClassicalBound) {
  EXPECT_TRUE(KarpEquiv(LinearOrder(3), LinearOrder(4), 1, 2));
  EXPECT_FALSE(KarpEquiv(LinearOrder(3), LinearOrder(4), 1, 3));
  EXPECT_TRUE(KarpEquiv(LinearOrder(7), LinearOrder(8), 1, 3));
  EXPECT_FALSE(KarpEquiv(LinearOrder(2), LinearOrder(3), 1, 2));
}

TEST(Karp, PureSetsAndLargerChallenges) {
  EXPECT_TRUE(KarpEquiv(PureSet(2), PureSet(3), 1, 2));
  EXPECT_FALSE(KarpEquiv(PureSet(2), PureSet(3), 1, 3));
  EXPECT_FALSE(KarpEquiv(PureSet(2), PureSet(3), 3, 1));
  EXPECT_TRUE(KarpEquiv(PureSet(3), PureSet(3), 3, 10));
}

TEST(Karp, RankOfIndividualMaps) {
  const Structure a = LinearOrder(3), b = LinearOrder(4);
  EXPECT_EQ(KarpRank(a, b, 1, PartialMap()), std::optional<int>(2));
  EXPECT_EQ(KarpRank(a, a, 1, PartialMap()), std::nullopt);
  EXPECT_THROW(KarpRank(a, b, 1, PartialMap::FromPairs({{0, 1}, {1, 0}})), Error);
}

TEST(Karp, AtClampsToTheStableLevel) {
  const KarpLevels k = ComputeKarpLevels(Cycle(2), Cycle(3), 1);
  EXPECT_EQ(&k.At(k.stabilization_rank + 5), &k.levels.back());
  EXPECT_EQ(ComputeKarpLevels(Cycle(2), Cycle(3), 1, 0).levels.size(), 1u);
}

TEST(Karp, EquivalenceAtTwiceTheHeightGivesEveTheGame) {
  const auto grid = SmallGrid(3);
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      const KarpLevels k = ComputeKarpLevels(*a, *b, theta);
      for (int beta = 0; beta <= 3; ++beta) {
        if (k.At(2 * beta).maps.empty()) continue;
        SolveOptions o;
        o.extract = false;
        ASSERT_EQ(Solve(*a, *b, {Ordinal::FromNat(beta), theta, Ordinal::One()}, o).winner, Player::kEve)
            << Name(*a) << " vs " << Name(*b);
      }
    }
  }
}

TEST(Karp, BudgetIsEnforced) {
  EXPECT_THROW(ComputeKarpLevels(LinearOrder(4), LinearOrder(5), 2, -1, 1), Error);
}

}  // namespace
}  // namespace dgame
