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

#include "dgame/backforth.hpp"

#include <algorithm>
#include <unordered_set>

#include "dgame/errors.hpp"
#include "engine.hpp"

namespace dgame {

using internal::Bit;
using internal::Board;
using internal::Has;
using internal::Mask;

namespace {

// A map packed four bits per source element; 0xF marks "undefined".
using Key = std::uint64_t;
constexpr Key kEmpty = ~Key{0};

struct Map {
  std::array<std::int8_t, internal::kMaxBoard> g;
  Mask dom = 0, ran = 0;

  Map() { g.fill(-1); }
  Key key() const {
    Key k = kEmpty;
    for (Mask d = dom; d; d &= d - 1) {
      const int x = std::countr_zero(d);
      k &= ~(Key{0xF} << (4 * x));
      k |= Key(static_cast<std::uint8_t>(g[x])) << (4 * x);
    }
    return k;
  }
  static Map FromKey(Key k, int n0) {
    Map m;
    for (int x = 0; x < n0; ++x) {
      const int y = static_cast<int>((k >> (4 * x)) & 0xF);
      if (y != 0xF) m.Set(x, y);
    }
    return m;
  }
  void Set(int x, int y) {
    g[x] = static_cast<std::int8_t>(y);
    dom |= Bit(x);
    ran |= Bit(y);
  }
  void Unset(int x) {
    ran &= ~Bit(g[x]);
    dom &= ~Bit(x);
    g[x] = -1;
  }
  int Preimage(int y) const {
    for (Mask d = dom; d; d &= d - 1) {
      if (g[std::countr_zero(d)] == y) return std::countr_zero(d);
    }
    return -1;
  }
};

class Refiner {
 public:
  Refiner(const Structure& m0, const Structure& m1, int theta, std::uint64_t budget)
      : board_(m0, m1), theta_(theta), budget_(budget) {
    if (theta < 1) Fail(ErrorCode::kInadmissible, "theta must be at least 1");
    if (board_.size(1) > 15) {
      Fail(ErrorCode::kInvalidArgument, "back-and-forth levels support at most 15 elements per side");
    }
  }

  std::vector<Key> LevelZero() {
    std::vector<Key> out;
    Map m;
    auto rec = [&](auto&& self, int x) -> void {
      if (x == board_.size(0)) {
        Charge();
        out.push_back(m.key());
        return;
      }
      self(self, x + 1);
      for (int y = 0; y < board_.size(1); ++y) {
        if (Has(m.ran, y) || !board_.CanPair(m.g.data(), m.dom, x, y)) continue;
        m.Set(x, y);
        self(self, x + 1);
        m.Unset(x);
      }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Maps of `level` all of whose theta-bounded obligations can be met inside
  // `level`. Covering a maximal fresh set suffices: levels are closed under
  // restriction, so a cover of a larger set also covers its subsets, and
  // the part of an extension outside the fresh set can be dropped.
  std::vector<Key> Refine(const std::vector<Key>& level) {
    const std::unordered_set<Key> members(level.begin(), level.end());
    std::vector<Key> out;
    for (Key k : level) {
      Map m = Map::FromKey(k, board_.size(0));
      if (Survives(m, members)) out.push_back(k);
    }
    return out;
  }

  int n0() const { return board_.size(0); }

 private:
  void Charge() {
    if (++nodes_ > budget_) throw BudgetExceeded(budget_);
  }

  bool Survives(Map& m, const std::unordered_set<Key>& members) {
    const Mask free0 = board_.full(0) & ~m.dom;
    const Mask free1 = board_.full(1) & ~m.ran;
    const int k0 = std::min(theta_, internal::Count(free0));
    const int k1 = std::min(theta_, internal::Count(free1));
    const bool forth = !internal::ForEachSubsetOfSize(free0, k0, [&](Mask a) {
      Charge();
      return !CoverForth(m, a, members);
    });
    if (!forth) return false;
    return !internal::ForEachSubsetOfSize(free1, k1, [&](Mask b) {
      Charge();
      return !CoverBack(m, b, members);
    });
  }

  bool CoverForth(Map& m, Mask a, const std::unordered_set<Key>& members) {
    if (!a) return members.contains(m.key());
    const int x = std::countr_zero(a);
    for (int y = 0; y < board_.size(1); ++y) {
      if (Has(m.ran, y)) continue;
      m.Set(x, y);
      const bool ok = CoverForth(m, a & (a - 1), members);
      m.Unset(x);
      if (ok) return true;
    }
    return false;
  }

  bool CoverBack(Map& m, Mask b, const std::unordered_set<Key>& members) {
    if (!b) return members.contains(m.key());
    const int y = std::countr_zero(b);
    for (int x = 0; x < board_.size(0); ++x) {
      if (Has(m.dom, x)) continue;
      m.Set(x, y);
      const bool ok = CoverBack(m, b & (b - 1), members);
      m.Unset(x);
      if (ok) return true;
    }
    return false;
  }

  Board board_;
  int theta_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

KarpLevel ToLevel(int gamma, const std::vector<Key>& keys, int n0) {
  KarpLevel level{gamma, {}};
  for (Key k : keys) {
    const Map m = Map::FromKey(k, n0);
    std::vector<PartialMap::Pair> pairs;
    for (int x = 0; x < n0; ++x) {
      if (m.g[x] >= 0) pairs.emplace_back(x, static_cast<Element>(m.g[x]));
    }
    level.maps.push_back(PartialMap::FromPairs(std::move(pairs)));
  }
  std::sort(level.maps.begin(), level.maps.end());
  return level;
}

}  // namespace

const KarpLevel& KarpLevels::At(int gamma) const {
  if (gamma < 0) Fail(ErrorCode::kInvalidArgument, "negative level");
  return levels.at(static_cast<std::size_t>(std::min(gamma, stabilization_rank)));
}

KarpLevels ComputeKarpLevels(const Structure& m0, const Structure& m1, int theta, int up_to,
                             std::uint64_t node_budget) {
  Refiner refiner(m0, m1, theta, node_budget);
  std::vector<Key> current = refiner.LevelZero();
  KarpLevels out;
  out.levels.push_back(ToLevel(0, current, refiner.n0()));
  for (int gamma = 1; up_to < 0 || gamma <= up_to; ++gamma) {
    std::vector<Key> next = refiner.Refine(current);
    if (next == current) break;
    current = std::move(next);
    out.levels.push_back(ToLevel(gamma, current, refiner.n0()));
    out.stabilization_rank = gamma;
  }
  return out;
}

bool KarpEquiv(const Structure& m0, const Structure& m1, int theta, int beta,
               std::uint64_t node_budget) {
  if (beta < 0) Fail(ErrorCode::kInvalidArgument, "beta must be a natural number");
  const KarpLevels levels = ComputeKarpLevels(m0, m1, theta, beta, node_budget);
  return !levels.At(beta).maps.empty();
}

std::optional<int> KarpRank(const Structure& m0, const Structure& m1, int theta,
                            const PartialMap& f, std::uint64_t node_budget) {
  if (!IsPartialIsomorphism(m0, m1, f)) {
    Fail(ErrorCode::kInvalidArgument, "the map is not a partial isomorphism");
  }
  const KarpLevels levels = ComputeKarpLevels(m0, m1, theta, -1, node_budget);
  for (int gamma = levels.stabilization_rank; gamma >= 0; --gamma) {
    const auto& maps = levels.levels[static_cast<std::size_t>(gamma)].maps;
    if (std::binary_search(maps.begin(), maps.end(), f)) {
      if (gamma == levels.stabilization_rank) return std::nullopt;
      return gamma;
    }
  }
  Fail(ErrorCode::kInternal, "partial isomorphism missing from level 0");
}

}  // namespace dgame
