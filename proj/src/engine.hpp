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

// Compact game engine shared by the solver, the strategy tools and the
// interactive session. Boards are limited to kMaxBoard elements per side and
// all heights are small naturals.

#ifndef DGAME_SRC_ENGINE_HPP_
#define DGAME_SRC_ENGINE_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgame/errors.hpp"
#include "dgame/game.hpp"
#include "dgame/structure.hpp"

namespace dgame::internal {

constexpr int kMaxBoard = 16;
constexpr int kMaxHeight = 250;
using Mask = std::uint32_t;

inline int Count(Mask m) { return std::popcount(m); }
inline bool Has(Mask m, int i) { return (m >> i) & 1u; }
inline Mask Bit(int i) { return Mask{1} << i; }

// Calls f(subset) for every subset of `pool` with exactly k elements, in
// increasing numeric order. Stops early when f returns true.
template <typename F>
bool ForEachSubsetOfSize(Mask pool, int k, F&& f) {
  int idx[kMaxBoard];
  int n = 0;
  for (Mask m = pool; m; m &= m - 1) idx[n++] = std::countr_zero(m);
  if (k > n) return false;
  if (k == 0) return f(Mask{0});
  int c[kMaxBoard];
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    Mask s = 0;
    for (int i = 0; i < k; ++i) s |= Bit(idx[c[i]]);
    if (f(s)) return true;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Every subset of `pool` with at most k elements, largest first.
template <typename F>
bool ForEachSubsetUpTo(Mask pool, int k, F&& f) {
  for (int size = std::min(k, Count(pool)); size >= 0; --size) {
    if (ForEachSubsetOfSize(pool, size, f)) return true;
  }
  return false;
}

// Precomputed atomic facts of a pair of boards.
class Board {
 public:
  Board(const Structure& m0, const Structure& m1);

  int size(int side) const { return n_[side]; }
  Mask full(int side) const { return n_[side] == 32 ? ~Mask{0} : Bit(n_[side]) - 1; }
  const Structure& structure(int side) const { return *m_[side]; }

  // Does g + (x -> y) remain a partial isomorphism? g is indexed by board-0
  // elements (-1 = unmatched) and `dom` is its domain.
  bool CanPair(const std::int8_t* g, Mask dom, int x, int y) const;

 private:
  struct Relation {
    int arity;
    std::vector<std::uint8_t> holds[2];
  };
  const Structure* m_[2];
  int n_[2];
  std::vector<Relation> relations_;
  std::vector<std::pair<int, int>> constants_;
};

// A position without its ordinal height, in fixed-size form.
struct Core {
  Mask a0 = 0, a1 = 0, dom = 0, ran = 0;
  std::array<std::int8_t, kMaxBoard> g;
  std::array<std::uint8_t, kMaxBoard> h0{}, h1{};

  Core() { g.fill(-1); }
  void Pair(int x, int y) {
    g[x] = static_cast<std::int8_t>(y);
    dom |= Bit(x);
    ran |= Bit(y);
  }
  friend bool operator==(const Core&, const Core&) = default;
};

struct CoreHash {
  std::size_t operator()(const Core& c) const noexcept {
    static_assert(sizeof(Core) == 64);
    std::uint64_t w[8];
    std::memcpy(w, &c, sizeof w);
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t x : w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

inline bool CoreLess(const Core& a, const Core& b) {
  return std::memcmp(&a, &b, sizeof(Core)) < 0;
}

struct Move {
  int beta = 0;
  Mask b0 = 0, b1 = 0;  // fresh challenged elements
};

Core ToCore(const Position& p, const Board& board);
Position ToPosition(int height, const Core& c);
CorePosition ToCorePosition(const Core& c);
// Lazy canonical form at height n: matched elements at 0, unmatched heights
// capped at n + 1.
Core Canonical(const Core& c, int n);

// Heights of fresh and decremented elements in the w-length game are never
// capped; kUnbounded stands in for the residual height there.
constexpr int kUnbounded = kMaxHeight + 1;

class Engine {
 public:
  Engine(const Board& board, int theta, int alpha, SolveMode mode, std::uint64_t budget,
         bool symmetry);

  // Eve wins from (n, c). In lazy mode c must be canonical for n.
  bool Win(int n, const Core& c);
  // A move no reply of which is winning for Eve, if any.
  std::optional<Move> RefutingMove(int n, const Core& c);
  std::vector<Move> AdamMovesAt(int n, const Core& c) const;
  // Maximal fresh challenges with the given beta'.
  std::vector<Move> NormalizedChallenges(int beta, const Core& c) const;
  std::vector<Move> FullMoves(int n, const Core& c) const;

  // Calls f(q) for every reply of the configured kind; stops when f returns
  // true and reports whether it did.
  template <typename F>
  bool ForEachReply(const Core& c, const Move& m, F&& f) const {
    return mode_ == SolveMode::kLazy ? ForEachLazyReply(c, m, f) : ForEachFullReply(c, m, f);
  }
  template <typename F>
  bool ForEachLazyReply(const Core& c, const Move& m, F&& f) const;
  template <typename F>
  bool ForEachFullReply(const Core& c, const Move& m, F&& f) const;

  // Eve's positional strategy from (n, start) as (height, core) pairs.
  std::vector<std::pair<int, Core>> ExtractStrategy(int n, const Core& start);
  std::vector<std::pair<std::pair<int, Core>, Move>> ExtractRefutation(int n, const Core& start,
                                                                       std::size_t limit);

  const SolveStats& stats() const { return stats_; }
  void Charge() {
    if (++stats_.nodes > budget_) throw BudgetExceeded(budget_);
  }
  SolveMode mode() const { return mode_; }
  int alpha() const { return alpha_; }
  const Board& board() const { return board_; }

 private:
  Core SymmetryKey(const Core& c) const;

  const Board& board_;
  int theta_;
  int alpha_;
  SolveMode mode_;
  std::uint64_t budget_;
  bool symmetry_;
  std::vector<std::vector<std::int8_t>> autos_[2];
  std::vector<std::unordered_map<Core, bool, CoreHash>> memo_;
  SolveStats stats_;
};

template <typename F>
bool Engine::ForEachLazyReply(const Core& c, const Move& m, F&& f) const {
  const int nq = m.beta;
  const int fresh_height = std::min(alpha_ - 1, nq + 1);
  const int cap = nq + 1;
  Core q = c;
  const Mask n0 = m.b0 & ~c.a0, n1 = m.b1 & ~c.a1;
  for (int a = 0; a < board_.size(0); ++a) {
    if (Has(c.a0, a) && !Has(c.dom, a)) q.h0[a] = static_cast<std::uint8_t>(c.h0[a] - 1);
    if (Has(n0, a)) q.h0[a] = static_cast<std::uint8_t>(fresh_height);
  }
  for (int b = 0; b < board_.size(1); ++b) {
    if (Has(c.a1, b) && !Has(c.ran, b)) q.h1[b] = static_cast<std::uint8_t>(c.h1[b] - 1);
    if (Has(n1, b)) q.h1[b] = static_cast<std::uint8_t>(fresh_height);
  }
  q.a0 |= n0;
  q.a1 |= n1;
  Mask forced0 = 0, forced1 = 0;
  for (int a = 0; a < board_.size(0); ++a) {
    if (Has(q.a0, a) && !Has(q.dom, a) && q.h0[a] == 0) forced0 |= Bit(a);
  }
  for (int b = 0; b < board_.size(1); ++b) {
    if (Has(q.a1, b) && !Has(q.ran, b) && q.h1[b] == 0) forced1 |= Bit(b);
  }
  auto finish = [&](Core r) {
    for (int a = 0; a < board_.size(0); ++a) {
      if (!Has(r.a0, a)) continue;
      if (Has(r.dom, a)) {
        r.h0[a] = 0;
      } else if (r.h0[a] > cap) {
        r.h0[a] = static_cast<std::uint8_t>(cap);
      }
    }
    for (int b = 0; b < board_.size(1); ++b) {
      if (!Has(r.a1, b)) continue;
      if (Has(r.ran, b)) {
        r.h1[b] = 0;
      } else if (r.h1[b] > cap) {
        r.h1[b] = static_cast<std::uint8_t>(cap);
      }
    }
    return f(r);
  };
  // Match the forced elements one at a time; partners may be anything not
  // yet matched, and become matched (height 0) themselves.
  auto rec = [&](auto&& self, const Core& r) -> bool {
    const Mask open0 = forced0 & ~r.dom, open1 = forced1 & ~r.ran;
    if (!open0 && !open1) return finish(r);
    if (open0) {
      const int x = std::countr_zero(open0);
      for (int y = 0; y < board_.size(1); ++y) {
        if (Has(r.ran, y) || !board_.CanPair(r.g.data(), r.dom, x, y)) continue;
        Core s = r;
        s.Pair(x, y);
        s.a1 |= Bit(y);
        s.h0[x] = 0;
        s.h1[y] = 0;
        if (self(self, s)) return true;
      }
      return false;
    }
    const int y = std::countr_zero(open1);
    for (int x = 0; x < board_.size(0); ++x) {
      if (Has(r.dom, x) || !board_.CanPair(r.g.data(), r.dom, x, y)) continue;
      Core s = r;
      s.Pair(x, y);
      s.a0 |= Bit(x);
      s.h0[x] = 0;
      s.h1[y] = 0;
      if (self(self, s)) return true;
    }
    return false;
  };
  return rec(rec, q);
}

template <typename F>
bool Engine::ForEachFullReply(const Core& c, const Move& m, F&& f) const {
  const Mask r0 = c.a0 | m.b0, r1 = c.a1 | m.b1;
  const Mask spare0 = board_.full(0) & ~r0, spare1 = board_.full(1) & ~r1;
  const int n0 = board_.size(0), n1 = board_.size(1);

  // Heights for every element of A0' then A1', largest values first.
  auto heights = [&](const Core& base) -> bool {
    int elems[2 * kMaxBoard];
    int sides[2 * kMaxBoard];
    int count = 0;
    for (int a = 0; a < n0; ++a) {
      if (Has(base.a0, a)) elems[count] = a, sides[count++] = 0;
    }
    for (int b = 0; b < n1; ++b) {
      if (Has(base.a1, b)) elems[count] = b, sides[count++] = 1;
    }
    Core r = base;
    auto rec = [&](auto&& self, int i) -> bool {
      if (i == count) return f(r);
      const int e = elems[i];
      const bool side1 = sides[i] == 1;
      const bool old = side1 ? Has(c.a1, e) : Has(c.a0, e);
      const bool matched = side1 ? Has(r.ran, e) : Has(r.dom, e);
      int top;
      if (old) {
        const int h = side1 ? c.h1[e] : c.h0[e];
        top = h > 0 ? h - 1 : 0;
      } else {
        top = alpha_ - 1;
      }
      for (int v = top; v >= (matched ? 0 : 1); --v) {
        (side1 ? r.h1[e] : r.h0[e]) = static_cast<std::uint8_t>(v);
        if (self(self, i + 1)) return true;
      }
      return false;
    };
    return rec(rec, 0);
  };

  // Extensions of g: each unmatched element of A0' stays unmatched or picks
  // an unmatched partner in A1'.
  auto maps = [&](const Core& base) -> bool {
    const Mask free0 = base.a0 & ~base.dom;
    auto rec = [&](auto&& self, const Core& r, Mask todo) -> bool {
      if (!todo) return heights(r);
      const int x = std::countr_zero(todo);
      const Mask rest = todo & (todo - 1);
      if (self(self, r, rest)) return true;
      for (int y = 0; y < n1; ++y) {
        if (!Has(r.a1, y) || Has(r.ran, y)) continue;
        if (!board_.CanPair(r.g.data(), r.dom, x, y)) continue;
        Core s = r;
        s.Pair(x, y);
        if (self(self, s, rest)) return true;
      }
      return false;
    };
    return rec(rec, base, free0);
  };

  for (int k0 = 0; k0 <= Count(spare0); ++k0) {
    const bool stop = ForEachSubsetOfSize(spare0, k0, [&](Mask e0) {
      for (int k1 = 0; k1 <= Count(spare1); ++k1) {
        const bool inner = ForEachSubsetOfSize(spare1, k1, [&](Mask e1) {
          Core base = c;
          base.a0 = r0 | e0;
          base.a1 = r1 | e1;
          for (int a = 0; a < n0; ++a) {
            if (!Has(base.a0, a)) base.h0[a] = 0;
          }
          for (int b = 0; b < n1; ++b) {
            if (!Has(base.a1, b)) base.h1[b] = 0;
          }
          return maps(base);
        });
        if (inner) return true;
      }
      return false;
    });
    if (stop) return true;
  }
  return false;
}

}  // namespace dgame::internal

#endif  // DGAME_SRC_ENGINE_HPP_
