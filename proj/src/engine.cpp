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

#include "engine.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace dgame::internal {
namespace {

std::size_t TableSize(int n, int arity) {
  std::size_t size = 1;
  for (int i = 0; i < arity; ++i) {
    size *= static_cast<std::size_t>(n);
    if (size > (std::size_t{1} << 24)) {
      Fail(ErrorCode::kInvalidArgument, "relation too large for the game engine");
    }
  }
  return size;
}

std::uint8_t SmallHeight(const Ordinal& h) {
  auto v = h.ToNat();
  if (!v || *v > static_cast<std::uint64_t>(kMaxHeight)) {
    Fail(ErrorCode::kInadmissible, "height " + h.ToString() + " is not a small natural");
  }
  return static_cast<std::uint8_t>(*v);
}

}  // namespace

Board::Board(const Structure& m0, const Structure& m1) : m_{&m0, &m1} {
  if (!(m0.vocabulary() == m1.vocabulary())) {
    Fail(ErrorCode::kVocabularyMismatch, "the two boards have different vocabularies");
  }
  for (int side = 0; side < 2; ++side) {
    n_[side] = static_cast<int>(m_[side]->size());
    if (n_[side] > kMaxBoard) {
      Fail(ErrorCode::kInvalidArgument,
           "boards are limited to " + std::to_string(kMaxBoard) + " elements");
    }
  }
  for (const auto& [name, arity] : m0.vocabulary().relations()) {
    Relation rel{arity, {}};
    for (int side = 0; side < 2; ++side) {
      rel.holds[side].assign(TableSize(n_[side], arity), 0);
      for (const Tuple& t : m_[side]->relation(name)) {
        std::size_t code = 0;
        for (int i = arity - 1; i >= 0; --i) code = code * n_[side] + t[i];
        rel.holds[side][code] = 1;
      }
    }
    relations_.push_back(std::move(rel));
  }
  for (const auto& [name, c0] : m0.constants()) {
    constants_.emplace_back(static_cast<int>(c0), static_cast<int>(m1.constants().at(name)));
  }
}

bool Board::CanPair(const std::int8_t* g, Mask dom, int x, int y) const {
  for (const auto& [c0, c1] : constants_) {
    if ((c0 == x) != (c1 == y)) return false;
  }
  if (relations_.empty()) return true;
  int pool0[kMaxBoard + 1], pool1[kMaxBoard + 1];
  int size = 0;
  for (Mask m = dom; m; m &= m - 1) {
    const int a = std::countr_zero(m);
    pool0[size] = a;
    pool1[size++] = g[a];
  }
  pool0[size] = x;
  pool1[size++] = y;
  const int last = size - 1;
  int idx[8];
  for (const Relation& rel : relations_) {
    const int k = rel.arity;
    if (k > 8) Fail(ErrorCode::kInvalidArgument, "relations of arity above 8 are not supported");
    std::fill(idx, idx + k, 0);
    while (true) {
      bool has_x = false;
      std::size_t code0 = 0, code1 = 0;
      for (int i = k - 1; i >= 0; --i) {
        has_x |= idx[i] == last;
        code0 = code0 * n_[0] + pool0[idx[i]];
        code1 = code1 * n_[1] + pool1[idx[i]];
      }
      if (has_x && rel.holds[0][code0] != rel.holds[1][code1]) return false;
      int i = 0;
      while (i < k && ++idx[i] == size) idx[i++] = 0;
      if (i == k) break;
    }
  }
  return true;
}

Core ToCore(const Position& p, const Board& board) {
  Core c;
  auto check = [&](int side, Element e) {
    if (e >= static_cast<Element>(board.size(side))) {
      Fail(ErrorCode::kInvalidArgument, "position refers to an element outside the board");
    }
  };
  for (Element a : p.a0) check(0, a), c.a0 |= Bit(static_cast<int>(a));
  for (Element b : p.a1) check(1, b), c.a1 |= Bit(static_cast<int>(b));
  for (const auto& [x, y] : p.g.pairs()) {
    check(0, x);
    check(1, y);
    c.Pair(static_cast<int>(x), static_cast<int>(y));
  }
  for (const auto& [a, h] : p.h0) check(0, a), c.h0[a] = SmallHeight(h);
  for (const auto& [b, h] : p.h1) check(1, b), c.h1[b] = SmallHeight(h);
  return c;
}

CorePosition ToCorePosition(const Core& c) {
  CorePosition out;
  for (int a = 0; a < kMaxBoard; ++a) {
    if (Has(c.a0, a)) {
      out.a0.insert(static_cast<Element>(a));
      out.h0.emplace(static_cast<Element>(a), Ordinal::FromNat(c.h0[a]));
    }
    if (Has(c.a1, a)) {
      out.a1.insert(static_cast<Element>(a));
      out.h1.emplace(static_cast<Element>(a), Ordinal::FromNat(c.h1[a]));
    }
    if (c.g[a] >= 0) out.g.Insert(static_cast<Element>(a), static_cast<Element>(c.g[a]));
  }
  return out;
}

Position ToPosition(int height, const Core& c) {
  return Position::FromCore(Ordinal::FromNat(static_cast<std::uint64_t>(height)),
                            ToCorePosition(c));
}

Core Canonical(const Core& c, int n) {
  Core r = c;
  const int cap = n + 1;
  for (int a = 0; a < kMaxBoard; ++a) {
    if (!Has(r.a0, a)) {
      r.h0[a] = 0;
    } else if (Has(r.dom, a)) {
      r.h0[a] = 0;
    } else if (r.h0[a] > cap) {
      r.h0[a] = static_cast<std::uint8_t>(cap);
    }
    if (!Has(r.a1, a)) {
      r.h1[a] = 0;
    } else if (Has(r.ran, a)) {
      r.h1[a] = 0;
    } else if (r.h1[a] > cap) {
      r.h1[a] = static_cast<std::uint8_t>(cap);
    }
  }
  return r;
}

Engine::Engine(const Board& board, int theta, int alpha, SolveMode mode, std::uint64_t budget,
               bool symmetry)
    : board_(board),
      theta_(theta),
      alpha_(alpha),
      mode_(mode),
      budget_(budget),
      symmetry_(symmetry && mode == SolveMode::kLazy) {
  if (alpha_ < 1 || alpha_ > kMaxHeight) {
    Fail(ErrorCode::kInadmissible, "alpha out of the engine's range");
  }
  if (symmetry_) {
    for (int side = 0; side < 2; ++side) {
      for (const auto& perm : Automorphisms(board.structure(side))) {
        autos_[side].emplace_back(perm.begin(), perm.end());
      }
    }
  }
}

Core Engine::SymmetryKey(const Core& c) const {
  Core best = c;
  for (const auto& s0 : autos_[0]) {
    for (const auto& s1 : autos_[1]) {
      Core t;
      for (int a = 0; a < board_.size(0); ++a) {
        if (!Has(c.a0, a)) continue;
        t.a0 |= Bit(s0[a]);
        t.h0[s0[a]] = c.h0[a];
        if (c.g[a] >= 0) t.Pair(s0[a], s1[c.g[a]]);
      }
      for (int b = 0; b < board_.size(1); ++b) {
        if (!Has(c.a1, b)) continue;
        t.a1 |= Bit(s1[b]);
        t.h1[s1[b]] = c.h1[b];
      }
      if (CoreLess(t, best)) best = t;
    }
  }
  return best;
}

std::vector<Move> Engine::NormalizedChallenges(int beta, const Core& c) const {
  std::vector<Move> out;
  const Mask free0 = board_.full(0) & ~c.a0, free1 = board_.full(1) & ~c.a1;
  const int k0 = std::min(theta_, Count(free0)), k1 = std::min(theta_, Count(free1));
  ForEachSubsetOfSize(free0, k0, [&](Mask n0) {
    ForEachSubsetOfSize(free1, k1, [&](Mask n1) {
      out.push_back({beta, n0, n1});
      return false;
    });
    return false;
  });
  return out;
}

std::vector<Move> Engine::FullMoves(int n, const Core& c) const {
  std::vector<Move> out;
  const Mask free0 = board_.full(0) & ~c.a0, free1 = board_.full(1) & ~c.a1;
  for (int beta = n - 1; beta >= 0; --beta) {
    ForEachSubsetUpTo(free0, theta_, [&](Mask n0) {
      ForEachSubsetUpTo(free1, theta_, [&](Mask n1) {
        out.push_back({beta, n0, n1});
        return false;
      });
      return false;
    });
  }
  return out;
}

std::vector<Move> Engine::AdamMovesAt(int n, const Core& c) const {
  if (n == 0) return {};
  return mode_ == SolveMode::kFull ? FullMoves(n, c) : NormalizedChallenges(n - 1, c);
}

bool Engine::Win(int n, const Core& c) {
  if (n == 0) return true;
  if (memo_.size() <= static_cast<std::size_t>(n)) memo_.resize(static_cast<std::size_t>(n) + 1);
  const Core key = symmetry_ ? SymmetryKey(c) : c;
  if (auto it = memo_[n].find(key); it != memo_[n].end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  Charge();
  bool win = true;
  for (const Move& m : AdamMovesAt(n, c)) {
    const bool answered = ForEachReply(c, m, [&](const Core& q) { return Win(m.beta, q); });
    if (!answered) {
      win = false;
      break;
    }
  }
  memo_[n].emplace(key, win);
  return win;
}

std::optional<Move> Engine::RefutingMove(int n, const Core& c) {
  for (const Move& m : AdamMovesAt(n, c)) {
    if (!ForEachReply(c, m, [&](const Core& q) { return Win(m.beta, q); })) return m;
  }
  return std::nullopt;
}

std::vector<std::pair<int, Core>> Engine::ExtractStrategy(int n, const Core& start) {
  std::vector<std::unordered_set<Core, CoreHash>> seen(static_cast<std::size_t>(n) + 1);
  std::vector<std::pair<int, Core>> out;
  std::deque<std::pair<int, Core>> queue;
  seen[n].insert(start);
  queue.emplace_back(n, start);
  while (!queue.empty()) {
    auto [h, c] = queue.front();
    queue.pop_front();
    out.emplace_back(h, c);
    std::vector<Move> moves;
    if (mode_ == SolveMode::kFull) {
      moves = FullMoves(h, c);
    } else {
      for (int beta = h - 1; beta >= 0; --beta) {
        auto more = NormalizedChallenges(beta, c);
        moves.insert(moves.end(), more.begin(), more.end());
      }
    }
    for (const Move& m : moves) {
      std::optional<Core> chosen;
      ForEachReply(c, m, [&](const Core& q) {
        if (!Win(m.beta, q)) return false;
        chosen = q;
        return true;
      });
      if (!chosen) Fail(ErrorCode::kInternal, "winning position without a winning reply");
      if (seen[m.beta].insert(*chosen).second) queue.emplace_back(m.beta, *chosen);
    }
  }
  return out;
}

std::vector<std::pair<std::pair<int, Core>, Move>> Engine::ExtractRefutation(
    int n, const Core& start, std::size_t limit) {
  std::vector<std::pair<std::pair<int, Core>, Move>> out;
  std::vector<std::unordered_set<Core, CoreHash>> seen(static_cast<std::size_t>(n) + 1);
  std::deque<std::pair<int, Core>> queue;
  seen[n].insert(start);
  queue.emplace_back(n, start);
  while (!queue.empty() && out.size() < limit) {
    auto [h, c] = queue.front();
    queue.pop_front();
    auto m = RefutingMove(h, c);
    if (!m) Fail(ErrorCode::kInternal, "losing position without a refuting move");
    out.push_back({{h, c}, *m});
    ForEachReply(c, *m, [&](const Core& q) {
      if (m->beta > 0 && seen[m->beta].insert(q).second) queue.emplace_back(m->beta, q);
      return false;
    });
  }
  return out;
}

}  // namespace dgame::internal
