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

#include "dgame/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "dgame/errors.hpp"
#include "engine.hpp"

namespace dgame {

using internal::Bit;
using internal::Board;
using internal::Core;
using internal::CoreHash;
using internal::Count;
using internal::Engine;
using internal::Has;
using internal::Mask;
using internal::Move;

namespace {

constexpr std::uint64_t kUnlimited = ~std::uint64_t{0};

Mask ToMask(const ElementSet& s, std::size_t size) {
  Mask m = 0;
  for (Element e : s) {
    if (e >= size) Fail(ErrorCode::kInvalidArgument, "element index outside the board");
    m |= Bit(static_cast<int>(e));
  }
  return m;
}

ElementSet ToSet(Mask m) {
  ElementSet s;
  for (; m; m &= m - 1) s.insert(static_cast<Element>(std::countr_zero(m)));
  return s;
}

int FiniteHeight(const Ordinal& o, const char* what) {
  auto v = o.ToNat();
  if (!v || *v > static_cast<std::uint64_t>(internal::kMaxHeight)) {
    Fail(ErrorCode::kInadmissible, std::string(what) + " " + o.ToString() +
                                       " must be a natural number no larger than " +
                                       std::to_string(internal::kMaxHeight));
  }
  return static_cast<int>(*v);
}

// Heights at or above the residual height plus one are interchangeable, so the
// engine works with alpha capped just above the largest height still relevant.
int EffectiveAlpha(const Ordinal& alpha, int height) {
  const int cap = height + 2;
  if (!alpha.IsFinite()) return cap;
  return static_cast<int>(std::min<std::uint64_t>(*alpha.ToNat(), static_cast<std::uint64_t>(cap)));
}

// Every canonical core: matched elements at height 0, unmatched ones in
// [1, alpha - 1].
std::vector<Core> CanonicalCores(const Board& board, int alpha, Engine& budget) {
  std::vector<Core> out;
  const int n0 = board.size(0), n1 = board.size(1);
  auto side1 = [&](auto&& self, Core& c, int b) -> void {
    if (b == n1) {
      budget.Charge();
      out.push_back(c);
      return;
    }
    if (Has(c.ran, b)) {
      self(self, c, b + 1);
      return;
    }
    self(self, c, b + 1);
    c.a1 |= Bit(b);
    for (int h = 1; h < alpha; ++h) {
      c.h1[b] = static_cast<std::uint8_t>(h);
      self(self, c, b + 1);
    }
    c.h1[b] = 0;
    c.a1 &= ~Bit(b);
  };
  auto side0 = [&](auto&& self, Core& c, int a) -> void {
    if (a == n0) {
      side1(side1, c, 0);
      return;
    }
    self(self, c, a + 1);
    c.a0 |= Bit(a);
    for (int h = 1; h < alpha; ++h) {
      c.h0[a] = static_cast<std::uint8_t>(h);
      self(self, c, a + 1);
    }
    c.h0[a] = 0;
    for (int y = 0; y < n1; ++y) {
      if (Has(c.ran, y) || !board.CanPair(c.g.data(), c.dom, a, y)) continue;
      Core saved = c;
      c.Pair(a, y);
      c.a1 |= Bit(y);
      self(self, c, a + 1);
      c = saved;
    }
    c.a0 &= ~Bit(a);
  };
  Core c;
  side0(side0, c, 0);
  return out;
}

struct Indexed {
  const Position* pos;
  Mask a0, a1;
};

std::map<std::uint64_t, std::vector<Indexed>> IndexByHeight(const PositionalStrategy& k,
                                                           const Board& board) {
  std::map<std::uint64_t, std::vector<Indexed>> out;
  for (const Position& p : k.positions) {
    auto h = p.height.ToNat();
    if (!h) Fail(ErrorCode::kInadmissible, "strategies with infinite heights cannot be checked");
    out[*h].push_back({&p, ToMask(p.a0, static_cast<std::size_t>(board.size(0))),
                       ToMask(p.a1, static_cast<std::size_t>(board.size(1)))});
  }
  return out;
}

std::string Show(const Position& p) {
  std::string s = "(" + p.height.ToString() + ", {";
  for (Element a : p.a0) s += " " + std::to_string(a) + ":" + p.h0.at(a).ToString();
  s += " }, {";
  for (Element b : p.a1) s += " " + std::to_string(b) + ":" + p.h1.at(b).ToString();
  s += " }, g={";
  for (const auto& [x, y] : p.g.pairs()) s += " " + std::to_string(x) + "->" + std::to_string(y);
  return s + " })";
}

}  // namespace

const char* PlayerName(Player p) { return p == Player::kEve ? "eve" : "adam"; }

Position Position::Start(const Ordinal& beta) {
  Position p;
  p.height = beta;
  return p;
}

Position Position::FromCore(const Ordinal& height, const CorePosition& core) {
  return Position{height, core.a0, core.a1, core.g, core.h0, core.h1};
}

std::string Describe(Violation v) {
  switch (v) {
    case Violation::kNone: return "ok";
    case Violation::kHeightAboveBeta: return "position height exceeds beta";
    case Violation::kHeightDomain: return "height function must be defined exactly on A0 and A1";
    case Violation::kMapOutsideSets: return "g must map A0 into A1";
    case Violation::kNotPartialIsomorphism: return "g is not a partial isomorphism";
    case Violation::kHeightNotBelowAlpha: return "every height must be below alpha";
    case Violation::kUnmatchedZero: return "an element of height 0 must be matched by g";
    case Violation::kHeightNotDecreased: return "the new position must have a smaller height";
    case Violation::kWrongHeight: return "the reply must have the height Adam chose";
    case Violation::kSetsShrunk: return "A0 and A1 may only grow";
    case Violation::kMapNotExtended: return "g must extend the previous g";
    case Violation::kHeightIncreased: return "element heights may not increase";
    case Violation::kPositiveNotDecreased: return "positive element heights must strictly decrease";
    case Violation::kChallengeNotCovered: return "the reply must contain Adam's challenge";
  }
  return "unknown";
}

const char* SolveModeName(SolveMode m) {
  switch (m) {
    case SolveMode::kLazy: return "lazy";
    case SolveMode::kNormalized: return "normalized";
    case SolveMode::kFull: return "full";
  }
  return "lazy";
}

SolveMode ParseSolveMode(const std::string& text) {
  if (text == "lazy") return SolveMode::kLazy;
  if (text == "normalized") return SolveMode::kNormalized;
  if (text == "full") return SolveMode::kFull;
  Fail(ErrorCode::kInvalidArgument, "unknown mode '" + text + "' (lazy, normalized, full)");
}

Violation CheckPosition(const Position& p, const GameParams& params, const Structure& m0,
                        const Structure& m1) {
  auto in = [](Element e, const Structure& s) {
    if (e >= s.size()) Fail(ErrorCode::kInvalidArgument, "position refers to an unknown element");
  };
  for (Element a : p.a0) in(a, m0);
  for (Element b : p.a1) in(b, m1);
  for (const auto& [a, h] : p.h0) in(a, m0);
  for (const auto& [b, h] : p.h1) in(b, m1);
  for (const auto& [x, y] : p.g.pairs()) in(x, m0), in(y, m1);

  if (p.height > params.beta) return Violation::kHeightAboveBeta;
  auto same_domain = [](const ElementSet& s, const HeightMap& h) {
    return s.size() == h.size() &&
           std::equal(s.begin(), s.end(), h.begin(), [](Element e, const auto& kv) { return e == kv.first; });
  };
  if (!same_domain(p.a0, p.h0) || !same_domain(p.a1, p.h1)) return Violation::kHeightDomain;
  for (const auto& [x, y] : p.g.pairs()) {
    if (!p.a0.contains(x) || !p.a1.contains(y)) return Violation::kMapOutsideSets;
  }
  if (!IsPartialIsomorphism(m0, m1, p.g)) return Violation::kNotPartialIsomorphism;
  for (const auto* h : {&p.h0, &p.h1}) {
    for (const auto& [e, v] : *h) {
      if (!(v < params.alpha)) return Violation::kHeightNotBelowAlpha;
    }
  }
  for (const auto& [a, v] : p.h0) {
    if (v.IsZero() && !p.g.InDomain(a)) return Violation::kUnmatchedZero;
  }
  for (const auto& [b, v] : p.h1) {
    if (v.IsZero() && !p.g.InRange(b)) return Violation::kUnmatchedZero;
  }
  return Violation::kNone;
}

bool ValidatePosition(const Position& p, const GameParams& params, const Structure& m0,
                      const Structure& m1) {
  return CheckPosition(p, params, m0, m1) == Violation::kNone;
}

Violation CheckExtension(const Position& q, const Position& p) {
  if (!(q.height < p.height)) return Violation::kHeightNotDecreased;
  if (!std::includes(q.a0.begin(), q.a0.end(), p.a0.begin(), p.a0.end()) ||
      !std::includes(q.a1.begin(), q.a1.end(), p.a1.begin(), p.a1.end())) {
    return Violation::kSetsShrunk;
  }
  if (!p.g.IsSubsetOf(q.g)) return Violation::kMapNotExtended;
  for (const auto* pair : {&p.h0, &p.h1}) {
    const HeightMap& hq = pair == &p.h0 ? q.h0 : q.h1;
    for (const auto& [e, hp] : *pair) {
      auto it = hq.find(e);
      if (it == hq.end()) return Violation::kSetsShrunk;
      if (hp.IsZero()) {
        if (!it->second.IsZero()) return Violation::kHeightIncreased;
      } else if (!(it->second < hp)) {
        return it->second > hp ? Violation::kHeightIncreased : Violation::kPositiveNotDecreased;
      }
    }
  }
  return Violation::kNone;
}

bool Extends(const Position& q, const Position& p) { return CheckExtension(q, p) == Violation::kNone; }

std::vector<AdamMove> AdamMoves(const Position& p, const GameParams& params, const Structure& m0,
                                const Structure& m1, AdamMode mode) {
  if (p.height.IsZero()) return {};
  const Board board(m0, m1);
  Core c;
  c.a0 = ToMask(p.a0, m0.size());
  c.a1 = ToMask(p.a1, m1.size());
  Engine engine(board, params.theta, 1, SolveMode::kLazy, kUnlimited, false);
  std::vector<AdamMove> out;
  if (mode == AdamMode::kNormalized) {
    if (p.height.IsLimit()) {
      Fail(ErrorCode::kInadmissible, "normalized moves are undefined below a limit height");
    }
    const Ordinal beta = p.height.Predecessor();
    for (const Move& m : engine.NormalizedChallenges(0, c)) {
      out.push_back({beta, ToSet(m.b0), ToSet(m.b1)});
    }
    return out;
  }
  const int n = FiniteHeight(p.height, "position height");
  for (int beta = 0; beta < n; ++beta) {
    internal::ForEachSubsetUpTo(board.full(0), params.theta, [&](Mask b0) {
      internal::ForEachSubsetUpTo(board.full(1), params.theta, [&](Mask b1) {
        out.push_back({Ordinal::FromNat(static_cast<std::uint64_t>(beta)), ToSet(b0), ToSet(b1)});
        return false;
      });
      return false;
    });
  }
  return out;
}

bool IsLegalMove(const Position& p, const AdamMove& move, const GameParams& params,
                 const Structure& m0, const Structure& m1) {
  if (!(move.beta < p.height)) return false;
  if (move.b0.size() > static_cast<std::size_t>(params.theta) ||
      move.b1.size() > static_cast<std::size_t>(params.theta)) {
    return false;
  }
  return (move.b0.empty() || *move.b0.rbegin() < m0.size()) &&
         (move.b1.empty() || *move.b1.rbegin() < m1.size());
}

std::vector<Position> EveReplies(const Position& p, const AdamMove& move, const GameParams& params,
                                 const Structure& m0, const Structure& m1, EveMode mode) {
  if (!IsLegalMove(p, move, params, m0, m1)) return {};
  const Board board(m0, m1);
  const int beta = FiniteHeight(move.beta, "reply height");
  const int alpha = params.alpha.IsFinite() ? FiniteHeight(params.alpha, "alpha") : beta + 2;
  const Core c = internal::ToCore(p, board);
  Engine engine(board, params.theta, alpha,
                mode == EveMode::kLazy ? SolveMode::kLazy : SolveMode::kFull, kUnlimited, false);
  const Move m{beta, ToMask(move.b0, m0.size()), ToMask(move.b1, m1.size())};
  std::vector<Position> out;
  engine.ForEachReply(c, m, [&](const Core& q) {
    out.push_back(internal::ToPosition(beta, q));
    return false;
  });
  return out;
}

Violation CheckReply(const Position& q, const Position& p, const AdamMove& move,
                     const GameParams& params, const Structure& m0, const Structure& m1) {
  if (auto v = CheckPosition(q, params, m0, m1); v != Violation::kNone) return v;
  if (q.height != move.beta) return Violation::kWrongHeight;
  if (auto v = CheckExtension(q, p); v != Violation::kNone) return v;
  if (!std::includes(q.a0.begin(), q.a0.end(), move.b0.begin(), move.b0.end()) ||
      !std::includes(q.a1.begin(), q.a1.end(), move.b1.begin(), move.b1.end())) {
    return Violation::kChallengeNotCovered;
  }
  return Violation::kNone;
}

bool PositionalStrategy::Contains(const Position& p) const {
  return std::binary_search(positions.begin(), positions.end(), p);
}

void PositionalStrategy::Normalize() {
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
}

void CheckAdmissible(const GameParams& params) {
  if (params.theta < 1) Fail(ErrorCode::kInadmissible, "theta must be at least 1");
  if (params.alpha.IsZero()) Fail(ErrorCode::kInadmissible, "alpha must be at least 1");
  const Ordinal omega = Ordinal::Omega();
  if (params.beta > omega) {
    Fail(ErrorCode::kInadmissible,
         "beta = " + params.beta.ToString() + " is above w; only finite beta or w can be solved");
  }
  if (params.alpha > omega) {
    Fail(ErrorCode::kInadmissible,
         "alpha = " + params.alpha.ToString() + " is above w; only finite alpha or w can be solved");
  }
}

SolveResult Solve(const Structure& m0, const Structure& m1, const GameParams& params,
                  const SolveOptions& options) {
  CheckAdmissible(params);
  const Board board(m0, m1);
  SolveResult result;
  if (!params.beta.IsFinite()) {
    if (!params.alpha.IsFinite()) {
      // Adam's first move names some n < w; fresh elements then get height
      // n + 1 < w and can never be forced down to 0.
      result.winner = Player::kEve;
      return result;
    }
    SolveOptions inner = options;
    inner.mode = SolveMode::kLazy;
    WinningHeights wh = ComputeWinningHeights(m0, m1, params.theta, params.alpha, inner);
    const auto& stable = wh.levels.back();
    const bool start_in = std::binary_search(stable.begin(), stable.end(), CorePosition{});
    result.winner = start_in ? Player::kEve : Player::kAdam;
    result.stabilization_rank = wh.stabilization_rank;
    return result;
  }
  const int n = FiniteHeight(params.beta, "beta");
  Engine engine(board, params.theta, EffectiveAlpha(params.alpha, n), options.mode,
                options.node_budget, options.symmetry);
  const Core start;
  const bool eve = engine.Win(n, start);
  result.winner = eve ? Player::kEve : Player::kAdam;
  if (options.extract) {
    if (eve) {
      PositionalStrategy k;
      for (const auto& [h, c] : engine.ExtractStrategy(n, start)) {
        k.positions.push_back(internal::ToPosition(h, c));
      }
      k.Normalize();
      result.strategy = std::move(k);
    } else {
      for (const auto& [pos, m] : engine.ExtractRefutation(n, start, options.refutation_limit)) {
        result.refutation.push_back(
            {internal::ToPosition(pos.first, pos.second),
             AdamMove{Ordinal::FromNat(static_cast<std::uint64_t>(m.beta)), ToSet(m.b0 | 0),
                      ToSet(m.b1)}});
      }
    }
  }
  result.stats = engine.stats();
  return result;
}

Player SolveFrom(const Position& p, const Structure& m0, const Structure& m1,
                 const GameParams& params, const SolveOptions& options) {
  CheckAdmissible(params);
  if (auto v = CheckPosition(p, params, m0, m1); v != Violation::kNone) {
    Fail(ErrorCode::kInvalidArgument, "invalid position: " + Describe(v));
  }
  const Board board(m0, m1);
  const int n = FiniteHeight(p.height, "position height");
  const int alpha = EffectiveAlpha(params.alpha, n);
  // Unmatched heights above n + 1 can never be forced to 0; cap them so they
  // fit below the effective alpha.
  HeightMap h0, h1;
  auto cap = [&](const HeightMap& h) {
    HeightMap out;
    for (const auto& [e, v] : h) out.emplace(e, Min(v, Ordinal::FromNat(static_cast<std::uint64_t>(alpha - 1))));
    return out;
  };
  Position capped = p;
  capped.h0 = cap(p.h0);
  capped.h1 = cap(p.h1);
  Core c = internal::ToCore(capped, board);
  if (options.mode == SolveMode::kLazy) c = internal::Canonical(c, n);
  Engine engine(board, params.theta, alpha, options.mode, options.node_budget, options.symmetry);
  return engine.Win(n, c) ? Player::kEve : Player::kAdam;
}

PositionalStrategy EveTrivialStrategy(const GameParams& params, const Structure& m0,
                                      const Structure& m1) {
  if (params.beta > params.alpha) {
    Fail(ErrorCode::kInvalidArgument, "the trivial strategy needs beta <= alpha");
  }
  const int beta = FiniteHeight(params.beta, "beta");
  const Board board(m0, m1);
  PositionalStrategy k;
  k.positions.push_back(Position::Start(params.beta));
  for (int height = 0; height < beta; ++height) {
    // After beta - height moves at most theta fresh elements per move and
    // side have been challenged; no other sets are reachable.
    const int reach = params.theta * (beta - height);
    const Ordinal h = Ordinal::FromNat(static_cast<std::uint64_t>(height + 1));
    internal::ForEachSubsetUpTo(board.full(0), reach, [&](Mask a0) {
      internal::ForEachSubsetUpTo(board.full(1), reach, [&](Mask a1) {
        Position p;
        p.height = Ordinal::FromNat(static_cast<std::uint64_t>(height));
        p.a0 = ToSet(a0);
        p.a1 = ToSet(a1);
        for (Element a : p.a0) p.h0.emplace(a, h);
        for (Element b : p.a1) p.h1.emplace(b, h);
        k.positions.push_back(std::move(p));
        return false;
      });
      return false;
    });
  }
  k.Normalize();
  return k;
}

StrategyCheck CheckEveStrategy(const PositionalStrategy& k, const GameParams& params,
                               const Structure& m0, const Structure& m1, AdamMode mode) {
  const Position start = Position::Start(params.beta);
  if (std::find(k.positions.begin(), k.positions.end(), start) == k.positions.end()) {
    return {false, "the starting position is missing"};
  }
  for (const Position& p : k.positions) {
    if (auto v = CheckPosition(p, params, m0, m1); v != Violation::kNone) {
      return {false, "invalid position " + Show(p) + ": " + Describe(v)};
    }
  }
  const Board board(m0, m1);
  const auto by_height = IndexByHeight(k, board);
  Engine engine(board, params.theta, 1, SolveMode::kLazy, kUnlimited, false);
  for (const auto& [height, list] : by_height) {
    for (const Indexed& p : list) {
      if (height == 0) continue;
      Core c;
      c.a0 = p.a0;
      c.a1 = p.a1;
      const int n = static_cast<int>(height);
      const auto moves =
          mode == AdamMode::kFull ? engine.FullMoves(n, c) : engine.NormalizedChallenges(n - 1, c);
      for (const Move& m : moves) {
        bool answered = false;
        auto it = by_height.find(static_cast<std::uint64_t>(m.beta));
        if (it != by_height.end()) {
          const Mask need0 = p.a0 | m.b0, need1 = p.a1 | m.b1;
          for (const Indexed& q : it->second) {
            if ((q.a0 & need0) != need0 || (q.a1 & need1) != need1) continue;
            if (Extends(*q.pos, *p.pos)) {
              answered = true;
              break;
            }
          }
        }
        if (!answered) {
          return {false, "no answer in the strategy at " + Show(*p.pos) + " to beta'=" +
                             std::to_string(m.beta) + " with " +
                             std::to_string(Count(m.b0)) + "+" + std::to_string(Count(m.b1)) +
                             " fresh elements"};
        }
      }
    }
  }
  return {};
}

bool VerifyEveStrategy(const PositionalStrategy& k, const GameParams& params, const Structure& m0,
                       const Structure& m1, AdamMode mode) {
  return CheckEveStrategy(k, params, m0, m1, mode).ok;
}

Position ComposePositions(const Position& p, const Position& q, const Ordinal& alpha,
                          const Ordinal& alpha2) {
  Position r;
  r.height = p.height;
  r.a0 = p.a0;
  r.a1 = q.a1;
  for (const auto& [x, y] : p.g.pairs()) {
    if (auto z = q.g.Image(y)) r.g.Insert(x, *z);
  }
  for (Element a : p.a0) {
    const Ordinal& hp = p.h0.at(a);
    if (!hp.IsZero()) {
      r.h0.emplace(a, NatSum(hp, alpha2));
    } else {
      r.h0.emplace(a, q.h0.at(*p.g.Image(a)));
    }
  }
  for (Element c : q.a1) {
    const Ordinal& hq = q.h1.at(c);
    if (!hq.IsZero()) {
      r.h1.emplace(c, NatSum(alpha, hq));
      continue;
    }
    // A middle element the first strategy has not seen yet counts as alpha.
    const Element b = *q.g.Preimage(c);
    auto it = p.h1.find(b);
    r.h1.emplace(c, it == p.h1.end() ? alpha : it->second);
  }
  return r;
}

PositionalStrategy ComposeStrategies(const PositionalStrategy& kab, const PositionalStrategy& kbc,
                                     const GameParams& params, const Ordinal& alpha2,
                                     const Structure& m0, const Structure& m1,
                                     const Structure& m2) {
  const GameParams params2{params.beta, params.theta, alpha2};
  const GameParams out_params{params.beta, params.theta, NatSum(params.alpha, alpha2)};
  const Board board01(m0, m1), board12(m1, m2), board02(m0, m2);
  if (auto chk = CheckEveStrategy(kab, params, m0, m1); !chk.ok) {
    Fail(ErrorCode::kInvalidArgument, "first strategy does not verify: " + chk.reason);
  }
  if (auto chk = CheckEveStrategy(kbc, params2, m1, m2); !chk.ok) {
    Fail(ErrorCode::kInvalidArgument, "second strategy does not verify: " + chk.reason);
  }
  const auto kab_index = IndexByHeight(kab, board01);
  const auto kbc_index = IndexByHeight(kbc, board12);
  Engine engine(board02, params.theta, 1, SolveMode::kLazy, kUnlimited, false);

  struct Node {
    Position r;
    const Indexed* p;
    const Indexed* q;
  };
  auto find_start = [](const std::map<std::uint64_t, std::vector<Indexed>>& index,
                       const Ordinal& beta) -> const Indexed* {
    auto it = index.find(*beta.ToNat());
    if (it == index.end()) return nullptr;
    for (const Indexed& x : it->second) {
      if (x.pos->a0.empty() && x.pos->a1.empty() && x.pos->height == beta) return &x;
    }
    return nullptr;
  };
  const Indexed* p0 = find_start(kab_index, params.beta);
  const Indexed* q0 = find_start(kbc_index, params.beta);
  PositionalStrategy out;
  std::set<Position> seen;
  std::deque<Node> queue;
  queue.push_back({ComposePositions(*p0->pos, *q0->pos, params.alpha, alpha2), p0, q0});
  seen.insert(queue.front().r);
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    out.positions.push_back(node.r);
    const int n = static_cast<int>(*node.r.height.ToNat());
    Core rc;
    rc.a0 = ToMask(node.r.a0, m0.size());
    rc.a1 = ToMask(node.r.a1, m2.size());
    for (int beta = n - 1; beta >= 0; --beta) {
      auto pk = kab_index.find(static_cast<std::uint64_t>(beta));
      auto qk = kbc_index.find(static_cast<std::uint64_t>(beta));
      for (const Move& m : engine.NormalizedChallenges(beta, rc)) {
        bool answered = false;
        if (pk != kab_index.end() && qk != kbc_index.end()) {
          const Mask need0 = node.p->a0 | m.b0, need1 = node.q->a0;
          for (const Indexed& p2 : pk->second) {
            if ((p2.a0 & need0) != need0 || (p2.a1 & need1) != need1) continue;
            if (!Extends(*p2.pos, *node.p->pos)) continue;
            const Mask mid = p2.a1, need2 = node.q->a1 | m.b1;
            for (const Indexed& q2 : qk->second) {
              if ((q2.a0 & mid) != mid || (q2.a1 & need2) != need2) continue;
              if (!Extends(*q2.pos, *node.q->pos)) continue;
              Position r2 = ComposePositions(*p2.pos, *q2.pos, params.alpha, alpha2);
              if (seen.insert(r2).second) queue.push_back({std::move(r2), &p2, &q2});
              answered = true;
              break;
            }
            if (answered) break;
          }
        }
        if (!answered) {
          Fail(ErrorCode::kInvalidArgument,
               "the input strategies cannot answer a composed challenge at " + Show(node.r));
        }
      }
    }
  }
  (void)out_params;
  out.Normalize();
  return out;
}

WinningHeights ComputeWinningHeights(const Structure& m0, const Structure& m1, int theta,
                                     const Ordinal& alpha, const SolveOptions& options) {
  if (theta < 1) Fail(ErrorCode::kInadmissible, "theta must be at least 1");
  if (alpha.IsZero()) Fail(ErrorCode::kInadmissible, "alpha must be at least 1");
  const int a = FiniteHeight(alpha, "alpha");
  const Board board(m0, m1);
  Engine engine(board, theta, a, SolveMode::kLazy, options.node_budget, options.symmetry);
  const std::vector<Core> cores = CanonicalCores(board, a, engine);
  std::vector<char> current(cores.size(), 1);
  WinningHeights out;
  auto snapshot = [&](const std::vector<char>& member) {
    std::vector<CorePosition> level;
    for (std::size_t i = 0; i < cores.size(); ++i) {
      if (member[i]) level.push_back(internal::ToCorePosition(cores[i]));
    }
    std::sort(level.begin(), level.end());
    return level;
  };
  out.levels.push_back(snapshot(current));
  for (int n = 1;; ++n) {
    if (n > internal::kMaxHeight) Fail(ErrorCode::kInternal, "winning heights did not stabilize");
    std::vector<char> next(cores.size(), 0);
    for (std::size_t i = 0; i < cores.size(); ++i) {
      next[i] = current[i] && engine.Win(n, internal::Canonical(cores[i], n));
    }
    if (next == current) {
      out.stabilization_rank = n - 1;
      return out;
    }
    current = std::move(next);
    out.levels.push_back(snapshot(current));
  }
}

std::vector<CorePosition> InfiniteWinningRegion(const Structure& m0, const Structure& m1, int theta,
                                                const Ordinal& alpha, const SolveOptions& options) {
  if (theta < 1) Fail(ErrorCode::kInadmissible, "theta must be at least 1");
  if (alpha.IsZero()) Fail(ErrorCode::kInadmissible, "alpha must be at least 1");
  const int a = FiniteHeight(alpha, "alpha");
  const Board board(m0, m1);
  Engine engine(board, theta, a, SolveMode::kLazy, options.node_budget, false);
  const std::vector<Core> cores = CanonicalCores(board, a, engine);
  std::unordered_map<Core, std::uint32_t, CoreHash> index;
  for (std::uint32_t i = 0; i < cores.size(); ++i) index.emplace(cores[i], i);

  // counts[slot] = live replies to one challenge; slots of core i are
  // [first[i], first[i + 1]).
  std::vector<std::uint32_t> first{0}, counts;
  std::vector<std::vector<std::uint32_t>> preds(cores.size());
  for (std::uint32_t i = 0; i < cores.size(); ++i) {
    for (const Move& m : engine.NormalizedChallenges(internal::kUnbounded, cores[i])) {
      const auto slot = static_cast<std::uint32_t>(counts.size());
      std::uint32_t live = 0;
      engine.ForEachLazyReply(cores[i], m, [&](const Core& q) {
        engine.Charge();
        auto it = index.find(q);
        if (it == index.end()) Fail(ErrorCode::kInternal, "reply outside the core space");
        preds[it->second].push_back(slot);
        ++live;
        return false;
      });
      counts.push_back(live);
    }
    first.push_back(static_cast<std::uint32_t>(counts.size()));
  }
  std::vector<std::uint32_t> owner(counts.size());
  for (std::uint32_t i = 0; i < cores.size(); ++i) {
    for (std::uint32_t s = first[i]; s < first[i + 1]; ++s) owner[s] = i;
  }
  std::vector<char> alive(cores.size(), 1);
  std::vector<std::uint32_t> work;
  for (std::uint32_t s = 0; s < counts.size(); ++s) {
    if (counts[s] == 0 && alive[owner[s]]) {
      alive[owner[s]] = 0;
      work.push_back(owner[s]);
    }
  }
  while (!work.empty()) {
    const std::uint32_t dead = work.back();
    work.pop_back();
    for (std::uint32_t slot : preds[dead]) {
      if (--counts[slot] == 0 && alive[owner[slot]]) {
        alive[owner[slot]] = 0;
        work.push_back(owner[slot]);
      }
    }
  }
  std::vector<CorePosition> region;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    if (alive[i]) region.push_back(internal::ToCorePosition(cores[i]));
  }
  std::sort(region.begin(), region.end());
  return region;
}

Player SolveInfinite(const Structure& m0, const Structure& m1, int theta, const Ordinal& alpha,
                     const SolveOptions& options) {
  const auto region = InfiniteWinningRegion(m0, m1, theta, alpha, options);
  return std::binary_search(region.begin(), region.end(), CorePosition{}) ? Player::kEve
                                                                          : Player::kAdam;
}

}  // namespace dgame
