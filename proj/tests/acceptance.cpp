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

// Runs every acceptance criterion and prints one PASS/FAIL line each. Exits
// nonzero if any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dgame/backforth.hpp"
#include "dgame/errors.hpp"
#include "dgame/game.hpp"
#include "dgame/generators.hpp"
#include "dgame/logic.hpp"
#include "support.hpp"

namespace dgame {
namespace {

using testing::Name;
using testing::SameVocabularyPairs;
using testing::SmallGrid;

struct Verdict {
  bool pass = true;
  std::string detail;
};

Ordinal N(int n) { return Ordinal::FromNat(static_cast<std::uint64_t>(n)); }

std::string Instance(const Structure& a, const Structure& b, const GameParams& p) {
  return Name(a) + " vs " + Name(b) + " beta=" + p.beta.ToString() +
         " theta=" + std::to_string(p.theta) + " alpha=" + p.alpha.ToString();
}

Player Winner(const Structure& a, const Structure& b, const GameParams& p,
              SolveMode mode = SolveMode::kLazy) {
  SolveOptions o;
  o.mode = mode;
  o.extract = false;
  return Solve(a, b, p, o).winner;
}

// Counts failures and remembers the first one.
struct Tally {
  std::uint64_t checked = 0, failed = 0;
  std::string first;

  void Check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what();
  }
  Verdict Result(const std::string& unit) const {
    std::ostringstream out;
    out << checked << " " << unit << ", " << failed << " failure(s)";
    if (failed) out << "; first: " << first;
    return {failed == 0, out.str()};
  }
};

// 1. Exactly one winner, backed by a certificate, and swap invariance.
Verdict Determinacy() {
  const auto grid = SmallGrid(4);
  Tally t;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 3; ++theta) {
      for (int beta = 0; beta <= 4; ++beta) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
          const GameParams p{N(beta), theta, N(alpha)};
          const SolveResult r = Solve(*a, *b, p, {});
          bool certified = false;
          if (r.winner == Player::kEve) {
            certified = r.strategy && r.refutation.empty() && VerifyEveStrategy(*r.strategy, p, *a, *b);
          } else {
            certified = !r.strategy && !r.refutation.empty() &&
                        r.refutation.front().position == Position::Start(p.beta);
          }
          t.Check(certified, [&] { return "uncertified verdict on " + Instance(*a, *b, p); });
          t.Check(Winner(*b, *a, p) == r.winner, [&] { return "swap changes winner on " + Instance(*a, *b, p); });
        }
      }
    }
  }
  return t.Result("checks");
}

// 2. beta <= alpha: Eve wins and the trivial strategy verifies.
Verdict TrivialRegime() {
  const auto grid = SmallGrid(4);
  std::uint64_t instances = 0, eve = 0, verified = 0;
  std::string first;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 3; ++theta) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        for (int beta = 0; beta <= alpha; ++beta) {
          const GameParams p{N(beta), theta, N(alpha)};
          ++instances;
          const bool won = Winner(*a, *b, p) == Player::kEve;
          const auto check = CheckEveStrategy(EveTrivialStrategy(p, *a, *b), p, *a, *b);
          eve += won;
          verified += check.ok;
          if ((!won || !check.ok) && first.empty()) {
            first = Instance(*a, *b, p) + (won ? "" : ": Adam wins") +
                    (check.ok ? "" : ": trivial strategy fails (" + check.reason + ")");
          }
        }
      }
    }
  }
  std::ostringstream out;
  out << instances << " instances with beta <= alpha; Eve verdicts " << eve << "/" << instances
      << "; trivial strategy verifies " << verified << "/" << instances;
  if (!first.empty()) out << "; first: " << first;
  return {eve == instances && verified == instances, out.str()};
}

// 3. Monotonicity in (beta down, theta down, alpha up).
Verdict Monotonicity() {
  const auto grid = SmallGrid(4);
  Tally t;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    bool eve[5][4][4];
    for (int beta = 0; beta <= 4; ++beta) {
      for (int theta = 1; theta <= 3; ++theta) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
          eve[beta][theta][alpha] = Winner(*a, *b, {N(beta), theta, N(alpha)}) == Player::kEve;
        }
      }
    }
    for (int beta = 0; beta <= 4; ++beta) {
      for (int theta = 1; theta <= 3; ++theta) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
          if (!eve[beta][theta][alpha]) continue;
          for (int b2 = 0; b2 <= beta; ++b2) {
            for (int t2 = 1; t2 <= theta; ++t2) {
              for (int a2 = alpha; a2 <= 3; ++a2) {
                t.Check(eve[b2][t2][a2], [&] {
                  return Instance(*a, *b, {N(beta), theta, N(alpha)}) + " is Eve but (" +
                         std::to_string(b2) + "," + std::to_string(t2) + "," + std::to_string(a2) +
                         ") is Adam";
                });
              }
            }
          }
        }
      }
    }
  }
  return t.Result("comparable pairs");
}

// 4. Composition of solver strategies verifies at alpha (+) alpha'.
Verdict Composition() {
  const auto grid = SmallGrid(3);
  Tally t;
  for (const auto& m0 : grid) {
    for (const auto& m1 : grid) {
      for (const auto& m2 : grid) {
        if (!(m0.vocabulary() == m1.vocabulary()) || !(m1.vocabulary() == m2.vocabulary())) continue;
        for (int theta = 1; theta <= 3; ++theta) {
          for (int beta = 0; beta <= 4; ++beta) {
            for (int alpha = 1; alpha <= 3; ++alpha) {
              const GameParams p{N(beta), theta, N(alpha)};
              const SolveResult r01 = Solve(m0, m1, p, {});
              if (r01.winner != Player::kEve) continue;
              for (int alpha2 = 1; alpha2 <= 3; ++alpha2) {
                const GameParams p2{N(beta), theta, N(alpha2)};
                const SolveResult r12 = Solve(m1, m2, p2, {});
                if (r12.winner != Player::kEve) continue;
                const GameParams q{N(beta), theta, NatSum(p.alpha, p2.alpha)};
                std::string problem;
                try {
                  const auto k = ComposeStrategies(*r01.strategy, *r12.strategy, p, p2.alpha, m0, m1, m2);
                  const auto check = CheckEveStrategy(k, q, m0, m2);
                  if (!check.ok) problem = "composed strategy fails: " + check.reason;
                } catch (const Error& e) {
                  problem = std::string("composition failed: ") + e.what();
                }
                if (problem.empty() && Winner(m0, m2, q) != Player::kEve) problem = "solver says Adam";
                t.Check(problem.empty(), [&] {
                  return Name(m0) + ", " + Name(m1) + ", " + Name(m2) + " beta=" + std::to_string(beta) +
                         " theta=" + std::to_string(theta) + " alpha=" + std::to_string(alpha) +
                         " alpha'=" + std::to_string(alpha2) + ": " + problem;
                });
              }
            }
          }
        }
      }
    }
  }
  return t.Result("compositions");
}

// 5. S(n*) equals the infinite game's winning region.
Verdict Stabilization() {
  const auto grid = SmallGrid(4);
  Tally t;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 3; ++theta) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        const WinningHeights w = ComputeWinningHeights(*a, *b, theta, N(alpha), {});
        const auto region = InfiniteWinningRegion(*a, *b, theta, N(alpha), {});
        t.Check(w.levels.back() == region, [&] {
          return Instance(*a, *b, {Ordinal::Omega(), theta, N(alpha)}) + ": |S(n*)|=" +
                 std::to_string(w.levels.back().size()) + " vs gfp " + std::to_string(region.size());
        });
      }
    }
  }
  return t.Result("instances");
}

// 6. Karp equivalence at 2 beta implies Eve wins at alpha = 1.
Verdict KarpBridge() {
  const auto grid = SmallGrid(4);
  Tally t;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 3; ++theta) {
      const KarpLevels levels = ComputeKarpLevels(*a, *b, theta);
      for (int beta = 0; beta <= 4; ++beta) {
        if (levels.At(2 * beta).maps.empty()) continue;
        const GameParams p{N(beta), theta, Ordinal::One()};
        t.Check(Winner(*a, *b, p) == Player::kEve,
                [&] { return Instance(*a, *b, p) + ": Karp-equivalent at 2 beta but Adam wins"; });
      }
    }
  }
  return t.Result("Karp-equivalent instances");
}

// 7. Normalized and lazy solving agree with the full game.
Verdict Normalization() {
  const auto grid = SmallGrid(3);
  Tally t;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 2; ++theta) {
      for (int beta = 0; beta <= 3; ++beta) {
        for (int alpha = 1; alpha <= 2; ++alpha) {
          const GameParams p{N(beta), theta, N(alpha)};
          const Player full = Winner(*a, *b, p, SolveMode::kFull);
          t.Check(Winner(*a, *b, p, SolveMode::kLazy) == full,
                  [&] { return "lazy disagrees on " + Instance(*a, *b, p); });
          t.Check(Winner(*a, *b, p, SolveMode::kNormalized) == full,
                  [&] { return "normalized disagrees on " + Instance(*a, *b, p); });
        }
      }
    }
  }
  return t.Result("comparisons");
}

// 8. alpha = w behaves like alpha = n + 1 at height n.
Verdict AlphaCap() {
  const auto grid = SmallGrid(4);
  Tally t;
  for (const auto& [a, b] : SameVocabularyPairs(grid)) {
    for (int theta = 1; theta <= 3; ++theta) {
      for (int beta = 0; beta <= 4; ++beta) {
        const GameParams omega{N(beta), theta, Ordinal::Omega()};
        const GameParams capped{N(beta), theta, N(beta + 1)};
        t.Check(Winner(*a, *b, omega) == Winner(*a, *b, capped),
                [&] { return Instance(*a, *b, omega) + " differs from alpha=" + std::to_string(beta + 1); });
      }
    }
  }
  return t.Result("instances");
}

// 9. Ordinal algebra laws on random Cantor normal forms.
Verdict OrdinalAlgebra() {
  std::mt19937_64 rng(20261016);
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    const Ordinal a = testing::RandomOrdinal(rng), b = testing::RandomOrdinal(rng),
                  c = testing::RandomOrdinal(rng);
    auto show = [&] { return a.ToString() + ", " + b.ToString() + ", " + c.ToString(); };
    t.Check(NatSum(a, b) == NatSum(b, a), [&] { return "commutativity: " + show(); });
    t.Check(NatSum(NatSum(a, b), c) == NatSum(a, NatSum(b, c)), [&] { return "associativity: " + show(); });
    t.Check(NatSum(a, b) >= Add(a, b), [&] { return "natural sum below ordinal sum: " + show(); });
    if (b != c) {
      const Ordinal& lo = b < c ? b : c;
      const Ordinal& hi = b < c ? c : b;
      t.Check(NatSum(a, lo) < NatSum(a, hi) && NatSum(lo, a) < NatSum(hi, a),
              [&] { return "strict monotonicity: " + show(); });
    }
  }
  const Ordinal w = Ordinal::Omega();
  t.Check(NatSum(Ordinal::One(), w) == Ordinal::Parse("w+1"), [] { return "1 (+) w != w+1"; });
  t.Check(NatSum(Ordinal::Parse("w+1"), w) == Ordinal::Parse("w*2+1"), [] { return "(w+1) (+) w != w*2+1"; });
  return t.Result("law checks");
}

// 10. Size detection on pure sets with the full-width solver.
Verdict SizeDetection() {
  Tally t;
  for (int n0 = 1; n0 <= 4; ++n0) {
    for (int n1 = 1; n1 <= 4; ++n1) {
      if (n0 == n1) continue;
      const int small = std::min(n0, n1);
      for (int theta = std::max(n0, n1); theta <= 4; ++theta) {
        for (int beta = 0; beta <= small + 1; ++beta) {
          const GameParams p{N(beta), theta, Ordinal::One()};
          const Player expected = beta == small + 1 ? Player::kAdam : Player::kEve;
          const Player got = Winner(PureSet(n0), PureSet(n1), p, SolveMode::kFull);
          t.Check(got == expected, [&] {
            return Instance(PureSet(n0), PureSet(n1), p) + ": expected " + PlayerName(expected) +
                   ", got " + PlayerName(got);
          });
        }
      }
    }
  }
  return t.Result("instances");
}

// 11. Intransitivity search; any reported triple must survive the full solver.
Verdict Intransitivity() {
  std::uint64_t searches = 0, exhausted = 0, found = 0, reverified = 0;
  std::string example;
  for (const char* spec : {"digraphs 3", "pure_sets 3", "linear_orders 3", "cycles 3", "trees 3"}) {
    const auto family = GenerateFamily(spec);
    for (int beta = 0; beta <= 3; ++beta) {
      for (int theta = 1; theta <= 2; ++theta) {
        const GameParams p{N(beta), theta, N(2)};
        const auto report = SearchIntransitivity(family, p);
        ++searches;
        if (!report.triple) {
          ++exhausted;
          continue;
        }
        ++found;
        reverified += report.reverified;
        if (example.empty()) {
          const auto [i, j, k] = *report.triple;
          example = std::string(spec) + " beta=" + std::to_string(beta) + " theta=" + std::to_string(theta) +
                    ": members " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                    (report.reverified ? " (re-verified)" : " (NOT re-verified)");
        }
      }
    }
  }
  std::ostringstream out;
  out << searches << " searches: " << exhausted << " exhausted, " << found << " with a triple, "
      << reverified << " re-verified in full mode";
  if (!example.empty()) out << "; e.g. " << example;
  return {reverified == found, out.str()};
}

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;  // 0 = no limit
  Verdict (*run)();
};

}  // namespace
}  // namespace dgame

int main() {
  using dgame::Criterion;
  const Criterion criteria[] = {
      {"C1", "determinacy and swap symmetry", 60, dgame::Determinacy},
      {"C2", "beta <= alpha gives Eve a trivial win", 0, dgame::TrivialRegime},
      {"C3", "parameter monotonicity", 0, dgame::Monotonicity},
      {"C4", "strategy composition", 120, dgame::Composition},
      {"C5", "stabilization equals infinite-game region", 0, dgame::Stabilization},
      {"C6", "Karp equivalence at 2 beta implies Eve", 0, dgame::KarpBridge},
      {"C7", "lazy/normalized agree with full mode", 300, dgame::Normalization},
      {"C8", "alpha = w equals alpha = n+1", 0, dgame::AlphaCap},
      {"C9", "ordinal algebra", 5, dgame::OrdinalAlgebra},
      {"C10", "pure-set size detection", 0, dgame::SizeDetection},
      {"C11", "intransitivity search", 600, dgame::Intransitivity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    dgame::testing::Stopwatch clock;
    dgame::Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = clock.Seconds();
    std::string timing = std::to_string(secs).substr(0, std::to_string(secs).find('.') + 3) + " s";
    if (c.limit_seconds > 0) {
      timing += " / limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
      if (secs > c.limit_seconds) {
        v.pass = false;
        v.detail += "; time limit exceeded";
      }
    }
    if (!v.pass) ++failures;
    std::printf("%s %-4s %s: %s [%s]\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
