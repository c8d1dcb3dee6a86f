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

// Shared helpers for the test programs.

#ifndef DGAME_TESTS_SUPPORT_HPP_
#define DGAME_TESTS_SUPPORT_HPP_

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "dgame/generators.hpp"
#include "dgame/ordinal.hpp"
#include "dgame/structure.hpp"

namespace dgame::testing {

// Pure sets, linear orders, cycles and trees with at most `max_size`
// elements.
inline std::vector<Structure> SmallGrid(int max_size) {
  std::vector<Structure> out;
  for (int n = 1; n <= max_size; ++n) out.push_back(PureSet(n));
  for (int n = 1; n <= max_size; ++n) out.push_back(LinearOrder(n));
  for (int n = 1; n <= max_size; ++n) out.push_back(Cycle(n));
  for (auto& t : GenerateFamily("trees " + std::to_string(max_size))) out.push_back(std::move(t));
  return out;
}

// Ordered pairs over one vocabulary.
inline std::vector<std::pair<const Structure*, const Structure*>> SameVocabularyPairs(
    const std::vector<Structure>& grid) {
  std::vector<std::pair<const Structure*, const Structure*>> out;
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      if (a.vocabulary() == b.vocabulary()) out.emplace_back(&a, &b);
    }
  }
  return out;
}

inline std::string Name(const Structure& s) {
  std::string kind = "pure_set";
  const auto& rel = s.vocabulary().relations();
  if (rel.contains("<")) kind = "linear_order";
  if (rel.contains("E")) kind = "cycle";
  if (rel.contains("<=")) kind = "tree";
  return kind + "(" + std::to_string(s.size()) + ")";
}

// Cantor normal forms with exponent depth <= 3, coefficients <= 5 and at most
// four terms per level.
inline Ordinal RandomOrdinal(std::mt19937_64& rng, int depth = 3) {
  std::uniform_int_distribution<int> coeff(1, 5), count(0, 4), nat(0, 5);
  if (depth == 0) return Ordinal::FromNat(static_cast<std::uint64_t>(nat(rng)));
  std::vector<Ordinal> exps;
  for (int i = count(rng); i > 0; --i) exps.push_back(RandomOrdinal(rng, depth - 1));
  std::sort(exps.begin(), exps.end(), std::greater<>());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<OrdinalTerm> terms;
  for (auto& e : exps) terms.push_back({e, static_cast<std::uint64_t>(coeff(rng))});
  return Ordinal::FromTerms(std::move(terms));
}

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace dgame::testing

#endif  // DGAME_TESTS_SUPPORT_HPP_
