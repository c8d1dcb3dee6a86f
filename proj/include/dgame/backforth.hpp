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

#ifndef DGAME_BACKFORTH_HPP_
#define DGAME_BACKFORTH_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "dgame/structure.hpp"

namespace dgame {

// I^gamma_theta(m0, m1): maps of any size; theta bounds the sets each
// extension step has to cover.
struct KarpLevel {
  int gamma = 0;
  std::vector<PartialMap> maps;  // sorted
};

struct KarpLevels {
  // levels[0..stabilization_rank]; every later level equals the last one.
  std::vector<KarpLevel> levels;
  int stabilization_rank = 0;

  const KarpLevel& At(int gamma) const;
};

// Refines until stabilization. `up_to` >= 0 stops early after that level
// (stabilization_rank is then the last computed level if not yet stable).
KarpLevels ComputeKarpLevels(const Structure& m0, const Structure& m1, int theta,
                             int up_to = -1, std::uint64_t node_budget = 10'000'000);

bool KarpEquiv(const Structure& m0, const Structure& m1, int theta, int beta,
               std::uint64_t node_budget = 10'000'000);

// Largest gamma with f in I^gamma, or nullopt when f survives stabilization.
// Throws kInvalidArgument if f is not a partial isomorphism.
std::optional<int> KarpRank(const Structure& m0, const Structure& m1, int theta,
                            const PartialMap& f, std::uint64_t node_budget = 10'000'000);

}  // namespace dgame

#endif  // DGAME_BACKFORTH_HPP_
