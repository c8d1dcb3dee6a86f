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

#ifndef DGAME_GENERATORS_HPP_
#define DGAME_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dgame/structure.hpp"

namespace dgame {

// Element ids are "e0".."e<n-1>" unless noted.
Structure PureSet(int n);
// Strict order "<" with e_i < e_j iff i < j.
Structure LinearOrder(int n);
// Sequences over {0..k-1} of length <= depth under the reflexive prefix order
// "<=". Node ids spell the sequence after a leading "t" ("t", "t0", "t01"),
// listed by length and then lexicographically.
Structure FullTree(int branching, int depth);
// Directed cycle "E": e_i -> e_{i+1 mod n}. cycle(1) is a single loop.
Structure Cycle(int n);
// Every tuple of every relation is included independently with probability
// 1/2; constants are uniform. Deterministic for a given seed.
Structure RandomStructure(const Vocabulary& vocabulary, int n, std::uint64_t seed);
// One representative per isomorphism type of a binary relation "E" (loops
// allowed) on exactly n elements; n <= 4.
std::vector<Structure> AllDigraphs(int n);

// Parses one generator call, e.g. "linear_order 4", "full_tree 2 2" or
// "random_structure 5 E/2,P/1,c". `seed` only affects random_structure.
Structure Generate(std::string_view spec, std::uint64_t seed = 0);

// A list of structures over one vocabulary. Accepts family names with a size
// bound ("pure_sets 3", "linear_orders 3", "trees 4", "cycles 3",
// "digraphs 3") or generator calls separated by ';'.
std::vector<Structure> GenerateFamily(std::string_view spec, std::uint64_t seed = 0);

}  // namespace dgame

#endif  // DGAME_GENERATORS_HPP_
