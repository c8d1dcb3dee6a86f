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

#ifndef DGAME_LOGIC_HPP_
#define DGAME_LOGIC_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgame/game.hpp"
#include "dgame/structure.hpp"

namespace dgame {

// A finite list of structures over one vocabulary.
struct Catalog {
  std::vector<Structure> structures;
  Vocabulary vocabulary;

  // Throws kInvalidArgument on an empty list, kVocabularyMismatch on mixed
  // vocabularies.
  static std::shared_ptr<const Catalog> Make(std::vector<Structure> structures);
};

struct EquivPartition {
  GameParams params;
  std::vector<std::vector<bool>> eve;     // eve[i][j]: Eve wins on (s_i, s_j)
  std::vector<std::vector<int>> classes;  // sorted; ordered by least member
  std::vector<int> class_of;
};

// Transitive closure of "Eve wins" over the catalog.
EquivPartition Partition(const Catalog& catalog, const GameParams& params,
                         const SolveOptions& options = {});

// A sentence as the catalog members it selects (always a union of classes at
// its parameters). `includes_unlisted` decides structures that are not
// equivalent to any catalog member.
struct Sentence {
  std::shared_ptr<const Catalog> catalog;
  GameParams params;
  EquivPartition partition;
  std::set<int> members;
  bool includes_unlisted = false;

  std::set<int> ClassIds() const;
  bool Selects(int index) const { return members.contains(index); }
};

// Closes `seed` under equivalence at `params`.
Sentence MakeSentence(std::shared_ptr<const Catalog> catalog, const GameParams& params,
                      const std::set<int>& seed, bool includes_unlisted = false,
                      const SolveOptions& options = {});
Sentence SentenceFromClasses(std::shared_ptr<const Catalog> catalog, const GameParams& params,
                             const std::set<int>& class_ids, const SolveOptions& options = {});

// Decides m |= phi by classifying the reduct of m to the catalog vocabulary
// against the catalog. A structure whose equivalence component contains a
// selected member models phi.
bool Models(const Sentence& phi, const Structure& m, const SolveOptions& options = {});

Sentence SentenceNot(const Sentence& phi);
// Parameters are the coordinatewise maxima of beta and theta; alpha must
// agree.
Sentence SentenceAnd(const Sentence& phi0, const Sentence& phi1, const SolveOptions& options = {});

// All expansions (M, a) of a base catalog by one fresh constant.
struct PointedCatalog {
  std::shared_ptr<const Catalog> base;
  std::shared_ptr<const Catalog> pointed;
  std::vector<int> base_of;
  std::string constant;

  // Checks that every pointed structure is an expansion of its base by
  // `constant` and that every expansion is present.
  static PointedCatalog Make(std::shared_ptr<const Catalog> base,
                             std::vector<Structure> pointed, std::vector<int> base_of,
                             std::string constant);
  static PointedCatalog AllExpansions(std::shared_ptr<const Catalog> base, std::string constant);
};

// Exists c. phi, re-closed at (theta, beta + alpha + 1, alpha).
Sentence ExistsConst(const Sentence& phi, const PointedCatalog& pointed,
                     const SolveOptions& options = {});

// m is a substructure of n and every theta-tuple over m (repetition allowed)
// gives back-and-forth equivalent expansions up to 2 * beta.
bool PhiSubmodel(const Structure& m, const Structure& n, int theta, int beta,
                 std::uint64_t node_budget = 10'000'000);

struct IntransitivityReport {
  GameParams params;
  std::size_t family_size = 0;
  std::uint64_t triples_checked = 0;
  // Indices into the family: Eve wins (i, j) and (j, k) but loses (i, k).
  std::optional<std::array<int, 3>> triple;
  // The triple was re-checked with the full-width solver.
  bool reverified = false;
};

IntransitivityReport SearchIntransitivity(const std::vector<Structure>& family,
                                          const GameParams& params,
                                          const SolveOptions& options = {});

}  // namespace dgame

#endif  // DGAME_LOGIC_HPP_
