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

#include "dgame/logic.hpp"

#include <algorithm>
#include <numeric>

#include "dgame/backforth.hpp"
#include "dgame/errors.hpp"

namespace dgame {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

bool EveWins(const Structure& a, const Structure& b, const GameParams& params,
             const SolveOptions& options) {
  SolveOptions o = options;
  o.extract = false;
  return Solve(a, b, params, o).winner == Player::kEve;
}

GameParams MaxParams(const GameParams& a, const GameParams& b) {
  if (a.alpha != b.alpha) {
    Fail(ErrorCode::kInvalidArgument, "conjunction needs sentences with the same alpha");
  }
  return {Max(a.beta, b.beta), std::max(a.theta, b.theta), a.alpha};
}

void RequireSameCatalog(const Sentence& a, const Sentence& b) {
  if (a.catalog != b.catalog &&
      !(a.catalog && b.catalog && a.catalog->structures == b.catalog->structures)) {
    Fail(ErrorCode::kInvalidArgument, "sentences refer to different catalogs");
  }
}

std::string FreshConstant(const Vocabulary& v, std::string name) {
  while (v.HasSymbol(name)) name = "_" + name;
  return name;
}

}  // namespace

std::shared_ptr<const Catalog> Catalog::Make(std::vector<Structure> structures) {
  if (structures.empty()) Fail(ErrorCode::kInvalidArgument, "a catalog needs at least one structure");
  auto out = std::make_shared<Catalog>();
  out->vocabulary = structures.front().vocabulary();
  for (const auto& s : structures) {
    if (!(s.vocabulary() == out->vocabulary)) {
      Fail(ErrorCode::kVocabularyMismatch, "catalog members must share a vocabulary");
    }
  }
  out->structures = std::move(structures);
  return out;
}

EquivPartition Partition(const Catalog& catalog, const GameParams& params,
                         const SolveOptions& options) {
  CheckAdmissible(params);
  const std::size_t n = catalog.structures.size();
  EquivPartition out;
  out.params = params;
  out.eve.assign(n, std::vector<bool>(n, false));
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      bool eve = false;
      try {
        eve = EveWins(catalog.structures[i], catalog.structures[j], params, options);
      } catch (const BudgetExceeded& e) {
        throw Error(ErrorCode::kBudgetExceeded, "pair (" + std::to_string(i) + ", " +
                                                    std::to_string(j) + "): " + e.what());
      }
      out.eve[i][j] = out.eve[j][i] = eve;
      if (eve) uf.Union(static_cast<int>(i), static_cast<int>(j));
    }
  }
  out.class_of.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int root = uf.Find(static_cast<int>(i));
    if (out.class_of[root] < 0) {
      out.class_of[root] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.class_of[i] = out.class_of[root];
    out.classes[out.class_of[i]].push_back(static_cast<int>(i));
  }
  return out;
}

std::set<int> Sentence::ClassIds() const {
  std::set<int> ids;
  for (int m : members) ids.insert(partition.class_of[m]);
  return ids;
}

Sentence MakeSentence(std::shared_ptr<const Catalog> catalog, const GameParams& params,
                      const std::set<int>& seed, bool includes_unlisted,
                      const SolveOptions& options) {
  Sentence s;
  s.partition = Partition(*catalog, params, options);
  for (int i : seed) {
    if (i < 0 || static_cast<std::size_t>(i) >= catalog->structures.size()) {
      Fail(ErrorCode::kInvalidArgument, "catalog index out of range");
    }
    for (int j : s.partition.classes[s.partition.class_of[i]]) s.members.insert(j);
  }
  s.catalog = std::move(catalog);
  s.params = params;
  s.includes_unlisted = includes_unlisted;
  return s;
}

Sentence SentenceFromClasses(std::shared_ptr<const Catalog> catalog, const GameParams& params,
                             const std::set<int>& class_ids, const SolveOptions& options) {
  Sentence s;
  s.partition = Partition(*catalog, params, options);
  for (int c : class_ids) {
    if (c < 0 || static_cast<std::size_t>(c) >= s.partition.classes.size()) {
      Fail(ErrorCode::kInvalidArgument, "class id out of range");
    }
    s.members.insert(s.partition.classes[c].begin(), s.partition.classes[c].end());
  }
  s.catalog = std::move(catalog);
  s.params = params;
  return s;
}

bool Models(const Sentence& phi, const Structure& m, const SolveOptions& options) {
  if (!phi.catalog->vocabulary.IsSubsetOf(m.vocabulary())) {
    Fail(ErrorCode::kVocabularyMismatch, "the structure lacks symbols of the sentence");
  }
  const Structure reduct = Reduct(m, phi.catalog->vocabulary);
  bool linked = false;
  for (std::size_t i = 0; i < phi.catalog->structures.size(); ++i) {
    if (!EveWins(reduct, phi.catalog->structures[i], phi.params, options)) continue;
    linked = true;
    for (int j : phi.partition.classes[phi.partition.class_of[i]]) {
      if (phi.members.contains(j)) return true;
    }
  }
  return !linked && phi.includes_unlisted;
}

Sentence SentenceNot(const Sentence& phi) {
  Sentence out = phi;
  out.members.clear();
  for (int i = 0; i < static_cast<int>(phi.catalog->structures.size()); ++i) {
    if (!phi.members.contains(i)) out.members.insert(i);
  }
  out.includes_unlisted = !phi.includes_unlisted;
  return out;
}

Sentence SentenceAnd(const Sentence& phi0, const Sentence& phi1, const SolveOptions& options) {
  RequireSameCatalog(phi0, phi1);
  const GameParams params = MaxParams(phi0.params, phi1.params);
  std::set<int> both;
  std::set_intersection(phi0.members.begin(), phi0.members.end(), phi1.members.begin(),
                        phi1.members.end(), std::inserter(both, both.end()));
  Sentence out = MakeSentence(phi0.catalog, params, both,
                              phi0.includes_unlisted && phi1.includes_unlisted, options);
  // Larger parameters refine both partitions, so closing must not add members.
  if (out.members != both) {
    Fail(ErrorCode::kInternal, "conjunction is not closed at the combined parameters");
  }
  return out;
}

PointedCatalog PointedCatalog::Make(std::shared_ptr<const Catalog> base,
                                    std::vector<Structure> pointed, std::vector<int> base_of,
                                    std::string constant) {
  if (pointed.size() != base_of.size()) {
    Fail(ErrorCode::kInvalidArgument, "one base index per pointed structure is required");
  }
  if (base->vocabulary.HasSymbol(constant)) {
    Fail(ErrorCode::kInvalidArgument, "constant '" + constant + "' is not fresh");
  }
  std::vector<std::set<Element>> seen(base->structures.size());
  for (std::size_t i = 0; i < pointed.size(); ++i) {
    const int b = base_of[i];
    if (b < 0 || static_cast<std::size_t>(b) >= base->structures.size()) {
      Fail(ErrorCode::kInvalidArgument, "base index out of range");
    }
    const auto it = pointed[i].constants().find(constant);
    if (it == pointed[i].constants().end() ||
        !(Reduct(pointed[i], base->vocabulary) == base->structures[b])) {
      Fail(ErrorCode::kInvalidArgument,
           "pointed structure " + std::to_string(i) + " is not an expansion of its base");
    }
    seen[b].insert(it->second);
  }
  for (std::size_t b = 0; b < base->structures.size(); ++b) {
    if (seen[b].size() != base->structures[b].size()) {
      Fail(ErrorCode::kInvalidArgument,
           "missing expansions of base structure " + std::to_string(b));
    }
  }
  PointedCatalog out;
  out.pointed = Catalog::Make(std::move(pointed));
  out.base = std::move(base);
  out.base_of = std::move(base_of);
  out.constant = std::move(constant);
  return out;
}

PointedCatalog PointedCatalog::AllExpansions(std::shared_ptr<const Catalog> base,
                                             std::string constant) {
  std::vector<Structure> pointed;
  std::vector<int> base_of;
  for (std::size_t b = 0; b < base->structures.size(); ++b) {
    const Structure& s = base->structures[b];
    for (const std::string& id : s.universe()) {
      pointed.push_back(ExpandConstant(s, constant, id));
      base_of.push_back(static_cast<int>(b));
    }
  }
  return Make(std::move(base), std::move(pointed), std::move(base_of), std::move(constant));
}

Sentence ExistsConst(const Sentence& phi, const PointedCatalog& pointed,
                     const SolveOptions& options) {
  if (phi.catalog != pointed.pointed &&
      !(phi.catalog->structures == pointed.pointed->structures)) {
    Fail(ErrorCode::kInvalidArgument, "the sentence is not over the pointed catalog");
  }
  std::set<int> selected;
  for (int i : phi.members) selected.insert(pointed.base_of[i]);
  const GameParams params{Add(Add(phi.params.beta, phi.params.alpha), Ordinal::One()),
                          phi.params.theta, phi.params.alpha};
  return MakeSentence(pointed.base, params, selected, phi.includes_unlisted, options);
}

bool PhiSubmodel(const Structure& m, const Structure& n, int theta, int beta,
                 std::uint64_t node_budget) {
  if (theta < 1 || beta < 0) Fail(ErrorCode::kInadmissible, "theta >= 1 and beta >= 0 required");
  if (!IsSubstructure(m, n)) Fail(ErrorCode::kInvalidArgument, "m is not a substructure of n");
  double tuples = 1;
  for (int i = 0; i < theta; ++i) tuples *= static_cast<double>(m.size());
  if (tuples > static_cast<double>(node_budget)) throw BudgetExceeded(node_budget);
  std::vector<std::string> names;
  for (int i = 0; i < theta; ++i) {
    names.push_back(FreshConstant(m.vocabulary(), "c_" + std::to_string(i)));
  }
  std::vector<std::size_t> tuple(static_cast<std::size_t>(theta), 0);
  while (true) {
    Structure em = m, en = n;
    for (int i = 0; i < theta; ++i) {
      const std::string& id = m.IdOf(static_cast<Element>(tuple[i]));
      em = ExpandConstant(em, names[i], id);
      en = ExpandConstant(en, names[i], id);
    }
    if (!KarpEquiv(em, en, theta, 2 * beta, node_budget)) return false;
    int i = 0;
    while (i < theta && ++tuple[i] == m.size()) tuple[i++] = 0;
    if (i == theta) return true;
  }
}

IntransitivityReport SearchIntransitivity(const std::vector<Structure>& family,
                                          const GameParams& params,
                                          const SolveOptions& options) {
  CheckAdmissible(params);
  const std::size_t n = family.size();
  IntransitivityReport report;
  report.params = params;
  report.family_size = n;
  std::vector<std::vector<signed char>> eve(n, std::vector<signed char>(n, -1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!(family[i].vocabulary() == family[j].vocabulary())) continue;
      eve[i][j] = eve[j][i] = EveWins(family[i], family[j], params, options) ? 1 : 0;
    }
  }
  for (std::size_t j = 0; j < n && !report.triple; ++j) {
    for (std::size_t i = 0; i < n && !report.triple; ++i) {
      if (i == j || eve[i][j] != 1) continue;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (k == j || eve[j][k] != 1) continue;
        ++report.triples_checked;
        if (eve[i][k] == 0) {
          report.triple = {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
          break;
        }
      }
    }
  }
  if (report.triple) {
    SolveOptions full = options;
    full.mode = SolveMode::kFull;
    const auto [i, j, k] = *report.triple;
    report.reverified = EveWins(family[i], family[j], params, full) &&
                        EveWins(family[j], family[k], params, full) &&
                        !EveWins(family[i], family[k], params, full);
  }
  return report;
}

}  // namespace dgame
