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

#include "dgame/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dgame/errors.hpp"

namespace dgame {
namespace {

void CheckName(const std::string& name) {
  if (name.empty()) Fail(ErrorCode::kInvalidArgument, "empty symbol name");
}

// Calls `fn` with every tuple of length `arity` over `pool`.
bool ForEachTuple(std::span<const Element> pool, int arity,
                  const std::function<bool(const Tuple&)>& fn) {
  if (pool.empty()) return true;
  Tuple t(static_cast<std::size_t>(arity), pool[0]);
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  while (true) {
    for (int i = 0; i < arity; ++i) t[i] = pool[idx[i]];
    if (!fn(t)) return false;
    int i = 0;
    while (i < arity && ++idx[i] == pool.size()) idx[i++] = 0;
    if (i == arity) return true;
  }
}

void RequireSameVocabulary(const Structure& a, const Structure& b) {
  if (!(a.vocabulary() == b.vocabulary())) {
    Fail(ErrorCode::kVocabularyMismatch, "structures have different vocabularies");
  }
}

// Does g + (x -> y) still preserve every atomic fact that mentions x?
// Assumes g itself is a partial isomorphism and x, y are unused.
bool ExtensionPreserves(const Structure& m0, const Structure& m1,
                        const std::vector<int>& g, Element x, Element y) {
  for (const auto& [name, c0] : m0.constants()) {
    const Element c1 = m1.constants().at(name);
    if ((c0 == x) != (c1 == y)) return false;
  }
  std::vector<Element> pool;
  for (Element e = 0; e < g.size(); ++e) {
    if (g[e] >= 0) pool.push_back(e);
  }
  pool.push_back(x);
  for (const auto& [name, arity] : m0.vocabulary().relations()) {
    Tuple image(static_cast<std::size_t>(arity));
    const bool ok = ForEachTuple(pool, arity, [&](const Tuple& t) {
      if (std::find(t.begin(), t.end(), x) == t.end()) return true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        image[i] = t[i] == x ? y : static_cast<Element>(g[t[i]]);
      }
      return m0.Holds(name, t) == m1.Holds(name, image);
    });
    if (!ok) return false;
  }
  return true;
}

// Backtracking search for bijections a -> b preserving all facts; stops when
// `visit` returns false.
void SearchIsomorphisms(const Structure& a, const Structure& b,
                        const std::function<bool(const std::vector<int>&)>& visit) {
  if (a.size() != b.size() || !(a.vocabulary() == b.vocabulary())) return;
  const std::size_t n = a.size();
  std::vector<int> g(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(Element)> rec = [&](Element x) -> bool {
    if (x == n) return visit(g);
    for (Element y = 0; y < n; ++y) {
      if (used[y] || !ExtensionPreserves(a, b, g, x, y)) continue;
      g[x] = static_cast<int>(y);
      used[y] = 1;
      const bool go_on = rec(x + 1);
      g[x] = -1;
      used[y] = 0;
      if (!go_on) return false;
    }
    return true;
  };
  rec(0);
}

}  // namespace

Vocabulary::Vocabulary(std::map<std::string, int> relations,
                       std::set<std::string> constants) {
  for (const auto& [name, arity] : relations) AddRelation(name, arity);
  for (const auto& name : constants) AddConstant(name);
}

void Vocabulary::AddRelation(const std::string& name, int arity) {
  CheckName(name);
  if (arity < 1) Fail(ErrorCode::kInvalidArgument, "relation '" + name + "' must have arity >= 1");
  if (HasSymbol(name)) Fail(ErrorCode::kInvalidArgument, "duplicate symbol '" + name + "'");
  relations_.emplace(name, arity);
}

void Vocabulary::AddConstant(const std::string& name) {
  CheckName(name);
  if (HasSymbol(name)) Fail(ErrorCode::kInvalidArgument, "duplicate symbol '" + name + "'");
  constants_.insert(name);
}

bool Vocabulary::HasSymbol(std::string_view name) const {
  const std::string key(name);
  return relations_.contains(key) || constants_.contains(key);
}

bool Vocabulary::IsSubsetOf(const Vocabulary& other) const {
  for (const auto& [name, arity] : relations_) {
    auto it = other.relations_.find(name);
    if (it == other.relations_.end() || it->second != arity) return false;
  }
  return std::includes(other.constants_.begin(), other.constants_.end(),
                       constants_.begin(), constants_.end());
}

Structure::Structure(Vocabulary vocabulary, std::vector<std::string> universe,
                     std::map<std::string, std::set<Tuple>> relations,
                     std::map<std::string, Element> constants,
                     std::optional<std::string> tag)
    : vocabulary_(std::move(vocabulary)),
      universe_(std::move(universe)),
      relations_(std::move(relations)),
      constants_(std::move(constants)),
      tag_(std::move(tag)) {
  if (universe_.empty()) Fail(ErrorCode::kInvalidArgument, "universe must be nonempty");
  for (Element i = 0; i < universe_.size(); ++i) {
    if (universe_[i].empty()) Fail(ErrorCode::kInvalidArgument, "empty element id");
    if (!index_.emplace(universe_[i], i).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate element id '" + universe_[i] + "'");
    }
  }
  for (const auto& [name, arity] : vocabulary_.relations()) {
    auto [it, inserted] = relations_.try_emplace(name);
    (void)inserted;
    for (const Tuple& t : it->second) {
      if (t.size() != static_cast<std::size_t>(arity)) {
        Fail(ErrorCode::kInvalidArgument, "tuple of wrong arity in relation '" + name + "'");
      }
      for (Element e : t) {
        if (e >= universe_.size()) {
          Fail(ErrorCode::kInvalidArgument, "tuple in '" + name + "' leaves the universe");
        }
      }
    }
  }
  for (const auto& [name, tuples] : relations_) {
    if (!vocabulary_.relations().contains(name)) {
      Fail(ErrorCode::kInvalidArgument, "relation '" + name + "' is not in the vocabulary");
    }
  }
  for (const auto& name : vocabulary_.constants()) {
    auto it = constants_.find(name);
    if (it == constants_.end()) {
      Fail(ErrorCode::kInvalidArgument, "constant '" + name + "' is not interpreted");
    }
    if (it->second >= universe_.size()) {
      Fail(ErrorCode::kInvalidArgument, "constant '" + name + "' leaves the universe");
    }
  }
  for (const auto& [name, e] : constants_) {
    if (!vocabulary_.constants().contains(name)) {
      Fail(ErrorCode::kInvalidArgument, "constant '" + name + "' is not in the vocabulary");
    }
  }
}

const std::set<Tuple>& Structure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    Fail(ErrorCode::kInvalidArgument, "unknown relation '" + name + "'");
  }
  return it->second;
}

std::optional<Element> Structure::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element Structure::IndexOf(std::string_view id) const {
  auto e = Find(id);
  if (!e) Fail(ErrorCode::kInvalidArgument, "unknown element '" + std::string(id) + "'");
  return *e;
}

bool Structure::Holds(const std::string& name, std::span<const Element> tuple) const {
  const auto& tuples = relation(name);
  return tuples.contains(Tuple(tuple.begin(), tuple.end()));
}

Structure Structure::WithTag(std::optional<std::string> tag) const {
  Structure copy = *this;
  copy.tag_ = std::move(tag);
  return copy;
}

bool operator==(const Structure& a, const Structure& b) {
  return a.vocabulary_ == b.vocabulary_ && a.universe_ == b.universe_ &&
         a.relations_ == b.relations_ && a.constants_ == b.constants_;
}

PartialMap PartialMap::FromPairs(std::vector<Pair> pairs) {
  PartialMap m;
  for (const auto& [x, y] : pairs) {
    if (!m.Insert(x, y)) {
      Fail(ErrorCode::kInvalidArgument, "pairs are not an injective function");
    }
  }
  return m;
}

PartialMap PartialMap::Identity(std::span<const Element> elements) {
  PartialMap m;
  for (Element e : elements) m.Insert(e, e);
  return m;
}

bool PartialMap::Insert(Element source, Element target) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{source, 0},
                             [](const Pair& a, const Pair& b) { return a.first < b.first; });
  if (it != pairs_.end() && it->first == source) return it->second == target;
  if (Preimage(target)) return false;
  pairs_.insert(it, Pair{source, target});
  return true;
}

std::optional<Element> PartialMap::Image(Element source) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{source, 0},
                             [](const Pair& a, const Pair& b) { return a.first < b.first; });
  if (it != pairs_.end() && it->first == source) return it->second;
  return std::nullopt;
}

std::optional<Element> PartialMap::Preimage(Element target) const {
  for (const auto& [x, y] : pairs_) {
    if (y == target) return x;
  }
  return std::nullopt;
}

std::vector<Element> PartialMap::Domain() const {
  std::vector<Element> out;
  for (const auto& p : pairs_) out.push_back(p.first);
  return out;
}

std::vector<Element> PartialMap::Range() const {
  std::vector<Element> out;
  for (const auto& p : pairs_) out.push_back(p.second);
  std::sort(out.begin(), out.end());
  return out;
}

PartialMap PartialMap::Inverse() const {
  PartialMap out;
  for (const auto& [x, y] : pairs_) out.Insert(y, x);
  return out;
}

bool PartialMap::IsSubsetOf(const PartialMap& other) const {
  for (const auto& [x, y] : pairs_) {
    auto img = other.Image(x);
    if (!img || *img != y) return false;
  }
  return true;
}

PartialMap Compose(const PartialMap& first, const PartialMap& second) {
  PartialMap out;
  for (const auto& [x, y] : first.pairs()) {
    if (auto z = second.Image(y)) out.Insert(x, *z);
  }
  return out;
}

Structure Reduct(const Structure& s, const Vocabulary& sub) {
  if (!sub.IsSubsetOf(s.vocabulary())) {
    Fail(ErrorCode::kInvalidArgument, "reduct vocabulary is not contained in the structure's");
  }
  std::map<std::string, std::set<Tuple>> relations;
  for (const auto& [name, arity] : sub.relations()) relations[name] = s.relation(name);
  std::map<std::string, Element> constants;
  for (const auto& name : sub.constants()) constants[name] = s.constants().at(name);
  return Structure(sub, s.universe(), std::move(relations), std::move(constants), s.tag());
}

Structure Rename(const Structure& s, const Renaming& rho, const Vocabulary* target) {
  const Vocabulary& voc = s.vocabulary();
  for (const auto& [from, to] : rho) {
    if (!voc.HasSymbol(from)) {
      Fail(ErrorCode::kInvalidArgument, "renaming mentions unknown symbol '" + from + "'");
    }
    CheckName(to);
  }
  auto image = [&](const std::string& name) {
    auto it = rho.find(name);
    return it == rho.end() ? name : it->second;
  };
  Vocabulary renamed;
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, Element> constants;
  // AddRelation/AddConstant reject collisions, which is exactly injectivity.
  for (const auto& [name, arity] : voc.relations()) {
    renamed.AddRelation(image(name), arity);
    relations[image(name)] = s.relation(name);
  }
  for (const auto& name : voc.constants()) {
    renamed.AddConstant(image(name));
    constants[image(name)] = s.constants().at(name);
  }
  if (target != nullptr) {
    for (const auto& [name, arity] : renamed.relations()) {
      auto it = target->relations().find(name);
      if (it == target->relations().end() || it->second != arity) {
        Fail(ErrorCode::kInvalidArgument,
             "renaming sends a relation to '" + name + "', which is not a relation of that arity");
      }
    }
    for (const auto& name : renamed.constants()) {
      if (!target->constants().contains(name)) {
        Fail(ErrorCode::kInvalidArgument,
             "renaming sends a constant to '" + name + "', which is not a constant");
      }
    }
  }
  return Structure(std::move(renamed), s.universe(), std::move(relations),
                   std::move(constants), s.tag());
}

Renaming InverseRenaming(const Renaming& rho) {
  Renaming inv;
  for (const auto& [from, to] : rho) {
    if (!inv.emplace(to, from).second) {
      Fail(ErrorCode::kInvalidArgument, "renaming is not injective");
    }
  }
  return inv;
}

Structure ExpandConstant(const Structure& s, const std::string& constant,
                         std::string_view element) {
  if (s.vocabulary().HasSymbol(constant)) {
    Fail(ErrorCode::kInvalidArgument, "duplicate symbol '" + constant + "'");
  }
  const Element e = s.IndexOf(element);
  Vocabulary voc = s.vocabulary();
  voc.AddConstant(constant);
  auto constants = s.constants();
  constants[constant] = e;
  return Structure(std::move(voc), s.universe(), s.relations(), std::move(constants), s.tag());
}

bool IsPartialIsomorphism(const Structure& m0, const Structure& m1, const PartialMap& g) {
  RequireSameVocabulary(m0, m1);
  for (const auto& [x, y] : g.pairs()) {
    if (x >= m0.size() || y >= m1.size()) {
      Fail(ErrorCode::kInvalidArgument, "partial map leaves the universe");
    }
  }
  for (const auto& [name, c0] : m0.constants()) {
    const Element c1 = m1.constants().at(name);
    if (auto img = g.Image(c0); img && *img != c1) return false;
    if (auto pre = g.Preimage(c1); pre && *pre != c0) return false;
  }
  const std::vector<Element> domain = g.Domain();
  for (const auto& [name, arity] : m0.vocabulary().relations()) {
    Tuple image(static_cast<std::size_t>(arity));
    const bool ok = ForEachTuple(domain, arity, [&](const Tuple& t) {
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = *g.Image(t[i]);
      return m0.Holds(name, t) == m1.Holds(name, image);
    });
    if (!ok) return false;
  }
  return true;
}

bool IsSubstructure(const Structure& m, const Structure& n) {
  if (!(m.vocabulary() == n.vocabulary())) return false;
  std::vector<Element> embed;
  for (const auto& id : m.universe()) {
    auto e = n.Find(id);
    if (!e) return false;
    embed.push_back(*e);
  }
  for (const auto& [name, c] : m.constants()) {
    if (embed[c] != n.constants().at(name)) return false;
  }
  for (const auto& [name, arity] : m.vocabulary().relations()) {
    Tuple image(static_cast<std::size_t>(arity));
    std::vector<Element> all(m.size());
    std::iota(all.begin(), all.end(), Element{0});
    const bool ok = ForEachTuple(all, arity, [&](const Tuple& t) {
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = embed[t[i]];
      return m.Holds(name, t) == n.Holds(name, image);
    });
    if (!ok) return false;
  }
  return true;
}

Structure InducedSubstructure(const Structure& n, std::span<const Element> elements) {
  std::vector<int> remap(n.size(), -1);
  std::vector<std::string> universe;
  for (Element e : elements) {
    if (e >= n.size()) Fail(ErrorCode::kInvalidArgument, "element outside the universe");
    if (remap[e] >= 0) continue;
    remap[e] = static_cast<int>(universe.size());
    universe.push_back(n.IdOf(e));
  }
  std::map<std::string, std::set<Tuple>> relations;
  for (const auto& [name, tuples] : n.relations()) {
    auto& out = relations[name];
    for (const Tuple& t : tuples) {
      Tuple u;
      for (Element e : t) {
        if (remap[e] < 0) break;
        u.push_back(static_cast<Element>(remap[e]));
      }
      if (u.size() == t.size()) out.insert(std::move(u));
    }
  }
  std::map<std::string, Element> constants;
  for (const auto& [name, c] : n.constants()) {
    if (remap[c] < 0) {
      Fail(ErrorCode::kInvalidArgument, "substructure must contain constant '" + name + "'");
    }
    constants[name] = static_cast<Element>(remap[c]);
  }
  return Structure(n.vocabulary(), std::move(universe), std::move(relations),
                   std::move(constants));
}

bool AreIsomorphic(const Structure& a, const Structure& b) {
  bool found = false;
  SearchIsomorphisms(a, b, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<std::vector<Element>> Automorphisms(const Structure& s) {
  std::vector<std::vector<Element>> out;
  SearchIsomorphisms(s, s, [&](const std::vector<int>& g) {
    out.emplace_back(g.begin(), g.end());
    return true;
  });
  return out;
}

}  // namespace dgame
