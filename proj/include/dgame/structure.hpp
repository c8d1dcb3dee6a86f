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

#ifndef DGAME_STRUCTURE_HPP_
#define DGAME_STRUCTURE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dgame {

// Index of an element in a structure's universe.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// A finite relational vocabulary. Function symbols are not native; an n-ary
// function is represented by its (n+1)-ary graph relation.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::map<std::string, int> relations, std::set<std::string> constants);

  void AddRelation(const std::string& name, int arity);
  void AddConstant(const std::string& name);

  const std::map<std::string, int>& relations() const { return relations_; }
  const std::set<std::string>& constants() const { return constants_; }
  bool HasSymbol(std::string_view name) const;
  bool empty() const { return relations_.empty() && constants_.empty(); }
  bool IsSubsetOf(const Vocabulary& other) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::map<std::string, int> relations_;
  std::set<std::string> constants_;
};

// Finite structure. Immutable once built; the constructor enforces that every
// symbol is interpreted, tuples have the right arity and all referenced
// elements exist.
class Structure {
 public:
  Structure(Vocabulary vocabulary, std::vector<std::string> universe,
            std::map<std::string, std::set<Tuple>> relations,
            std::map<std::string, Element> constants,
            std::optional<std::string> tag = std::nullopt);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  const std::map<std::string, std::set<Tuple>>& relations() const { return relations_; }
  const std::set<Tuple>& relation(const std::string& name) const;
  const std::map<std::string, Element>& constants() const { return constants_; }
  const std::optional<std::string>& tag() const { return tag_; }

  std::optional<Element> Find(std::string_view id) const;
  // Throws kInvalidArgument for unknown ids.
  Element IndexOf(std::string_view id) const;
  const std::string& IdOf(Element e) const { return universe_.at(e); }
  bool Holds(const std::string& relation, std::span<const Element> tuple) const;

  Structure WithTag(std::optional<std::string> tag) const;

  // Tags are labels for keeping game boards apart; they do not take part in
  // equality.
  friend bool operator==(const Structure& a, const Structure& b);

 private:
  Vocabulary vocabulary_;
  std::vector<std::string> universe_;
  std::map<std::string, std::set<Tuple>> relations_;
  std::map<std::string, Element> constants_;
  std::optional<std::string> tag_;
  std::unordered_map<std::string, Element> index_;
};

// An injective partial function between two universes, stored as pairs sorted
// by source element.
class PartialMap {
 public:
  using Pair = std::pair<Element, Element>;

  PartialMap() = default;
  // Throws kInvalidArgument if the pairs are not functional and injective.
  static PartialMap FromPairs(std::vector<Pair> pairs);
  static PartialMap Identity(std::span<const Element> elements);

  // Returns false (and leaves the map unchanged) if the pair would break
  // functionality or injectivity. Re-inserting an existing pair is a no-op.
  bool Insert(Element source, Element target);

  std::optional<Element> Image(Element source) const;
  std::optional<Element> Preimage(Element target) const;
  bool InDomain(Element e) const { return Image(e).has_value(); }
  bool InRange(Element e) const { return Preimage(e).has_value(); }
  std::vector<Element> Domain() const;
  std::vector<Element> Range() const;

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  PartialMap Inverse() const;
  bool IsSubsetOf(const PartialMap& other) const;
  template <typename Pred>
  PartialMap RestrictDomain(Pred keep) const {
    PartialMap out;
    for (const auto& p : pairs_) {
      if (keep(p.first)) out.pairs_.push_back(p);
    }
    return out;
  }

  friend bool operator==(const PartialMap&, const PartialMap&) = default;
  friend auto operator<=>(const PartialMap&, const PartialMap&) = default;

 private:
  std::vector<Pair> pairs_;
};

// second ∘ first: defined on x when first(x) is defined and lies in the domain
// of second.
PartialMap Compose(const PartialMap& first, const PartialMap& second);

// Forgets every symbol outside `sub`. Throws kInvalidArgument when `sub`
// mentions a symbol the structure does not have (or with a different arity).
Structure Reduct(const Structure& s, const Vocabulary& sub);

// Relabels symbols. Symbols not mentioned keep their names. The renaming must
// be injective on the vocabulary; when `target` is given, every renamed symbol
// must exist in it with the same kind and arity.
using Renaming = std::map<std::string, std::string>;
Structure Rename(const Structure& s, const Renaming& rho,
                 const Vocabulary* target = nullptr);
Renaming InverseRenaming(const Renaming& rho);

// Adds a fresh constant symbol interpreted as the element with id `element`.
Structure ExpandConstant(const Structure& s, const std::string& constant,
                         std::string_view element);

// True iff g preserves every atomic fact over its domain in both directions
// and pairs constant interpretations exactly whenever one of them is touched.
// Throws kVocabularyMismatch / kInvalidArgument on bad input.
bool IsPartialIsomorphism(const Structure& m0, const Structure& m1, const PartialMap& g);

// `m` is a substructure of `n`: its universe ids are a subset of n's, and
// relations and constants are the restrictions of n's.
bool IsSubstructure(const Structure& m, const Structure& n);
Structure InducedSubstructure(const Structure& n, std::span<const Element> elements);

bool AreIsomorphic(const Structure& a, const Structure& b);
// All automorphisms as permutations (perm[e] = image of e); identity first.
std::vector<std::vector<Element>> Automorphisms(const Structure& s);

}  // namespace dgame

#endif  // DGAME_STRUCTURE_HPP_
