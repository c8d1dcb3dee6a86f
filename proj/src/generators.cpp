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

#include "dgame/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dgame/errors.hpp"

namespace dgame {
namespace {

std::vector<std::string> Ids(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  return ids;
}

void RequirePositive(int n, const char* what) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, std::string(what) + " must be at least 1");
}

std::vector<std::string> Words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int ToInt(const std::string& word) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError("expected an integer, got '" + word + "'");
  }
  return value;
}

// "E/2,P/1,c": relations carry an arity, bare names are constants.
Vocabulary ParseVocabulary(const std::string& text) {
  Vocabulary voc;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) throw ParseError("empty symbol in vocabulary '" + text + "'");
    auto slash = item.find('/');
    if (slash == std::string::npos) {
      voc.AddConstant(item);
    } else {
      voc.AddRelation(item.substr(0, slash), ToInt(item.substr(slash + 1)));
    }
  }
  return voc;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Structure PureSet(int n) {
  RequirePositive(n, "universe size");
  return Structure(Vocabulary(), Ids(n), {}, {});
}

Structure LinearOrder(int n) {
  RequirePositive(n, "universe size");
  std::set<Tuple> less;
  for (Element i = 0; i < static_cast<Element>(n); ++i) {
    for (Element j = i + 1; j < static_cast<Element>(n); ++j) less.insert({i, j});
  }
  return Structure(Vocabulary({{"<", 2}}, {}), Ids(n), {{"<", less}}, {});
}

Structure FullTree(int branching, int depth) {
  RequirePositive(branching, "branching");
  if (depth < 0) Fail(ErrorCode::kInvalidArgument, "depth must be non-negative");
  if (branching > 10) {
    Fail(ErrorCode::kInvalidArgument, "branching above 10 is not supported by the node naming");
  }
  std::vector<std::string> nodes{"t"};
  for (std::size_t level_start = 0, d = 0; d < static_cast<std::size_t>(depth); ++d) {
    const std::size_t level_end = nodes.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (int c = 0; c < branching; ++c) nodes.push_back(nodes[i] + std::to_string(c));
    }
    level_start = level_end;
  }
  std::set<Tuple> prefix;
  for (Element s = 0; s < nodes.size(); ++s) {
    for (Element t = 0; t < nodes.size(); ++t) {
      if (nodes[t].starts_with(nodes[s])) prefix.insert({s, t});
    }
  }
  return Structure(Vocabulary({{"<=", 2}}, {}), std::move(nodes), {{"<=", prefix}}, {});
}

Structure Cycle(int n) {
  RequirePositive(n, "universe size");
  std::set<Tuple> edges;
  for (Element i = 0; i < static_cast<Element>(n); ++i) {
    edges.insert({i, static_cast<Element>((i + 1) % n)});
  }
  return Structure(Vocabulary({{"E", 2}}, {}), Ids(n), {{"E", edges}}, {});
}

Structure RandomStructure(const Vocabulary& vocabulary, int n, std::uint64_t seed) {
  RequirePositive(n, "universe size");
  // Raw engine output only: distributions are not reproducible across
  // standard libraries.
  std::mt19937_64 rng(seed);
  std::map<std::string, std::set<Tuple>> relations;
  for (const auto& [name, arity] : vocabulary.relations()) {
    auto& tuples = relations[name];
    Tuple t(static_cast<std::size_t>(arity), 0);
    while (true) {
      if (rng() & 1u) tuples.insert(t);
      int i = 0;
      while (i < arity && ++t[i] == static_cast<Element>(n)) t[i++] = 0;
      if (i == arity) break;
    }
  }
  std::map<std::string, Element> constants;
  for (const auto& name : vocabulary.constants()) {
    constants[name] = static_cast<Element>(rng() % static_cast<std::uint64_t>(n));
  }
  return Structure(vocabulary, Ids(n), std::move(relations), std::move(constants));
}

std::vector<Structure> AllDigraphs(int n) {
  RequirePositive(n, "universe size");
  if (n > 4) Fail(ErrorCode::kInvalidArgument, "digraph enumeration is limited to 4 vertices");
  const int bits = n * n;
  std::vector<int> perm(static_cast<std::size_t>(n));
  auto permute = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (mask >> (i * n + j) & 1u) out |= 1u << (perm[i] * n + perm[j]);
      }
    }
    return out;
  };
  std::vector<Structure> out;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    std::iota(perm.begin(), perm.end(), 0);
    bool least = true;
    do {
      if (permute(mask) < mask) {
        least = false;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!least) continue;
    std::set<Tuple> edges;
    for (int b = 0; b < bits; ++b) {
      if (mask >> b & 1u) edges.insert({static_cast<Element>(b / n), static_cast<Element>(b % n)});
    }
    out.emplace_back(Vocabulary({{"E", 2}}, {}), Ids(n), std::map<std::string, std::set<Tuple>>{{"E", edges}},
                     std::map<std::string, Element>{});
  }
  return out;
}

Structure Generate(std::string_view spec, std::uint64_t seed) {
  const auto w = Words(spec);
  if (w.empty()) throw ParseError("empty generator spec");
  auto args = [&](std::size_t count) {
    if (w.size() != count + 1) {
      throw ParseError("'" + w[0] + "' expects " + std::to_string(count) + " argument(s)");
    }
  };
  if (w[0] == "pure_set") {
    args(1);
    return PureSet(ToInt(w[1]));
  }
  if (w[0] == "linear_order") {
    args(1);
    return LinearOrder(ToInt(w[1]));
  }
  if (w[0] == "full_tree") {
    args(2);
    return FullTree(ToInt(w[1]), ToInt(w[2]));
  }
  if (w[0] == "cycle") {
    args(1);
    return Cycle(ToInt(w[1]));
  }
  if (w[0] == "random_structure") {
    if (w.size() != 2 && w.size() != 3) {
      throw ParseError("'random_structure' expects a size and an optional vocabulary");
    }
    const Vocabulary voc = w.size() == 3 ? ParseVocabulary(w[2]) : Vocabulary({{"E", 2}}, {});
    return RandomStructure(voc, ToInt(w[1]), seed);
  }
  throw ParseError("unknown generator '" + w[0] + "'");
}

std::vector<Structure> GenerateFamily(std::string_view spec, std::uint64_t seed) {
  const auto w = Words(spec);
  std::vector<Structure> out;
  if (w.size() == 2 && w[0].ends_with("s") && w[0] != "random_structures") {
    const int bound = ToInt(w[1]);
    RequirePositive(bound, "family bound");
    if (w[0] == "pure_sets") {
      for (int n = 1; n <= bound; ++n) out.push_back(PureSet(n));
    } else if (w[0] == "linear_orders") {
      for (int n = 1; n <= bound; ++n) out.push_back(LinearOrder(n));
    } else if (w[0] == "cycles") {
      for (int n = 1; n <= bound; ++n) out.push_back(Cycle(n));
    } else if (w[0] == "digraphs") {
      for (int n = 1; n <= bound; ++n) {
        for (auto& s : AllDigraphs(n)) out.push_back(std::move(s));
      }
    } else if (w[0] == "trees") {
      // full_tree(k, 0) is the same single node for every k; keep one.
      out.push_back(FullTree(1, 0));
      for (int d = 1; d < bound; ++d) {
        for (int k = 1;; ++k) {
          long nodes = 1, level = 1;
          for (int i = 0; i < d; ++i) nodes += (level *= k);
          if (nodes > bound) break;
          out.push_back(FullTree(k, d));
        }
      }
    } else {
      throw ParseError("unknown family '" + w[0] + "'");
    }
    return out;
  }
  std::string text(spec);
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ';');) {
    item = Trim(item);
    if (!item.empty()) out.push_back(Generate(item, seed++));
  }
  if (out.empty()) throw ParseError("empty family spec");
  for (const auto& s : out) {
    if (!(s.vocabulary() == out.front().vocabulary())) {
      Fail(ErrorCode::kVocabularyMismatch, "family members must share a vocabulary");
    }
  }
  return out;
}

}  // namespace dgame
