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

#include "dgame/json_io.hpp"

#include <algorithm>
#include <set>

#include "dgame/errors.hpp"

namespace dgame::json {

namespace {

void Expect(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

void OnlyKeys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  Expect(j.is_object(), std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return key == k; });
    Expect(known, std::string("unknown field '") + key + "' in " + where);
  }
}

const Json& Field(const Json& j, const char* key, const char* where) {
  auto it = j.find(key);
  Expect(it != j.end(), std::string("missing field '") + key + "' in " + where);
  return *it;
}

std::string Str(const Json& j, const char* what) {
  Expect(j.is_string(), std::string(what) + " must be a string");
  return j.get<std::string>();
}

Ordinal Ord(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return Ordinal::FromNat(j.get<std::uint64_t>());
  return Ordinal::Parse(Str(j, what));
}

Element Id(const Json& j, const Structure& s) {
  const std::string id = Str(j, "element id");
  auto e = s.Find(id);
  Expect(e.has_value(), "unknown element id '" + id + "'");
  return *e;
}

Json Ids(const ElementSet& set, const Structure& s) {
  Json out = Json::array();
  for (Element e : set) out.push_back(s.IdOf(e));
  return out;
}

ElementSet ToIds(const Json& j, const Structure& s) {
  Expect(j.is_array(), "element set must be an array");
  ElementSet out;
  for (const Json& x : j) out.insert(Id(x, s));
  return out;
}

Json Heights(const HeightMap& h, const Structure& s) {
  Json out = Json::object();
  for (const auto& [e, v] : h) out[s.IdOf(e)] = v.ToString();
  return out;
}

HeightMap ToHeights(const Json& j, const Structure& s) {
  Expect(j.is_object(), "height map must be an object");
  HeightMap out;
  for (const auto& [id, v] : j.items()) {
    auto e = s.Find(id);
    Expect(e.has_value(), "unknown element id '" + id + "'");
    out.emplace(*e, Ord(v, "height"));
  }
  return out;
}

Json Map(const PartialMap& g, const Structure& m0, const Structure& m1) {
  Json out = Json::array();
  for (const auto& [x, y] : g.pairs()) out.push_back(Json::array({m0.IdOf(x), m1.IdOf(y)}));
  return out;
}

PartialMap ToMap(const Json& j, const Structure& m0, const Structure& m1) {
  Expect(j.is_array(), "g must be an array of pairs");
  std::vector<PartialMap::Pair> pairs;
  for (const Json& p : j) {
    Expect(p.is_array() && p.size() == 2, "g entries must be [source, target] pairs");
    pairs.emplace_back(Id(p[0], m0), Id(p[1], m1));
  }
  try {
    return PartialMap::FromPairs(std::move(pairs));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json FromStructure(const Structure& s) {
  Json vocab = Json::object();
  Json rels = Json::object();
  for (const auto& [name, arity] : s.vocabulary().relations()) rels[name] = arity;
  vocab["relations"] = rels;
  vocab["constants"] = Json::array();
  for (const auto& c : s.vocabulary().constants()) vocab["constants"].push_back(c);
  Json out = Json::object();
  out["vocabulary"] = vocab;
  out["universe"] = s.universe();
  Json interp = Json::object();
  for (const auto& [name, tuples] : s.relations()) {
    Json list = Json::array();
    for (const Tuple& t : tuples) {
      Json tuple = Json::array();
      for (Element e : t) tuple.push_back(s.IdOf(e));
      list.push_back(tuple);
    }
    interp[name] = list;
  }
  out["relations"] = interp;
  Json consts = Json::object();
  for (const auto& [name, e] : s.constants()) consts[name] = s.IdOf(e);
  out["constants"] = consts;
  return out;
}

Structure ToStructure(const Json& j) {
  OnlyKeys(j, {"vocabulary", "universe", "relations", "constants"}, "structure");
  const Json& vj = Field(j, "vocabulary", "structure");
  OnlyKeys(vj, {"relations", "constants"}, "vocabulary");
  Vocabulary vocab;
  try {
    const Json& rj = Field(vj, "relations", "vocabulary");
    Expect(rj.is_object(), "vocabulary relations must be an object");
    for (const auto& [name, arity] : rj.items()) {
      Expect(arity.is_number_integer(), "arity of '" + name + "' must be an integer");
      vocab.AddRelation(name, arity.get<int>());
    }
    const Json& cj = Field(vj, "constants", "vocabulary");
    Expect(cj.is_array(), "vocabulary constants must be an array");
    for (const Json& c : cj) vocab.AddConstant(Str(c, "constant name"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  const Json& uj = Field(j, "universe", "structure");
  Expect(uj.is_array(), "universe must be an array");
  std::vector<std::string> universe;
  std::map<std::string, Element> index;
  for (const Json& u : uj) {
    universe.push_back(Str(u, "element id"));
    Expect(index.emplace(universe.back(), static_cast<Element>(universe.size() - 1)).second,
           "duplicate element id '" + universe.back() + "'");
  }
  auto lookup = [&](const Json& x) {
    const std::string id = Str(x, "element id");
    auto it = index.find(id);
    Expect(it != index.end(), "unknown element id '" + id + "'");
    return it->second;
  };
  std::map<std::string, std::set<Tuple>> relations;
  const Json& rj = Field(j, "relations", "structure");
  Expect(rj.is_object(), "relations must be an object");
  for (const auto& [name, tuples] : rj.items()) {
    Expect(tuples.is_array(), "tuples of '" + name + "' must be an array");
    auto& set = relations[name];
    for (const Json& t : tuples) {
      Expect(t.is_array(), "a tuple must be an array");
      Tuple tuple;
      for (const Json& x : t) tuple.push_back(lookup(x));
      set.insert(std::move(tuple));
    }
  }
  std::map<std::string, Element> constants;
  const Json& cj = Field(j, "constants", "structure");
  Expect(cj.is_object(), "constants must be an object");
  for (const auto& [name, id] : cj.items()) constants[name] = lookup(id);
  try {
    return Structure(std::move(vocab), std::move(universe), std::move(relations),
                     std::move(constants));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string SerializeStructure(const Structure& s) { return FromStructure(s).dump(); }

Structure ParseStructure(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return ToStructure(j);
}

std::vector<Structure> ToStructureList(const Json& j) {
  std::vector<Structure> out;
  if (j.is_array()) {
    for (const Json& s : j) out.push_back(ToStructure(s));
  } else {
    out.push_back(ToStructure(j));
  }
  return out;
}

Json FromParams(const GameParams& p) {
  Json out = Json::object();
  out["beta"] = p.beta.ToString();
  out["theta"] = p.theta;
  out["alpha"] = p.alpha.ToString();
  return out;
}

GameParams ToParams(const Json& j) {
  OnlyKeys(j, {"beta", "theta", "alpha"}, "params");
  const Json& theta = Field(j, "theta", "params");
  Expect(theta.is_number_integer(), "theta must be an integer");
  return {Ord(Field(j, "beta", "params"), "beta"), theta.get<int>(),
          Ord(Field(j, "alpha", "params"), "alpha")};
}

Json FromPosition(const Position& p, const Structure& m0, const Structure& m1) {
  Json out = Json::object();
  out["height"] = p.height.ToString();
  out["a0"] = Ids(p.a0, m0);
  out["a1"] = Ids(p.a1, m1);
  out["g"] = Map(p.g, m0, m1);
  out["h0"] = Heights(p.h0, m0);
  out["h1"] = Heights(p.h1, m1);
  return out;
}

Position ToPosition(const Json& j, const Structure& m0, const Structure& m1) {
  OnlyKeys(j, {"height", "a0", "a1", "g", "h0", "h1"}, "position");
  Position p;
  p.height = Ord(Field(j, "height", "position"), "height");
  p.a0 = ToIds(Field(j, "a0", "position"), m0);
  p.a1 = ToIds(Field(j, "a1", "position"), m1);
  p.g = ToMap(Field(j, "g", "position"), m0, m1);
  p.h0 = ToHeights(Field(j, "h0", "position"), m0);
  p.h1 = ToHeights(Field(j, "h1", "position"), m1);
  return p;
}

Json FromCorePosition(const CorePosition& p, const Structure& m0, const Structure& m1) {
  Json out = Json::object();
  out["a0"] = Ids(p.a0, m0);
  out["a1"] = Ids(p.a1, m1);
  out["g"] = Map(p.g, m0, m1);
  out["h0"] = Heights(p.h0, m0);
  out["h1"] = Heights(p.h1, m1);
  return out;
}

Json FromMove(const AdamMove& m, const Structure& m0, const Structure& m1) {
  Json out = Json::object();
  out["beta"] = m.beta.ToString();
  out["b0"] = Ids(m.b0, m0);
  out["b1"] = Ids(m.b1, m1);
  return out;
}

AdamMove ToMove(const Json& j, const Structure& m0, const Structure& m1) {
  OnlyKeys(j, {"beta", "b0", "b1"}, "move");
  return {Ord(Field(j, "beta", "move"), "beta"), ToIds(Field(j, "b0", "move"), m0),
          ToIds(Field(j, "b1", "move"), m1)};
}

Json FromStrategy(const PositionalStrategy& k, const Structure& m0, const Structure& m1) {
  PositionalStrategy sorted = k;
  sorted.Normalize();
  Json out = Json::array();
  for (const Position& p : sorted.positions) out.push_back(FromPosition(p, m0, m1));
  return out;
}

PositionalStrategy ToStrategy(const Json& j, const Structure& m0, const Structure& m1) {
  const Json* list = &j;
  if (j.is_object()) list = &Field(j, "strategy", "strategy file");
  Expect(list->is_array(), "a strategy must be an array of positions");
  PositionalStrategy k;
  for (const Json& p : *list) k.positions.push_back(ToPosition(p, m0, m1));
  k.Normalize();
  return k;
}

Json FromSolveResult(const SolveResult& r, const GameParams& params, SolveMode mode,
                     const Structure& m0, const Structure& m1) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["winner"] = PlayerName(r.winner);
  out["params"] = FromParams(params);
  out["mode"] = SolveModeName(mode);
  out["stats"] = {{"nodes", r.stats.nodes}, {"memo_hits", r.stats.memo_hits}};
  if (r.stabilization_rank) out["stabilization_rank"] = *r.stabilization_rank;
  if (r.strategy) out["strategy"] = FromStrategy(*r.strategy, m0, m1);
  if (!r.refutation.empty()) {
    Json table = Json::array();
    for (const Refutation& ref : r.refutation) {
      table.push_back({{"position", FromPosition(ref.position, m0, m1)},
                       {"move", FromMove(ref.move, m0, m1)}});
    }
    out["refutation"] = table;
  }
  return out;
}

Json FromKarpLevels(const KarpLevels& levels, const Structure& m0, const Structure& m1) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["stabilization_rank"] = levels.stabilization_rank;
  Json list = Json::array();
  for (const KarpLevel& level : levels.levels) {
    Json maps = Json::array();
    for (const PartialMap& g : level.maps) maps.push_back(Map(g, m0, m1));
    list.push_back({{"gamma", level.gamma}, {"size", level.maps.size()}, {"maps", maps}});
  }
  out["levels"] = list;
  return out;
}

Json FromPartition(const EquivPartition& p) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["params"] = FromParams(p.params);
  out["matrix"] = p.eve;
  out["classes"] = p.classes;
  return out;
}

Json FromWinningHeights(const WinningHeights& w, const Structure& m0, const Structure& m1) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["stabilization_rank"] = w.stabilization_rank;
  Json sizes = Json::array();
  for (const auto& level : w.levels) sizes.push_back(level.size());
  out["level_sizes"] = sizes;
  Json stable = Json::array();
  for (const CorePosition& c : w.levels.back()) stable.push_back(FromCorePosition(c, m0, m1));
  out["stable_level"] = stable;
  return out;
}

Json FromIntransitivity(const IntransitivityReport& r, const std::vector<Structure>& family) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["params"] = FromParams(r.params);
  out["family_size"] = r.family_size;
  out["triples_checked"] = r.triples_checked;
  out["outcome"] = r.triple ? "counterexample" : "exhausted";
  if (r.triple) {
    const auto [i, j, k] = *r.triple;
    out["triple"] = {i, j, k};
    out["reverified"] = r.reverified;
    Json instances = Json::array();
    const std::pair<int, int> legs[] = {{i, j}, {j, k}, {i, k}};
    const char* expected[] = {"eve", "eve", "adam"};
    for (int n = 0; n < 3; ++n) {
      instances.push_back({{"m0", FromStructure(family[legs[n].first])},
                           {"m1", FromStructure(family[legs[n].second])},
                           {"params", FromParams(r.params)},
                           {"mode", "full"},
                           {"expected_winner", expected[n]}});
    }
    out["instances"] = instances;
  }
  return out;
}

}  // namespace dgame::json
