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

#ifndef DGAME_JSON_IO_HPP_
#define DGAME_JSON_IO_HPP_

#include <string>

#include "dgame/backforth.hpp"
#include "dgame/game.hpp"
#include "dgame/logic.hpp"
#include "dgame/structure.hpp"
#include "json.hpp"

namespace dgame::json {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Parse failures throw ParseError; unknown fields are rejected.
Json FromStructure(const Structure& s);
Structure ToStructure(const Json& j);
std::string SerializeStructure(const Structure& s);
Structure ParseStructure(const std::string& text);

Json FromParams(const GameParams& p);
GameParams ToParams(const Json& j);

// Elements are written by id.
Json FromPosition(const Position& p, const Structure& m0, const Structure& m1);
Position ToPosition(const Json& j, const Structure& m0, const Structure& m1);
Json FromCorePosition(const CorePosition& p, const Structure& m0, const Structure& m1);
Json FromMove(const AdamMove& m, const Structure& m0, const Structure& m1);
AdamMove ToMove(const Json& j, const Structure& m0, const Structure& m1);

// Positions in canonical sorted order.
Json FromStrategy(const PositionalStrategy& k, const Structure& m0, const Structure& m1);
PositionalStrategy ToStrategy(const Json& j, const Structure& m0, const Structure& m1);

Json FromSolveResult(const SolveResult& r, const GameParams& params, SolveMode mode,
                     const Structure& m0, const Structure& m1);
Json FromKarpLevels(const KarpLevels& levels, const Structure& m0, const Structure& m1);
Json FromPartition(const EquivPartition& p);
Json FromWinningHeights(const WinningHeights& w, const Structure& m0, const Structure& m1);
Json FromIntransitivity(const IntransitivityReport& r, const std::vector<Structure>& family);

// Reads a JSON array of structures, or a single structure.
std::vector<Structure> ToStructureList(const Json& j);

}  // namespace dgame::json

#endif  // DGAME_JSON_IO_HPP_
