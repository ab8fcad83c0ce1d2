/*
 * Copyright 2026 The Church Ordinals Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

#include <json.hpp>

#include "church/synthesis.hpp"

namespace church {

/// Strategy tree document. Nodes are listed once and referenced by id, since
/// subtrees are shared. Win sets are lists of type indices.
nlohmann::json strategy_to_json(const StrategyTree& t);
StrategyTree strategy_from_json(const nlohmann::json& doc);

void save_strategy(const StrategyTree& t, const std::string& path);
StrategyTree load_strategy(const std::string& path);

nlohmann::json winset_to_json(WinSet g);
WinSet winset_from_json(const nlohmann::json& j);

}  // namespace church
