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

#include <cstdint>
#include <string>
#include <vector>

#include "church/semigroup.hpp"

namespace church {

/// State-based Buchi automaton with a single initial state.
struct NBA {
    int alphabet = 0;
    int initial = 0;
    std::vector<std::vector<std::vector<int>>> delta;  // [state][letter] -> targets
    std::vector<bool> accepting;
    std::size_t states() const { return delta.size(); }
};

/// Deterministic, total parity automaton with priorities on transitions.
/// Max-parity: a run is accepting iff the largest priority seen infinitely
/// often is even.
struct DPA {
    int alphabet = 0;
    int initial = 0;
    std::vector<std::vector<int>> delta;     // [state][letter]
    std::vector<std::vector<int>> priority;  // [state][letter]
    int max_priority = 0;
    std::size_t states() const { return delta.size(); }
};

/// NBA over the elements of s accepting the sequences whose omega-sum lies in win.
NBA build_value_nba(const Semigroup& s, const std::vector<bool>& win);

bool nba_accepts_lasso(const NBA& a, const std::vector<int>& u, const std::vector<int>& v);
bool dpa_accepts_lasso(const DPA& a, const std::vector<int>& u, const std::vector<int>& v);

/// Safra trees with compact names; throws ResourceLimit past max_states.
DPA determinize(const NBA& a, std::size_t max_states = 100'000);

/// Same language: priorities of transitions between SCCs set to 0, then
/// states merged by bisimulation on (priority, target).
DPA reduce(const DPA& a);

/// Line-based dumps: "state q [acc]" / "edge q letter target [priority]".
std::string dump(const NBA& a);
std::string dump(const DPA& a);

}  // namespace church
