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

namespace church {

/// Max-parity game: player 0 wins a play iff the largest priority seen
/// infinitely often is even.
struct ParityArena {
    std::vector<int> owner;                // 0 or 1
    std::vector<int> priority;
    std::vector<std::vector<int>> succ;
    int initial = 0;

    std::size_t size() const { return owner.size(); }
    int add_position(int own, int prio);
    void add_edge(int from, int to) { succ[static_cast<std::size_t>(from)].push_back(to); }
    /// Empty when every position has a successor.
    std::string check() const;
};

struct ParitySolution {
    std::vector<int> winner;    // per position
    std::vector<int> strategy;  // chosen successor for positions owned by their winner, else -1
};

ParitySolution solve_parity(const ParityArena& g);

/// True iff in the graph where each position of `player` keeps only its
/// strategy edge, no cycle reachable from `from` has a top priority favouring
/// the other player.
bool strategy_wins_from(const ParityArena& g, const std::vector<int>& strategy, int player, int from);

/// Winners by enumerating every positional strategy of player 0.
std::vector<int> brute_force_winners(const ParityArena& g);

std::string dump(const ParityArena& g);

}  // namespace church
