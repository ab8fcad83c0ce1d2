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
#include <functional>
#include <string>
#include <vector>

#include "church/formula.hpp"
#include "church/kernel.hpp"
#include "church/semigroup.hpp"
#include "church/types.hpp"

namespace church {

enum class Player { I, II };

inline Player opponent(Player p) { return p == Player::I ? Player::II : Player::I; }
inline const char* player_name(Player p) { return p == Player::I ? "I" : "II"; }

/// Finite chain 0..k-1 with predicates P1..Pl as bit masks (k <= 63).
struct FiniteChain {
    int k = 0;
    std::vector<std::uint64_t> preds;

    static FiniteChain from_word(const std::vector<std::uint32_t>& letters, int l);
    std::uint32_t letter_at(int pos) const;
};

struct EvalBudget {
    std::uint64_t max_steps = 200'000'000;
};

bool eval_finite(const Formula& f, const FiniteChain& m, const EvalBudget& budget = {});
bool eval_finite(const Kernel& f, const FiniteChain& m, const EvalBudget& budget = {});

/// Winning condition of a finite play: I wins iff cond(X1, X2).
using PlayCondition = std::function<bool(std::uint64_t x1, std::uint64_t x2, int k)>;

PlayCondition condition_of(const Formula& f);
PlayCondition condition_of(const Kernel& k);
/// I wins iff the sum of the letter elements lies in win.
PlayCondition condition_of(const Semigroup& s, const std::vector<Elem>& letters, const std::vector<bool>& win);

/// Player I reads the opponent bits of earlier rounds, Player II reads I's
/// bits up to and including the current round.
struct FiniteStrategyTable {
    Player player = Player::I;
    int length = 0;
    std::vector<std::uint8_t> moves;

    static std::size_t slot(Player p, int round, std::uint64_t history);
    std::uint8_t move(int round, std::uint64_t history) const { return moves[slot(player, round, history)]; }
    std::uint8_t& move(int round, std::uint64_t history) { return moves[slot(player, round, history)]; }
    static std::size_t table_size(Player p, int k);
};

struct Play {
    int length = 0;
    std::uint64_t x1 = 0;
    std::uint64_t x2 = 0;
};

/// Play the table against the opponent's bit sequence.
Play run_table(const FiniteStrategyTable& s, std::uint64_t opponent_bits);

struct FiniteGameResult {
    Player winner;
    FiniteStrategyTable strategy;
};

/// Minimax winner and a winning table. Among winning moves the table takes one
/// after which the outcome is fixed soonest, then 1 over 0.
FiniteGameResult solve_finite_game(const PlayCondition& cond, int k, int cap = 6);

bool verify_finite_strategy(const FiniteStrategyTable& s, const PlayCondition& cond, int k);

/// Full semantic type of a finite chain by exhaustive expansion.
TypeId enumerate_type(TypeTable& tt, int n, int l, const FiniteChain& w);

}  // namespace church
