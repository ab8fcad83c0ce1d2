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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "church/automata.hpp"
#include "church/finite_oracle.hpp"
#include "church/parity.hpp"
#include "church/semigroup.hpp"

namespace church {

/// Omega rounds: I picks a, then II picks b < emit[a].size(), and the round
/// contributes letter emit[a][b]. I wins iff the DPA accepts the letters.
struct RoundGame {
    std::vector<std::vector<int>> emit;
    int moves_i() const { return static_cast<int>(emit.size()); }
    int moves_ii(int a) const { return static_cast<int>(emit[static_cast<std::size_t>(a)].size()); }
};

/// Finite-memory strategy. Player I's output depends on the state only and
/// the state advances on II's move; Player II's output and step depend on
/// the state and I's move of the same round.
struct MealyMachine {
    Player player = Player::I;
    int initial = 0;
    std::vector<int> out_i;                // I: move per state
    std::vector<std::vector<int>> out_ii;  // II: move per state and I-move
    std::vector<std::vector<int>> next;    // per state and opponent move
    std::size_t states() const { return next.size(); }

    int respond(int state, int opponent_move) const;  // own move this round
    /// Own move and successor state for one round.
    std::pair<int, int> step(int state, int opponent_move) const;
};

MealyMachine minimize(const MealyMachine& m);

struct RoundGameSolution {
    Player winner = Player::I;
    MealyMachine machine;
    std::size_t arena_positions = 0;
};

RoundGameSolution solve_round_game(const RoundGame& g, const DPA& dpa);

/// True iff every play consistent with the machine is won by its player.
bool model_check_strategy(const RoundGame& g, const DPA& dpa, const MealyMachine& m);

/// Builds and caches parity automata for omega-sum conditions over one algebra.
class ValueAutomata {
public:
    explicit ValueAutomata(const Semigroup& s, std::size_t max_states = 200'000) : s_(s), max_states_(max_states) {}
    const DPA& get(const std::vector<bool>& win);
    std::size_t cached() const { return cache_.size(); }
    std::size_t determinized() const { return by_quotient_.size(); }
    const Semigroup& algebra() const { return s_; }

private:
    const Semigroup& s_;
    std::size_t max_states_;
    std::map<std::vector<bool>, std::unique_ptr<DPA>> cache_;
    std::map<std::string, DPA> by_quotient_;  // keyed by the quotient's tables
};

/// The McNaughton game of length omega over the letters of the algebra.
RoundGame mcnaughton_round(const std::vector<Elem>& letters);
RoundGameSolution solve_mcnaughton_omega(ValueAutomata& va, const std::vector<Elem>& letters,
                                         const std::vector<bool>& win);

/// Game_omega(C, G): I proposes a member of C, II answers an element of it.
RoundGame game_omega_round(const std::vector<std::vector<Elem>>& proposals);
RoundGameSolution solve_game_omega(ValueAutomata& va, const std::vector<std::vector<Elem>>& proposals,
                                   const std::vector<bool>& win);

/// Run the machine against an ultimately periodic opponent sequence; returns
/// the emitted letters as a lasso (prefix, loop).
std::pair<std::vector<int>, std::vector<int>> play_lasso(const RoundGame& g, const MealyMachine& m,
                                                         const std::vector<int>& opp_prefix,
                                                         const std::vector<int>& opp_loop);

std::string dump(const MealyMachine& m);

}  // namespace church
