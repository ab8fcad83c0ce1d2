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
#include <vector>

#include "church/formula.hpp"
#include "church/game_types.hpp"
#include "church/synthesis.hpp"

namespace church {

/// Sentences stating that psi(X1, X2) defines a winning strategy for one player:
/// psi is total and functional in the player's own variable, the defined
/// operator is causal (strongly causal for I), and every pair it admits wins.
struct WinSentences {
    Player player = Player::I;
    Formula total, unique, causal, correct;
    Formula win;  // conjunction of the four
};

WinSentences win_sentences(const Formula& phi, const Formula& psi, Player p);
std::pair<Formula, Formula> build_win_sentences(const Formula& phi, const Formula& psi);

/// Formula psi(X1, X2) defining the tree's strategy: own variable as a function
/// of the opponent's. Exact for finite trees; for infinite segments the encoding
/// follows the tree's structure and is not checked by evaluation.
Formula emit_strategy_formula(const StrategyTree& t, const ChurchProblem& p);

struct SearchOptions {
    std::size_t budget = 1000;      // candidates tested
    std::size_t max_size = 7;       // AST size of the body
    std::size_t max_types = 20'000; // per monadic-theory query
};

struct SearchResult {
    bool found = false;
    Player player = Player::I;
    Formula psi;
    std::size_t tested = 0;
    std::size_t skipped = 0;  // resource limits hit while verifying
};

/// Candidates "all1 t: (t in X <-> body)" for X the player's own variable, in
/// order of body size, then text; each is verified with the monadic theory of
/// the ordinal with the given code.
SearchResult search_definable_strategy(const Formula& phi, const Code& code, const SearchOptions& opts = {});

/// Candidate bodies over the free first-order variable t, size exactly n.
std::vector<Formula> candidate_bodies(std::size_t n);

/// Sentence holding exactly in the ordinals with the given game code.
Formula gcode_sentence(const Code& g, const StabilizationInfo& info);

/// Disjunction of gcode sentences over the codes won by Player I.
Formula win_phi_sentence(const Atlas& atlas);

}  // namespace church
