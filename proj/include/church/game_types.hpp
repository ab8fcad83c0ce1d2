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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "church/algebra.hpp"
#include "church/omega_game.hpp"
#include "church/ordinal.hpp"

namespace church {

/// Set of algebra elements, bit i = element i.
using WinSet = std::uint64_t;

std::string render_winset(WinSet g);

/// Upward-closed family of win sets, stored as its antichain of minimal members.
class GameType {
public:
    GameType() = default;
    /// Upward closure of the given sets.
    static GameType generated_by(std::vector<WinSet> sets);

    bool contains(WinSet g) const;
    const std::vector<WinSet>& minimal() const { return minimal_; }
    bool empty() const { return minimal_.empty(); }
    bool operator==(const GameType&) const = default;
    bool operator<(const GameType& o) const { return minimal_ < o.minimal_; }

private:
    std::vector<WinSet> minimal_;
};

std::string render(const GameType& t);

struct Limits {
    std::size_t max_types = 200'000;   // reduced-algebra elements per level
    std::size_t max_states = 200'000;  // parity automaton states
    std::size_t max_elements = 20;     // win sets are enumerated over 2^elements
    std::size_t max_exponent = 64;     // powers of w tried before giving up
    bool check_monotone = false;       // evaluate every win set and assert upward closure
};

/// Game types over one finite algebra with fixed letters (the four moves).
class GameAlgebra {
public:
    GameAlgebra(const Semigroup& s, std::vector<Elem> letters, const Limits& limits = {});

    const Semigroup& algebra() const { return s_; }
    const std::vector<Elem>& letters() const { return letters_; }
    std::size_t size() const { return s_.size(); }
    WinSet full() const { return full_; }
    ValueAutomata& automata() { return va_; }
    std::vector<bool> as_vector(WinSet g) const;

    GameType one() const;
    /// Types t such that some member G' of b has t + t' in g for every t' in G'.
    WinSet k_set(const GameType& b, WinSet g) const;
    GameType add(const GameType& a, const GameType& b) const;
    GameType times(const GameType& a, std::uint64_t j) const;
    /// Proposals of I in Game_omega(c, .): the minimal members of c.
    RoundGameSolution game_omega(const GameType& c, WinSet g);
    GameType times_omega(const GameType& c);

private:
    template <class Pred>
    GameType collect(Pred member) const;

    const Semigroup& s_;
    std::vector<Elem> letters_;
    Limits limits_;
    WinSet full_ = 0;
    ValueAutomata va_;
};

struct Stabilization {
    StabilizationInfo info;
    std::vector<GameType> powers;                  // gt(w^k), k = 0..m
    std::vector<std::vector<GameType>> multiples;  // [k][j-1] = gt(w^k * j), j < lag + period
    bool idempotent_top = false;                   // gt(w^m) + gt(w^m) = gt(w^m)
};

/// Iterates times_omega from gt(1) until gt(w^m) = gt(w^(m+1)).
Stabilization stabilize(GameAlgebra& ga, std::size_t max_exponent = 64);

/// Game type of a positive ordinal from the stabilization tables.
GameType game_type_of(const GameAlgebra& ga, const Stabilization& st, const OrdinalExpr& a);

struct AtlasRow {
    Code gcode;
    Player winner;
};

struct Atlas {
    StabilizationInfo info;
    std::vector<AtlasRow> rows;
    std::size_t domain_size = 0;
};

/// Everything derived from one winning condition.
class ChurchProblem {
public:
    explicit ChurchProblem(const Formula& phi, const Limits& limits = {});

    const Formula& formula() const { return phi_; }
    const Kernel& kernel() const { return alg_->kernel(); }
    const FormulaAlgebra& formula_algebra() const { return *alg_; }
    GameAlgebra& games() { return *ga_; }
    const GameAlgebra& games() const { return *ga_; }
    const Semigroup& algebra() const { return alg_->syntactic(); }
    WinSet winset() const { return win_; }
    Elem letter(int a, int b) const { return alg_->letter(letter_bits(a, b)); }

    const Stabilization& stabilization();
    GameType game_type(const OrdinalExpr& a);
    Player decide(const OrdinalExpr& a);
    Atlas atlas(std::size_t max_rows = 1'000'000);

private:
    Formula phi_;
    Limits limits_;
    std::unique_ptr<FormulaAlgebra> alg_;
    std::unique_ptr<GameAlgebra> ga_;
    WinSet win_ = 0;
    std::optional<Stabilization> stab_;
};

}  // namespace church
