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

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "church/kernel.hpp"
#include "church/semigroup.hpp"
#include "church/types.hpp"

namespace church {

/// Which depth-0 entries a level needs to evaluate its atoms.
struct AtomMask {
    std::uint32_t size_full = 0;   // vars whose exact size (0, 1, >=2) matters
    std::uint32_t emptiness = 0;   // vars whose emptiness matters
    std::uint64_t sub = 0;
    std::uint64_t before = 0;

    Depth0 reduce(const Depth0& v) const;
};

/// Types relative to one kernel formula. Level d holds the reachable types of
/// chains with l+d predicates, keeping only the depth-0 entries its own atoms
/// read and, for each element, the set of congruence classes of one-variable
/// expansions at level d+1. Every level is reduced by the coarsest congruence
/// that preserves the truth of the formulas evaluated there.
class FormulaAlgebra {
public:
    struct Level {
        int vars = 0;
        AtomMask mask;
        std::vector<KernelFormula> formulas;
        std::vector<Depth0> vec;
        std::vector<std::vector<Elem>> sets;  // classes of level d+1
        std::unordered_map<std::string, Elem> index;
        std::vector<Elem> letters;            // by bit pattern
        Semigroup closure;
        Quotient quotient;
        std::vector<std::vector<bool>> truth;  // formula -> class -> value
    };

    FormulaAlgebra(const Kernel& k, std::size_t max_elements = 200'000);

    const Kernel& kernel() const { return kernel_; }
    int free_count() const { return kernel_.free_count; }
    int depth() const { return kernel_.depth(); }
    std::size_t level_count() const { return levels_.size(); }
    const Level& level(std::size_t d) const { return levels_[d]; }

    /// Reachable reduced types at the top level, before the congruence.
    const Semigroup& universe() const { return levels_[0].closure; }
    Elem universe_letter(std::uint32_t bits) const { return levels_[0].letters[bits]; }
    bool universe_wins(Elem x) const { return win_u_[x]; }
    const std::vector<bool>& universe_winset() const { return win_u_; }

    /// The syntactic quotient of the universe.
    const Semigroup& syntactic() const { return levels_[0].quotient.algebra; }
    Elem letter(std::uint32_t bits) const { return levels_[0].quotient.cls[levels_[0].letters[bits]]; }
    Elem class_of(Elem universe_element) const { return levels_[0].quotient.cls[universe_element]; }
    bool wins(Elem cls) const { return levels_[0].truth[0][cls]; }
    std::vector<bool> winset() const { return levels_[0].truth[0]; }

    /// Map a full semantic type (depth >= kernel depth) to its universe element.
    std::optional<Elem> from_full(TypeTable& tt, TypeId t) const;

    std::string summary() const;

    /// Kernel formula over the level's variables that holds exactly on the
    /// chains whose class at level d is cls.
    KernelFormula characteristic(std::size_t d, Elem cls) const;

private:
    void build_level(std::size_t d, std::size_t max_elements);
    bool eval_at(std::size_t d, const KernelFormula& f, Elem x) const;
    std::optional<Elem> lookup(std::size_t d, TypeTable& tt, TypeId t) const;

    Kernel kernel_;
    std::vector<Level> levels_;
    std::vector<std::unordered_map<const void*, std::size_t>> body_index_;
    std::vector<bool> win_u_;
    mutable std::vector<std::unordered_map<Elem, KernelFormula>> char_memo_;
};

/// Types of omega^k and omega^omega in a semigroup, starting from a letter.
struct PowerSequence {
    std::vector<Elem> t;  // t[k] for k < lag + period
    std::size_t lag = 0;
    std::size_t period = 1;
    Elem omega_omega = 0;
    Elem power(std::size_t k) const { return k < t.size() ? t[k] : t[lag + (k - lag) % period]; }
};

PowerSequence power_sequence(const Semigroup& s, Elem unit);

/// Element of the ordinal with code c, every position carrying `unit`.
Elem value_of_code(const Semigroup& s, Elem unit, const Code& c);

/// Monadic theory query through the reduced algebra of the sentence.
bool decide_sentence(const Formula& sentence, const Code& code, std::size_t max_elements = 200'000);

}  // namespace church
