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
#include <string_view>
#include <vector>

#include "church/types.hpp"

namespace church {

/// w^w * gamma (gamma >= 1, value irrelevant) when flag is set, followed by
/// sum of w^exp * coeff with strictly decreasing exponents and coeff >= 1.
struct OrdinalExpr {
    struct Term {
        std::uint64_t exp = 0;
        std::uint64_t coeff = 1;
        bool operator==(const Term&) const = default;
    };
    bool flag = false;
    std::vector<Term> terms;

    bool is_zero() const { return !flag && terms.empty(); }
    bool finite() const { return !flag && (terms.empty() || terms[0].exp == 0); }
    /// Coefficient of w^0.
    std::uint64_t finite_part() const;
    bool operator==(const OrdinalExpr&) const = default;
};

/// Ordinal sum (not commutative); the multiplier of w^w parts is not tracked.
OrdinalExpr ordinal_add(const OrdinalExpr& a, const OrdinalExpr& b);
OrdinalExpr ordinal_finite(std::uint64_t k);
OrdinalExpr ordinal_power(std::uint64_t exp, std::uint64_t coeff = 1);

/// "w^w + w^3*2 + w*5 + 7" or "code:[f,a_n,...,a_0]".
OrdinalExpr parse_ordinal(std::string_view text);
std::string render(const OrdinalExpr& a);

Code code_of(const OrdinalExpr& a);
OrdinalExpr ordinal_of(const Code& c);
Code parse_code(std::string_view text);
std::string render(const Code& c);

/// Where the game types of powers of w stop changing, and how multiples of
/// each smaller power repeat: gt(w^k * j) has lag[k] and period[k] in j >= 1.
struct StabilizationInfo {
    std::size_t m = 0;
    std::vector<std::uint64_t> lag;     // indexed by exponent k < m
    std::vector<std::uint64_t> period;  // indexed by exponent k < m
};

/// Code relative to m: flag for the w^m * gamma part, digits n_1..n_m for
/// exponents m-1..0.
Code code_n(const OrdinalExpr& a, std::size_t m);

/// k itself below the lag, else lag + ((k - lag) mod period).
std::uint64_t trun(std::uint64_t k, std::uint64_t lag, std::uint64_t period);

Code gcode_of(const OrdinalExpr& a, const StabilizationInfo& stab);

/// A representative ordinal for a game code: the code read as Code_n digits.
OrdinalExpr ordinal_of_gcode(const Code& g, const StabilizationInfo& stab);

}  // namespace church
