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

using Elem = std::uint32_t;

/// Finite algebra with an associative sum and the value of constant
/// omega-sums: omega(x) = x + x + ...
class Semigroup {
public:
    Semigroup() = default;
    Semigroup(std::size_t n, std::vector<Elem> add, std::vector<Elem> omega);

    std::size_t size() const { return n_; }
    Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
    Elem omega(Elem a) const { return omega_[a]; }
    bool idempotent(Elem a) const { return add(a, a) == a; }
    Elem idempotent_power(Elem a) const;
    Elem fold(const std::vector<Elem>& word) const;

    std::vector<Elem> add_closure(const std::vector<Elem>& gens) const;
    /// Values of omega-sums of sequences over gens.
    std::vector<Elem> achievable(const std::vector<Elem>& gens) const;

    /// Empty string when the laws hold, else a description of the first failure.
    std::string check_laws() const;

    const std::vector<Elem>& add_table() const { return add_; }
    const std::vector<Elem>& omega_table() const { return omega_; }

private:
    std::size_t n_ = 0;
    std::vector<Elem> add_;
    std::vector<Elem> omega_;
};

/// add(fold(u), omega(fold(v))), or omega(fold(v)) when u is empty.
Elem lasso_value(const Semigroup& s, const std::vector<Elem>& u, const std::vector<Elem>& v);

struct Quotient {
    Semigroup algebra;
    std::vector<Elem> cls;  // element -> class
    std::vector<Elem> rep;  // class -> representative
};

/// Coarsest congruence for sum and omega refining the initial labelling.
Quotient congruence_quotient(const Semigroup& s, const std::vector<std::uint32_t>& initial);

}  // namespace church
