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
#include <unordered_map>
#include <vector>

#include "church/kernel.hpp"

namespace church {

using TypeId = std::uint32_t;

/// Depth-0 type of a chain with up to 8 predicates. Matrix entry (i,j) is bit
/// 8*i+j. size holds two bits per variable: 0, 1 or 2 (meaning at least two).
struct Depth0 {
    std::uint8_t l = 0;
    std::uint16_t size = 0;
    std::uint64_t sub = 0;
    std::uint64_t before = 0;

    int size_of(int i) const { return (size >> (2 * i)) & 3; }
    bool empty(int i) const { return size_of(i) == 0; }
    bool sub_bit(int i, int j) const { return (sub >> (8 * i + j)) & 1; }
    bool before_bit(int i, int j) const { return (before >> (8 * i + j)) & 1; }
    bool operator==(const Depth0&) const = default;

    static Depth0 letter(int l, std::uint32_t bits);
    Depth0 restrict_to(int l2) const;
    bool consistent() const;
};

Depth0 add0(const Depth0& a, const Depth0& b);
Depth0 omega_idem0(const Depth0& e);

constexpr int kMaxVars = 8;

/// Interned hereditarily finite types. A type at level (d,l) is a Depth0
/// vector when d = 0 and a sorted set of level (d-1,l+1) types otherwise.
class TypeTable {
public:
    explicit TypeTable(std::size_t max_types = 2'000'000) : max_types_(max_types) {}

    TypeId intern0(const Depth0& v);
    TypeId intern_set(int d, int l, std::vector<TypeId> members);

    int depth(TypeId t) const { return entries_[t].d; }
    int vars(TypeId t) const { return entries_[t].l; }
    const std::vector<TypeId>& members(TypeId t) const { return entries_[t].members; }
    const Depth0& vec(TypeId t) const { return entries_[t].v; }
    /// Depth-0 data of t restricted to its own l variables.
    const Depth0& base(TypeId t) const { return entries_[t].base; }
    std::size_t size() const { return entries_.size(); }

    TypeId letter(int d, int l, std::uint32_t bits);
    TypeId add(TypeId a, TypeId b);
    TypeId proj(TypeId t);
    TypeId idempotent_power(TypeId t);
    bool idempotent(TypeId t) { return add(t, t) == t; }
    TypeId omega_pow_idem(TypeId e);
    /// Type of the omega-fold sum t + t + ...
    TypeId omega(TypeId t);
    std::vector<TypeId> add_closure(const std::vector<TypeId>& gens);
    std::vector<TypeId> achievable(const std::vector<TypeId>& gens);
    TypeId fold(const std::vector<TypeId>& word);

    bool eval(const KernelFormula& f, TypeId t);

    std::string describe(TypeId t) const;

private:
    struct Entry {
        int d;
        int l;
        Depth0 v;
        std::vector<TypeId> members;
        Depth0 base;
    };
    struct PairHash {
        std::size_t operator()(std::uint64_t k) const { return std::hash<std::uint64_t>()(k * 0x9E3779B97F4A7C15ull); }
    };
    TypeId push(Entry e, std::string key);
    static std::uint64_t pair_key(TypeId a, TypeId b) { return (std::uint64_t(a) << 32) | b; }

    std::size_t max_types_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, TypeId> index_;
    std::unordered_map<std::uint64_t, TypeId, PairHash> add_memo_;
    std::unordered_map<TypeId, TypeId> proj_memo_, idem_memo_, omega_memo_;
    std::unordered_map<std::uint64_t, bool, PairHash> eval_memo_;
    std::unordered_map<const void*, std::uint32_t> formula_ids_;
    std::vector<KernelFormula> formula_keep_;
};

/// Letters of the two-player game: bit 0 is X1 (Player I), bit 1 is X2.
inline std::uint32_t letter_bits(int a, int b) { return std::uint32_t(a) | (std::uint32_t(b) << 1); }

struct Universe {
    int n = 0;
    int l = 2;
    std::vector<TypeId> elements;
    std::unordered_map<TypeId, std::uint32_t> index;
    TypeId letters[4] = {0, 0, 0, 0};  // by letter_bits
};

Universe reachable_universe(TypeTable& tt, int n, int l = 2, std::size_t max_size = 100'000);

/// Winning set of a game condition, as universe indices.
std::vector<bool> win_set(TypeTable& tt, const Universe& u, const Kernel& k);

/// Code of an ordinal: flag for the omega^omega part, digits a_n..a_0.
struct Code {
    bool flag = false;
    std::vector<std::uint64_t> digits;  // most significant first
    bool operator==(const Code&) const = default;
};

struct PowerTypes {
    std::vector<TypeId> t;   // t[k] = type of omega^k, k < q + c
    std::size_t lag = 0;     // t[k] = t[k + c] for k >= lag
    std::size_t period = 1;
    TypeId omega_omega = 0;  // type of omega^omega
};

/// Types of the powers of omega with empty predicates at level (n,l).
PowerTypes power_types(TypeTable& tt, int n, int l);

TypeId type_of_code(TypeTable& tt, int n, int l, const Code& code);

/// Monadic theory query: does the ordinal with this code satisfy the sentence.
bool decide_mth(TypeTable& tt, const Formula& sentence, const Code& code);

}  // namespace church
