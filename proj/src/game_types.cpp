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

#include "church/game_types.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "church/errors.hpp"

namespace church {

std::string render_winset(WinSet g)
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int i = 0; i < 64; ++i)
        if (g >> i & 1) {
            os << (first ? "" : ",") << i;
            first = false;
        }
    os << "}";
    return os.str();
}

GameType GameType::generated_by(std::vector<WinSet> sets)
{
    std::sort(sets.begin(), sets.end(), [](WinSet a, WinSet b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    GameType t;
    for (WinSet g : sets)
        if (!t.contains(g)) t.minimal_.push_back(g);
    std::sort(t.minimal_.begin(), t.minimal_.end());
    return t;
}

bool GameType::contains(WinSet g) const
{
    for (WinSet m : minimal_)
        if ((m & ~g) == 0) return true;
    return false;
}

std::string render(const GameType& t)
{
    std::string out = "[";
    for (std::size_t i = 0; i < t.minimal().size(); ++i) out += (i ? " " : "") + render_winset(t.minimal()[i]);
    return out + "]";
}

GameAlgebra::GameAlgebra(const Semigroup& s, std::vector<Elem> letters, const Limits& limits)
    : s_(s), letters_(std::move(letters)), limits_(limits), va_(s, limits.max_states)
{
    if (s.size() > limits.max_elements || s.size() > 63)
        throw ResourceLimit("algebra has " + std::to_string(s.size()) + " elements; win-set enumeration is capped at " +
                            std::to_string(std::min<std::size_t>(limits.max_elements, 63)));
    if (letters_.size() != 4) throw InvalidInput("expected four letters");
    full_ = s.size() == 64 ? ~WinSet{0} : (WinSet{1} << s.size()) - 1;
}

std::vector<bool> GameAlgebra::as_vector(WinSet g) const
{
    std::vector<bool> v(s_.size());
    for (std::size_t i = 0; i < s_.size(); ++i) v[i] = g >> i & 1;
    return v;
}

template <class Pred>
GameType GameAlgebra::collect(Pred member) const
{
    const std::size_t n = s_.size();
    std::vector<WinSet> order;
    order.reserve(std::size_t{1} << n);
    for (WinSet g = 0; g <= full_; ++g) order.push_back(g);
    std::stable_sort(order.begin(), order.end(), [](WinSet a, WinSet b) { return std::popcount(a) < std::popcount(b); });
    std::vector<WinSet> mins;
    for (WinSet g : order) {
        bool covered = false;
        for (WinSet m : mins)
            if ((m & ~g) == 0) {
                covered = true;
                break;
            }
        if (covered && !limits_.check_monotone) continue;
        bool in = member(g);
        if (covered && !in) throw std::logic_error("game type is not upward closed at " + render_winset(g));
        if (in && !covered) mins.push_back(g);
    }
    return GameType::generated_by(mins);
}

GameType GameAlgebra::one() const
{
    std::vector<WinSet> sets;
    for (int a = 0; a < 2; ++a)
        sets.push_back(WinSet{1} << letters_[letter_bits(a, 0)] | WinSet{1} << letters_[letter_bits(a, 1)]);
    return GameType::generated_by(sets);
}

WinSet GameAlgebra::k_set(const GameType& b, WinSet g) const
{
    WinSet out = 0;
    for (Elem t = 0; t < s_.size(); ++t) {
        WinSet good = 0;  // t' with t + t' in g
        for (Elem u = 0; u < s_.size(); ++u)
            if (g >> s_.add(t, u) & 1) good |= WinSet{1} << u;
        if (b.contains(good)) out |= WinSet{1} << t;
    }
    return out;
}

GameType GameAlgebra::add(const GameType& a, const GameType& b) const
{
    return collect([&](WinSet g) { return a.contains(k_set(b, g)); });
}

GameType GameAlgebra::times(const GameType& a, std::uint64_t j) const
{
    if (j == 0) throw InvalidInput("multiplier must be positive");
    GameType acc = a;
    for (std::uint64_t i = 1; i < j; ++i) acc = add(acc, a);
    return acc;
}

RoundGameSolution GameAlgebra::game_omega(const GameType& c, WinSet g)
{
    std::vector<std::vector<Elem>> proposals;
    for (WinSet m : c.minimal()) {
        std::vector<Elem> p;
        for (Elem x = 0; x < s_.size(); ++x)
            if (m >> x & 1) p.push_back(x);
        proposals.push_back(std::move(p));
    }
    return solve_game_omega(va_, proposals, as_vector(g));
}

GameType GameAlgebra::times_omega(const GameType& c)
{
    if (c.empty()) throw InvalidInput("game type has no members");
    return collect([&](WinSet g) { return game_omega(c, g).winner == Player::I; });
}

Stabilization stabilize(GameAlgebra& ga, std::size_t max_exponent)
{
    Stabilization st;
    st.powers.push_back(ga.one());
    for (;;) {
        std::size_t k = st.powers.size() - 1;
        if (k >= max_exponent)
            throw ResourceLimit("powers of w did not stabilize below exponent " + std::to_string(max_exponent));
        GameType next = ga.times_omega(st.powers[k]);
        if (next == st.powers[k]) break;
        if (std::find(st.powers.begin(), st.powers.end(), next) != st.powers.end())
            throw std::logic_error("game types of powers of w cycle without a fixpoint");
        st.powers.push_back(std::move(next));
    }
    st.info.m = st.powers.size() - 1;
    const GameType& top = st.powers.back();
    st.idempotent_top = ga.add(top, top) == top;
    for (std::size_t k = 0; k < st.info.m; ++k) {
        std::vector<GameType> seq{st.powers[k]};
        for (;;) {
            GameType next = ga.add(seq.back(), st.powers[k]);
            auto it = std::find(seq.begin(), seq.end(), next);
            if (it != seq.end()) {
                std::size_t idx = static_cast<std::size_t>(it - seq.begin());
                st.info.lag.push_back(idx + 1);
                st.info.period.push_back(seq.size() - idx);
                break;
            }
            seq.push_back(std::move(next));
        }
        st.multiples.push_back(std::move(seq));
    }
    return st;
}

GameType game_type_of(const GameAlgebra& ga, const Stabilization& st, const OrdinalExpr& a)
{
    Code g = gcode_of(a, st.info);
    std::optional<GameType> acc;
    if (g.flag) acc = st.powers[st.info.m];
    for (std::size_t i = 0; i < st.info.m; ++i) {
        std::uint64_t c = g.digits[i];
        if (c == 0) continue;
        std::size_t k = st.info.m - 1 - i;
        const GameType& part = st.multiples[k][c - 1];
        acc = acc ? ga.add(*acc, part) : part;
    }
    if (!acc) throw InvalidInput("the zero ordinal has no game type");
    return *acc;
}

ChurchProblem::ChurchProblem(const Formula& phi, const Limits& limits) : phi_(phi), limits_(limits)
{
    alg_ = std::make_unique<FormulaAlgebra>(game_kernel(phi), limits.max_types);
    std::vector<Elem> letters;
    for (std::uint32_t bits = 0; bits < 4; ++bits) letters.push_back(alg_->letter(bits));
    ga_ = std::make_unique<GameAlgebra>(alg_->syntactic(), letters, limits);
    std::vector<bool> w = alg_->winset();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) win_ |= WinSet{1} << i;
}

const Stabilization& ChurchProblem::stabilization()
{
    if (!stab_) stab_ = stabilize(*ga_, limits_.max_exponent);
    return *stab_;
}

GameType ChurchProblem::game_type(const OrdinalExpr& a)
{
    return game_type_of(*ga_, stabilization(), a);
}

Player ChurchProblem::decide(const OrdinalExpr& a)
{
    return game_type(a).contains(win_) ? Player::I : Player::II;
}

Atlas ChurchProblem::atlas(std::size_t max_rows)
{
    const Stabilization& st = stabilization();
    Atlas at;
    at.info = st.info;
    const std::size_t m = st.info.m;
    std::vector<std::uint64_t> radix(m);
    std::size_t per_flag = 1;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t k = m - 1 - i;
        radix[i] = st.info.lag[k] + st.info.period[k];
        if (per_flag > max_rows / radix[i]) throw ResourceLimit("atlas domain exceeds " + std::to_string(max_rows));
        per_flag *= radix[i];
    }
    at.domain_size = 2 * per_flag - 1;
    if (at.domain_size > max_rows) throw ResourceLimit("atlas domain exceeds " + std::to_string(max_rows));
    for (int flag = 0; flag < 2; ++flag) {
        std::vector<std::uint64_t> digits(m, 0);
        for (std::size_t idx = 0; idx < per_flag; ++idx) {
            std::size_t rest = idx;
            for (std::size_t i = m; i-- > 0;) {
                digits[i] = rest % radix[i];
                rest /= radix[i];
            }
            Code c{flag == 1, digits};
            if (!c.flag && std::all_of(digits.begin(), digits.end(), [](auto d) { return d == 0; })) continue;
            at.rows.push_back({c, decide(ordinal_of_gcode(c, st.info))});
        }
    }
    return at;
}

}  // namespace church
