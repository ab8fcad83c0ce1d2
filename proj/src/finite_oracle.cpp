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

#include "church/finite_oracle.hpp"

#include <bit>
#include <cstring>
#include <unordered_map>

#include "church/errors.hpp"

namespace church {

FiniteChain FiniteChain::from_word(const std::vector<std::uint32_t>& letters, int l)
{
    if (letters.size() > 63) throw ResourceLimit("finite chains are limited to 63 positions");
    FiniteChain m;
    m.k = static_cast<int>(letters.size());
    m.preds.assign(static_cast<std::size_t>(l), 0);
    for (int pos = 0; pos < m.k; ++pos)
        for (int i = 0; i < l; ++i)
            if ((letters[pos] >> i) & 1) m.preds[i] |= std::uint64_t(1) << pos;
    return m;
}

std::uint32_t FiniteChain::letter_at(int pos) const
{
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        if ((preds[i] >> pos) & 1) bits |= 1u << i;
    return bits;
}

namespace {

class FormulaEvaluator {
public:
    FormulaEvaluator(const FiniteChain& m, const EvalBudget& b) : m_(m), budget_(b)
    {
        for (std::size_t i = 0; i < m.preds.size(); ++i) env_.push_back({"X" + std::to_string(i + 1), m.preds[i]});
    }

    bool eval(const Formula& f)
    {
        if (++steps_ > budget_.max_steps) throw ResourceLimit("finite evaluation budget exhausted");
        switch (f.op()) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Less: return get(f.var1()) < get(f.var2());
        case Op::Equal: return get(f.var1()) == get(f.var2());
        case Op::In: return (get(f.var2()) >> get(f.var1())) & 1;
        case Op::Sub: return (get(f.var1()) & ~get(f.var2())) == 0;
        case Op::Empty: return get(f.var1()) == 0;
        case Op::Sing: return std::popcount(get(f.var1())) == 1;
        case Op::Not: return !eval(f.kid(0));
        case Op::And: return eval(f.kid(0)) && eval(f.kid(1));
        case Op::Or: return eval(f.kid(0)) || eval(f.kid(1));
        case Op::Implies: return !eval(f.kid(0)) || eval(f.kid(1));
        case Op::Iff: return eval(f.kid(0)) == eval(f.kid(1));
        default: break;
        }
        // Quantifier: memoized on the values of the node's free variables.
        const auto& fv = free_of(f);
        std::string key(8 * fv.size(), '\0');
        for (std::size_t i = 0; i < fv.size(); ++i) {
            std::uint64_t v = get(fv[i]);
            std::memcpy(&key[8 * i], &v, 8);
        }
        auto& memo = memo_[f.id()];
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool set = f.op() == Op::Exists2 || f.op() == Op::Forall2;
        bool exists = f.op() == Op::Exists1 || f.op() == Op::Exists2;
        std::uint64_t count = set ? (std::uint64_t(1) << m_.k) : static_cast<std::uint64_t>(m_.k);
        bool result = !exists;
        env_.push_back({f.var1(), 0});
        for (std::uint64_t v = 0; v < count; ++v) {
            env_.back().second = v;
            if (eval(f.kid(0)) == exists) {
                result = exists;
                break;
            }
        }
        env_.pop_back();
        memo.emplace(std::move(key), result);
        return result;
    }

private:
    std::uint64_t get(const std::string& name) const
    {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
            if (it->first == name) return it->second;
        throw InvalidInput("unbound variable '" + name + "' during evaluation");
    }

    const std::vector<std::string>& free_of(const Formula& f)
    {
        auto it = free_.find(f.id());
        if (it != free_.end()) return it->second;
        FreeVars fv = free_variables(f);
        std::vector<std::string> names(fv.first_order.begin(), fv.first_order.end());
        names.insert(names.end(), fv.sets.begin(), fv.sets.end());
        return free_.emplace(f.id(), std::move(names)).first->second;
    }

    const FiniteChain& m_;
    EvalBudget budget_;
    std::uint64_t steps_ = 0;
    std::vector<std::pair<std::string, std::uint64_t>> env_;
    std::unordered_map<const void*, std::vector<std::string>> free_;
    std::unordered_map<const void*, std::unordered_map<std::string, bool>> memo_;
};

class KernelEvaluator {
public:
    KernelEvaluator(const FiniteChain& m, int l, const EvalBudget& b) : m_(m), budget_(b)
    {
        if (static_cast<int>(m.preds.size()) < l) throw InvalidInput("chain has fewer predicates than the formula");
        env_.assign(m.preds.begin(), m.preds.begin() + l);
    }

    bool eval(const KernelFormula& f)
    {
        if (++steps_ > budget_.max_steps) throw ResourceLimit("finite evaluation budget exhausted");
        switch (f.op()) {
        case KOp::True: return true;
        case KOp::False: return false;
        case KOp::Sub: return (env_[f.a()] & ~env_[f.b()]) == 0;
        case KOp::Before: {
            std::uint64_t a = env_[f.a()], b = env_[f.b()];
            if (!a || !b) return false;
            return std::countr_zero(a) < 63 - std::countl_zero(b);
        }
        case KOp::Empty: return env_[f.a()] == 0;
        case KOp::Sing: return std::popcount(env_[f.a()]) == 1;
        case KOp::Not: return !eval(f.kid(0));
        case KOp::And: return eval(f.kid(0)) && eval(f.kid(1));
        case KOp::Or: return eval(f.kid(0)) || eval(f.kid(1));
        case KOp::Exists: break;
        }
        std::string key(8 * env_.size(), '\0');
        std::memcpy(key.data(), env_.data(), 8 * env_.size());
        auto& memo = memo_[f.id()];
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool result = false;
        env_.push_back(0);
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << m_.k); ++v) {
            env_.back() = v;
            if (eval(f.kid(0))) {
                result = true;
                break;
            }
        }
        env_.pop_back();
        memo.emplace(std::move(key), result);
        return result;
    }

private:
    const FiniteChain& m_;
    EvalBudget budget_;
    std::uint64_t steps_ = 0;
    std::vector<std::uint64_t> env_;
    std::unordered_map<const void*, std::unordered_map<std::string, bool>> memo_;
};

}  // namespace

bool eval_finite(const Formula& f, const FiniteChain& m, const EvalBudget& budget)
{
    if (m.k > 20) throw ResourceLimit("finite evaluation limited to 20 positions");
    return FormulaEvaluator(m, budget).eval(f);
}

bool eval_finite(const Kernel& f, const FiniteChain& m, const EvalBudget& budget)
{
    if (m.k > 20) throw ResourceLimit("finite evaluation limited to 20 positions");
    return KernelEvaluator(m, f.free_count, budget).eval(f.body);
}

PlayCondition condition_of(const Formula& f)
{
    return [f](std::uint64_t x1, std::uint64_t x2, int k) {
        FiniteChain m{k, {x1, x2}};
        return eval_finite(f, m);
    };
}

PlayCondition condition_of(const Kernel& kf)
{
    return [kf](std::uint64_t x1, std::uint64_t x2, int k) {
        FiniteChain m{k, {x1, x2}};
        return eval_finite(kf, m);
    };
}

PlayCondition condition_of(const Semigroup& s, const std::vector<Elem>& letters, const std::vector<bool>& win)
{
    return [s, letters, win](std::uint64_t x1, std::uint64_t x2, int k) {
        if (k == 0) throw InvalidInput("games have at least one round");
        Elem acc = 0;
        for (int r = 0; r < k; ++r) {
            Elem e = letters[letter_bits((x1 >> r) & 1, (x2 >> r) & 1)];
            acc = r == 0 ? e : s.add(acc, e);
        }
        return bool(win[acc]);
    };
}

std::size_t FiniteStrategyTable::slot(Player p, int round, std::uint64_t history)
{
    // I: histories of length round; II: histories of length round + 1.
    int len = p == Player::I ? round : round + 1;
    return (std::size_t(1) << len) - (p == Player::I ? 1 : 2) + history;
}

std::size_t FiniteStrategyTable::table_size(Player p, int k)
{
    return p == Player::I ? (std::size_t(1) << k) - 1 : (std::size_t(1) << (k + 1)) - 2;
}

Play run_table(const FiniteStrategyTable& s, std::uint64_t opp)
{
    Play play;
    play.length = s.length;
    for (int r = 0; r < s.length; ++r) {
        std::uint64_t mask = (std::uint64_t(1) << r) - 1;
        if (s.player == Player::I) {
            std::uint64_t a = s.move(r, play.x2 & mask);
            std::uint64_t b = (opp >> r) & 1;
            play.x1 |= a << r;
            play.x2 |= b << r;
        } else {
            std::uint64_t a = (opp >> r) & 1;
            play.x1 |= a << r;
            std::uint64_t b = s.move(r, play.x1 & ((mask << 1) | 1));
            play.x2 |= b << r;
        }
    }
    return play;
}

namespace {

class Minimax {
public:
    Minimax(const PlayCondition& c, int k) : cond_(c), k_(k) {}

    bool i_wins(int r, std::uint64_t x1, std::uint64_t x2)
    {
        if (r == k_) return cond_(x1, x2, k_);
        std::uint64_t key = (std::uint64_t(r) << 58) ^ (x1 << 29) ^ x2;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool win = false;
        for (std::uint64_t a = 0; a < 2 && !win; ++a) {
            bool all = true;
            for (std::uint64_t b = 0; b < 2 && all; ++b) all = i_wins(r + 1, x1 | (a << r), x2 | (b << r));
            win = all;
        }
        memo_.emplace(key, win);
        return win;
    }

    // Every completion of the play is won by `p`.
    bool settled(Player p, int r, std::uint64_t x1, std::uint64_t x2)
    {
        if (r == k_) return cond_(x1, x2, k_) == (p == Player::I);
        std::uint64_t key = (std::uint64_t(r) << 58) ^ (x1 << 29) ^ x2;
        auto& memo = settled_[p == Player::I ? 0 : 1];
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool all = true;
        for (std::uint64_t a = 0; a < 2 && all; ++a)
            for (std::uint64_t b = 0; b < 2 && all; ++b) all = settled(p, r + 1, x1 | (a << r), x2 | (b << r));
        memo.emplace(key, all);
        return all;
    }

    // Rounds the winner `p` needs before the outcome is settled, from a won position.
    int rounds_to_settle(Player p, int r, std::uint64_t x1, std::uint64_t x2)
    {
        if (settled(p, r, x1, x2)) return 0;
        std::uint64_t key = (std::uint64_t(r) << 58) ^ (x1 << 29) ^ x2;
        auto& memo = settle_time_[p == Player::I ? 0 : 1];
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int best = p == Player::I ? i_move(r, x1, x2).second : 0;
        if (p == Player::II)
            for (std::uint64_t a = 0; a < 2; ++a) best = std::max(best, ii_move(r, x1 | (a << r), x2).second);
        memo.emplace(key, best + 1);
        return best + 1;
    }

    // Winning I move at round r settling soonest, preferring 1; with its settle time.
    std::pair<std::uint64_t, int> i_move(int r, std::uint64_t x1, std::uint64_t x2)
    {
        std::pair<std::uint64_t, int> best{2, 0};
        for (std::uint64_t a : {1, 0}) {
            std::uint64_t y1 = x1 | (a << r), b1 = x2 | (std::uint64_t(1) << r);
            if (!i_wins(r + 1, y1, x2) || !i_wins(r + 1, y1, b1)) continue;
            int t = std::max(rounds_to_settle(Player::I, r + 1, y1, x2), rounds_to_settle(Player::I, r + 1, y1, b1));
            if (best.first == 2 || t < best.second) best = {a, t};
        }
        return best;
    }

    // Winning II answer once I's bit for round r is in x1.
    std::pair<std::uint64_t, int> ii_move(int r, std::uint64_t x1, std::uint64_t x2)
    {
        std::pair<std::uint64_t, int> best{2, 0};
        for (std::uint64_t b : {1, 0}) {
            std::uint64_t y2 = x2 | (b << r);
            if (i_wins(r + 1, x1, y2)) continue;
            int t = rounds_to_settle(Player::II, r + 1, x1, y2);
            if (best.first == 2 || t < best.second) best = {b, t};
        }
        return best;
    }

    void build_i(int r, std::uint64_t x1, std::uint64_t x2, FiniteStrategyTable& t)
    {
        if (r == k_) return;
        std::uint64_t a = i_move(r, x1, x2).first;
        t.move(r, x2) = static_cast<std::uint8_t>(a);
        for (std::uint64_t b = 0; b < 2; ++b) build_i(r + 1, x1 | (a << r), x2 | (b << r), t);
    }

    void build_ii(int r, std::uint64_t x1, std::uint64_t x2, FiniteStrategyTable& t)
    {
        if (r == k_) return;
        for (std::uint64_t a = 0; a < 2; ++a) {
            std::uint64_t y1 = x1 | (a << r);
            std::uint64_t b = ii_move(r, y1, x2).first;
            t.move(r, y1) = static_cast<std::uint8_t>(b);
            build_ii(r + 1, y1, x2 | (b << r), t);
        }
    }

private:
    const PlayCondition& cond_;
    int k_;
    std::unordered_map<std::uint64_t, bool> memo_;
    std::unordered_map<std::uint64_t, bool> settled_[2];
    std::unordered_map<std::uint64_t, int> settle_time_[2];
};

}  // namespace

FiniteGameResult solve_finite_game(const PlayCondition& cond, int k, int cap)
{
    if (k < 1) throw InvalidInput("game length must be positive");
    if (k > cap) throw ResourceLimit("game length " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
    Minimax mm(cond, k);
    FiniteGameResult res;
    res.winner = mm.i_wins(0, 0, 0) ? Player::I : Player::II;
    res.strategy.player = res.winner;
    res.strategy.length = k;
    res.strategy.moves.assign(FiniteStrategyTable::table_size(res.winner, k), 0);
    if (res.winner == Player::I) mm.build_i(0, 0, 0, res.strategy);
    else mm.build_ii(0, 0, 0, res.strategy);
    return res;
}

bool verify_finite_strategy(const FiniteStrategyTable& s, const PlayCondition& cond, int k)
{
    if (s.length != k || s.moves.size() != FiniteStrategyTable::table_size(s.player, k)) return false;
    for (std::uint64_t opp = 0; opp < (std::uint64_t(1) << k); ++opp) {
        Play p = run_table(s, opp);
        if (cond(p.x1, p.x2, k) != (s.player == Player::I)) return false;
    }
    return true;
}

namespace {

Depth0 depth0_of(const FiniteChain& w, int l)
{
    Depth0 v;
    v.l = static_cast<std::uint8_t>(l);
    for (int i = 0; i < l; ++i) {
        std::uint64_t a = w.preds[i];
        int s = std::min(2, std::popcount(a));
        v.size |= std::uint16_t(s << (2 * i));
        for (int j = 0; j < l; ++j) {
            std::uint64_t b = w.preds[j];
            if ((a & ~b) == 0) v.sub |= std::uint64_t(1) << (8 * i + j);
            if (a && b && std::countr_zero(a) < 63 - std::countl_zero(b)) v.before |= std::uint64_t(1) << (8 * i + j);
        }
    }
    return v;
}

}  // namespace

TypeId enumerate_type(TypeTable& tt, int n, int l, const FiniteChain& w)
{
    if (static_cast<int>(w.preds.size()) < l) throw InvalidInput("chain has fewer predicates than requested");
    if (l + n > kMaxVars) throw ResourceLimit("more than 8 variables at depth 0");
    if (std::uint64_t(n) * std::uint64_t(w.k) > 24) throw ResourceLimit("word type enumeration budget exceeded");
    if (n == 0) return tt.intern0(depth0_of(w, l));
    FiniteChain x = w;
    x.preds.resize(static_cast<std::size_t>(l) + 1);
    std::vector<TypeId> members;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << w.k); ++mask) {
        x.preds[l] = mask;
        members.push_back(enumerate_type(tt, n - 1, l + 1, x));
    }
    return tt.intern_set(n, l, std::move(members));
}

}  // namespace church
