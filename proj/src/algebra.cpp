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

#include "church/algebra.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

#include "church/errors.hpp"

namespace church {

Depth0 AtomMask::reduce(const Depth0& v) const
{
    Depth0 r;
    r.l = v.l;
    for (int i = 0; i < v.l; ++i) {
        int s = v.size_of(i);
        if ((size_full >> i) & 1) r.size |= std::uint16_t(s << (2 * i));
        else if ((emptiness >> i) & 1) r.size |= std::uint16_t(std::min(s, 1) << (2 * i));
    }
    r.sub = v.sub & sub;
    r.before = v.before & before;
    return r;
}

namespace {

std::uint64_t mbit(int i, int j) { return std::uint64_t(1) << (8 * i + j); }

// Atoms and existential bodies reachable from f without entering a quantifier.
void scan(const KernelFormula& f, AtomMask& m, std::vector<KernelFormula>& bodies)
{
    switch (f.op()) {
    case KOp::True: case KOp::False: return;
    case KOp::Sub: m.sub |= mbit(f.a(), f.b()); return;
    case KOp::Before:
        m.before |= mbit(f.a(), f.b());
        m.emptiness |= (1u << f.a()) | (1u << f.b());
        return;
    case KOp::Empty: m.emptiness |= 1u << f.a(); return;
    case KOp::Sing: m.size_full |= 1u << f.a(); return;
    case KOp::Exists: bodies.push_back(f.kid(0)); return;
    default:
        for (const auto& k : f.kids()) scan(k, m, bodies);
    }
}

std::string element_key(const Depth0& v, const std::vector<Elem>& set)
{
    std::string key(2 + 8 + 8 + 4 * set.size(), '\0');
    std::memcpy(&key[0], &v.size, 2);
    std::memcpy(&key[2], &v.sub, 8);
    std::memcpy(&key[10], &v.before, 8);
    if (!set.empty()) std::memcpy(&key[18], set.data(), 4 * set.size());
    return key;
}

}  // namespace

FormulaAlgebra::FormulaAlgebra(const Kernel& k, std::size_t max_elements) : kernel_(k)
{
    if (k.free_count + k.depth() > kMaxVars)
        throw ResourceLimit("formula needs more than " + std::to_string(kMaxVars) + " variables at depth 0");
    // Collect the formula lists per level, top down.
    levels_.resize(static_cast<std::size_t>(k.depth()) + 1);
    body_index_.resize(levels_.size());
    levels_[0].formulas.push_back(k.body);
    for (std::size_t d = 0; d < levels_.size(); ++d) {
        Level& L = levels_[d];
        L.vars = k.free_count + static_cast<int>(d);
        std::vector<KernelFormula> bodies;
        for (const auto& f : L.formulas) scan(f, L.mask, bodies);
        if (d + 1 < levels_.size()) {
            for (const auto& b : bodies) {
                auto [it, fresh] = body_index_[d + 1].emplace(b.id(), levels_[d + 1].formulas.size());
                if (fresh) levels_[d + 1].formulas.push_back(b);
            }
        } else if (!bodies.empty()) {
            throw InvalidInput("kernel depth bookkeeping mismatch");
        }
    }
    for (std::size_t d = levels_.size(); d-- > 0;) build_level(d, max_elements);
    const Level& top = levels_[0];
    win_u_.resize(top.closure.size());
    for (Elem x = 0; x < top.closure.size(); ++x) win_u_[x] = top.truth[0][top.quotient.cls[x]];
}

void FormulaAlgebra::build_level(std::size_t d, std::size_t max_elements)
{
    Level& L = levels_[d];
    const Level* below = d + 1 < levels_.size() ? &levels_[d + 1] : nullptr;
    const Semigroup* sub = below ? &below->quotient.algebra : nullptr;

    auto intern = [&](const Depth0& v, std::vector<Elem> set) -> Elem {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        std::string key = element_key(v, set);
        auto it = L.index.find(key);
        if (it != L.index.end()) return it->second;
        if (L.vec.size() >= max_elements)
            throw ResourceLimit("type closure at level " + std::to_string(d) + " exceeded " +
                                std::to_string(max_elements) + " elements");
        Elem id = static_cast<Elem>(L.vec.size());
        L.vec.push_back(v);
        L.sets.push_back(std::move(set));
        L.index.emplace(std::move(key), id);
        return id;
    };

    std::unordered_map<std::uint64_t, Elem> add_memo;
    auto add = [&](Elem a, Elem b) -> Elem {
        std::uint64_t key = (std::uint64_t(a) << 32) | b;
        auto it = add_memo.find(key);
        if (it != add_memo.end()) return it->second;
        Depth0 v = L.mask.reduce(add0(L.vec[a], L.vec[b]));
        std::vector<Elem> set;
        if (sub) {
            set.reserve(L.sets[a].size() * L.sets[b].size());
            for (Elem x : L.sets[a])
                for (Elem y : L.sets[b]) set.push_back(sub->add(x, y));
        }
        Elem r = intern(v, std::move(set));
        add_memo.emplace(key, r);
        return r;
    };
    auto omega_idem = [&](Elem e) -> Elem {
        Depth0 v = L.mask.reduce(omega_idem0(L.vec[e]));
        std::vector<Elem> set;
        if (sub) set = sub->achievable(L.sets[e]);
        return intern(v, std::move(set));
    };

    std::uint32_t nletters = 1u << L.vars;
    L.letters.resize(nletters);
    for (std::uint32_t bits = 0; bits < nletters; ++bits) {
        std::vector<Elem> set;
        if (below) {
            set.push_back(below->quotient.cls[below->letters[bits]]);
            set.push_back(below->quotient.cls[below->letters[bits | (1u << L.vars)]]);
        }
        L.letters[bits] = intern(L.mask.reduce(Depth0::letter(L.vars, bits)), std::move(set));
    }
    std::vector<Elem> omega_of(0);
    for (Elem i = 0; i < L.vec.size(); ++i) {
        for (Elem j = 0; j <= i; ++j) {
            add(i, j);
            add(j, i);
        }
        if (add(i, i) == i) omega_idem(i);
    }
    std::size_t n = L.vec.size();
    std::vector<Elem> table(n * n), om(n);
    for (Elem i = 0; i < n; ++i)
        for (Elem j = 0; j < n; ++j) table[i * n + j] = add_memo.at((std::uint64_t(i) << 32) | j);
    Semigroup pre(n, table, std::vector<Elem>(n, 0));
    for (Elem i = 0; i < n; ++i) om[i] = omega_idem(pre.idempotent_power(i));
    if (L.vec.size() != n) throw InvalidInput("omega left the closure");
    L.closure = Semigroup(n, std::move(table), std::move(om));

    // Truth profiles, then the congruence.
    std::vector<std::vector<bool>> raw(L.formulas.size(), std::vector<bool>(n));
    std::map<std::vector<bool>, std::uint32_t> profiles;
    std::vector<std::uint32_t> label(n);
    for (Elem x = 0; x < n; ++x) {
        std::vector<bool> p(L.formulas.size());
        for (std::size_t f = 0; f < L.formulas.size(); ++f) raw[f][x] = p[f] = eval_at(d, L.formulas[f], x);
        label[x] = profiles.emplace(p, static_cast<std::uint32_t>(profiles.size())).first->second;
    }
    L.quotient = congruence_quotient(L.closure, label);
    std::size_t m = L.quotient.algebra.size();
    L.truth.assign(L.formulas.size(), std::vector<bool>(m));
    for (std::size_t f = 0; f < L.formulas.size(); ++f)
        for (Elem c = 0; c < m; ++c) L.truth[f][c] = raw[f][L.quotient.rep[c]];
}

bool FormulaAlgebra::eval_at(std::size_t d, const KernelFormula& f, Elem x) const
{
    const Level& L = levels_[d];
    const Depth0& v = L.vec[x];
    switch (f.op()) {
    case KOp::True: return true;
    case KOp::False: return false;
    case KOp::Sub: return v.sub_bit(f.a(), f.b());
    case KOp::Before: return v.before_bit(f.a(), f.b());
    case KOp::Empty: return v.empty(f.a());
    case KOp::Sing: return v.size_of(f.a()) == 1;
    case KOp::Not: return !eval_at(d, f.kid(0), x);
    case KOp::And: return eval_at(d, f.kid(0), x) && eval_at(d, f.kid(1), x);
    case KOp::Or: return eval_at(d, f.kid(0), x) || eval_at(d, f.kid(1), x);
    case KOp::Exists: {
        std::size_t b = body_index_[d + 1].at(f.kid(0).id());
        const auto& truth = levels_[d + 1].truth[b];
        for (Elem c : L.sets[x])
            if (truth[c]) return true;
        return false;
    }
    }
    return false;
}

std::optional<Elem> FormulaAlgebra::lookup(std::size_t d, TypeTable& tt, TypeId t) const
{
    const Level& L = levels_[d];
    while (tt.depth(t) > depth() - static_cast<int>(d)) t = tt.proj(t);
    Depth0 v = L.mask.reduce(tt.base(t));
    std::vector<Elem> set;
    if (d + 1 < levels_.size()) {
        for (TypeId m : std::vector<TypeId>(tt.members(t))) {
            auto e = lookup(d + 1, tt, m);
            if (!e) return std::nullopt;
            set.push_back(levels_[d + 1].quotient.cls[*e]);
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    auto it = L.index.find(element_key(v, set));
    if (it == L.index.end()) return std::nullopt;
    return it->second;
}

std::optional<Elem> FormulaAlgebra::from_full(TypeTable& tt, TypeId t) const
{
    if (tt.vars(t) != free_count()) throw InvalidInput("type has the wrong number of variables");
    if (tt.depth(t) < depth()) throw InvalidInput("type depth below formula depth");
    return lookup(0, tt, t);
}

std::string FormulaAlgebra::summary() const
{
    std::ostringstream os;
    for (std::size_t d = 0; d < levels_.size(); ++d) {
        if (d) os << ", ";
        os << "level " << d << ": " << levels_[d].closure.size() << " -> " << levels_[d].quotient.algebra.size();
    }
    return os.str();
}

// ---------------------------------------------------------------------------

PowerSequence power_sequence(const Semigroup& s, Elem unit)
{
    PowerSequence p;
    std::vector<long> first(s.size(), -1);
    Elem t = unit;
    for (std::size_t k = 0;; ++k) {
        if (first[t] >= 0) {
            p.lag = static_cast<std::size_t>(first[t]);
            p.period = k - p.lag;
            break;
        }
        first[t] = static_cast<long>(k);
        p.t.push_back(t);
        t = s.omega(t);
    }
    std::vector<Elem> pre(p.t.begin(), p.t.begin() + static_cast<std::ptrdiff_t>(p.lag));
    std::vector<Elem> loop(p.t.begin() + static_cast<std::ptrdiff_t>(p.lag), p.t.end());
    p.omega_omega = lasso_value(s, pre, loop);
    return p;
}

namespace {

Elem times(const Semigroup& s, Elem x, std::uint64_t c)
{
    Elem result = x, base = x;
    bool have = false;
    while (c) {
        if (c & 1) {
            result = have ? s.add(result, base) : base;
            have = true;
        }
        c >>= 1;
        if (c) base = s.add(base, base);
    }
    return result;
}

}  // namespace

Elem value_of_code(const Semigroup& s, Elem unit, const Code& code)
{
    PowerSequence p = power_sequence(s, unit);
    bool have = false;
    Elem acc = 0;
    if (code.flag) {
        acc = p.omega_omega;
        have = true;
    }
    std::size_t top = code.digits.size();
    for (std::size_t i = 0; i < top; ++i) {
        std::uint64_t c = code.digits[i];
        if (c == 0) continue;
        Elem part = times(s, p.power(top - 1 - i), c);
        acc = have ? s.add(acc, part) : part;
        have = true;
    }
    if (!have) throw InvalidInput("the zero ordinal has no code");
    return acc;
}

bool decide_sentence(const Formula& sentence, const Code& code, std::size_t max_elements)
{
    FormulaAlgebra alg(sentence_kernel(sentence), max_elements);
    Elem v = value_of_code(alg.syntactic(), alg.letter(0), code);
    return alg.wins(v);
}

}  // namespace church

namespace church {

KernelFormula FormulaAlgebra::characteristic(std::size_t d, Elem cls) const
{
    if (char_memo_.size() < levels_.size()) char_memo_.resize(levels_.size());
    auto it = char_memo_[d].find(cls);
    if (it != char_memo_[d].end()) return it->second;
    const Level& L = levels_[d];
    const int vars = L.vars;
    std::vector<KernelFormula> alternatives;
    for (Elem x = 0; x < L.vec.size(); ++x) {
        if (L.quotient.cls[x] != cls) continue;
        const Depth0& v = L.vec[x];
        std::vector<KernelFormula> parts;
        auto lit = [&](KernelFormula f, bool positive) { parts.push_back(positive ? f : KernelFormula::negate(f)); };
        for (int i = 0; i < vars; ++i) {
            KernelFormula empty = KernelFormula::atom(KOp::Empty, i);
            if ((L.mask.size_full >> i) & 1) {
                int s = v.size_of(i);
                lit(empty, s == 0);
                lit(KernelFormula::atom(KOp::Sing, i), s == 1);
            } else if ((L.mask.emptiness >> i) & 1) {
                lit(empty, v.empty(i));
            }
            for (int j = 0; j < vars; ++j) {
                std::uint64_t bit = std::uint64_t(1) << (8 * i + j);
                if (L.mask.sub & bit) lit(KernelFormula::atom(KOp::Sub, i, j), v.sub_bit(i, j));
                if (L.mask.before & bit) lit(KernelFormula::atom(KOp::Before, i, j), v.before_bit(i, j));
            }
        }
        if (d + 1 < levels_.size()) {
            std::vector<KernelFormula> any;
            for (Elem c : L.sets[x]) {
                KernelFormula ch = characteristic(d + 1, c);
                parts.push_back(KernelFormula::exists(ch));
                any.push_back(ch);
            }
            KernelFormula covered = KernelFormula::constant(false);
            for (const auto& f : any)
                covered = covered.op() == KOp::False ? f : KernelFormula::binary(KOp::Or, covered, f);
            parts.push_back(KernelFormula::negate(KernelFormula::exists(KernelFormula::negate(covered))));
        }
        KernelFormula conj = KernelFormula::constant(true);
        for (const auto& f : parts) conj = conj.op() == KOp::True ? f : KernelFormula::binary(KOp::And, conj, f);
        alternatives.push_back(conj);
    }
    KernelFormula out = KernelFormula::constant(false);
    for (const auto& f : alternatives) out = out.op() == KOp::False ? f : KernelFormula::binary(KOp::Or, out, f);
    char_memo_[d].emplace(cls, out);
    return out;
}

}  // namespace church
