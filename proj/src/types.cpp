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

#include "church/types.hpp"

#include <cstring>
#include <algorithm>
#include <deque>
#include <sstream>

#include "church/errors.hpp"

namespace church {

namespace {

std::uint64_t bit(int i, int j) { return std::uint64_t(1) << (8 * i + j); }

std::uint64_t matrix_mask(int l)
{
    std::uint64_t m = 0;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) m |= bit(i, j);
    return m;
}

}  // namespace

Depth0 Depth0::letter(int l, std::uint32_t bits)
{
    Depth0 v;
    v.l = static_cast<std::uint8_t>(l);
    for (int i = 0; i < l; ++i) {
        bool in_i = (bits >> i) & 1;
        if (in_i) v.size |= std::uint16_t(1u << (2 * i));
        for (int j = 0; j < l; ++j)
            if (!in_i || ((bits >> j) & 1)) v.sub |= bit(i, j);
    }
    return v;
}

Depth0 Depth0::restrict_to(int l2) const
{
    Depth0 v;
    v.l = static_cast<std::uint8_t>(l2);
    v.size = static_cast<std::uint16_t>(size & ((1u << (2 * l2)) - 1));
    v.sub = sub & matrix_mask(l2);
    v.before = before & matrix_mask(l2);
    return v;
}

bool Depth0::consistent() const
{
    for (int i = 0; i < l; ++i) {
        if (size_of(i) == 3 || !sub_bit(i, i)) return false;
        for (int j = 0; j < l; ++j) {
            if (empty(i) && !sub_bit(i, j)) return false;
            if (before_bit(i, j) && (empty(i) || empty(j))) return false;
        }
    }
    return true;
}

Depth0 add0(const Depth0& a, const Depth0& b)
{
    Depth0 v;
    v.l = a.l;
    v.sub = a.sub & b.sub;
    v.before = a.before | b.before;
    for (int i = 0; i < a.l; ++i) {
        int s = std::min(2, a.size_of(i) + b.size_of(i));
        v.size |= std::uint16_t(s << (2 * i));
        if (a.empty(i)) continue;
        for (int j = 0; j < a.l; ++j)
            if (!b.empty(j)) v.before |= bit(i, j);
    }
    return v;
}

Depth0 omega_idem0(const Depth0& e)
{
    Depth0 v = e;
    v.size = 0;
    for (int i = 0; i < e.l; ++i) {
        if (e.empty(i)) continue;
        v.size |= std::uint16_t(2 << (2 * i));
        for (int j = 0; j < e.l; ++j)
            if (!e.empty(j)) v.before |= bit(i, j);
    }
    return v;
}

// ---------------------------------------------------------------------------

TypeId TypeTable::push(Entry e, std::string key)
{
    if (entries_.size() >= max_types_)
        throw ResourceLimit("type table exceeded " + std::to_string(max_types_) + " entries");
    TypeId id = static_cast<TypeId>(entries_.size());
    entries_.push_back(std::move(e));
    index_.emplace(std::move(key), id);
    return id;
}

TypeId TypeTable::intern0(const Depth0& v)
{
    std::string key(1 + 1 + 2 + 8 + 8, '\0');
    key[0] = 0;
    key[1] = static_cast<char>(v.l);
    std::memcpy(&key[2], &v.size, 2);
    std::memcpy(&key[4], &v.sub, 8);
    std::memcpy(&key[12], &v.before, 8);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    return push(Entry{0, v.l, v, {}, v}, std::move(key));
}

TypeId TypeTable::intern_set(int d, int l, std::vector<TypeId> members)
{
    if (members.empty()) throw InvalidInput("a type of positive depth has at least one member");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::string key(2 + 4 * members.size(), '\0');
    key[0] = static_cast<char>(d);
    key[1] = static_cast<char>(l);
    std::memcpy(&key[2], members.data(), 4 * members.size());
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    Depth0 b = entries_[members[0]].base.restrict_to(l);
    return push(Entry{d, l, {}, std::move(members), b}, std::move(key));
}

TypeId TypeTable::letter(int d, int l, std::uint32_t bits)
{
    if (l + d > kMaxVars) throw ResourceLimit("more than 8 variables at depth 0");
    if (d == 0) return intern0(Depth0::letter(l, bits));
    TypeId m0 = letter(d - 1, l + 1, bits);
    TypeId m1 = letter(d - 1, l + 1, bits | (1u << l));
    return intern_set(d, l, {m0, m1});
}

TypeId TypeTable::add(TypeId a, TypeId b)
{
    auto key = pair_key(a, b);
    auto it = add_memo_.find(key);
    if (it != add_memo_.end()) return it->second;
    const Entry& ea = entries_[a];
    const Entry& eb = entries_[b];
    if (ea.d != eb.d || ea.l != eb.l) throw InvalidInput("adding types of different levels");
    TypeId r;
    if (ea.d == 0) {
        r = intern0(add0(ea.v, eb.v));
    } else {
        int d = ea.d, l = ea.l;
        std::vector<TypeId> ma = ea.members, mb = eb.members;
        std::vector<TypeId> out;
        out.reserve(ma.size() * mb.size());
        for (TypeId x : ma)
            for (TypeId y : mb) out.push_back(add(x, y));
        r = intern_set(d, l, std::move(out));
    }
    add_memo_.emplace(key, r);
    return r;
}

TypeId TypeTable::proj(TypeId t)
{
    auto it = proj_memo_.find(t);
    if (it != proj_memo_.end()) return it->second;
    const Entry& e = entries_[t];
    if (e.d == 0) throw InvalidInput("cannot project a depth-0 type");
    TypeId r;
    if (e.d == 1) {
        r = intern0(entries_[e.members[0]].v.restrict_to(e.l));
    } else {
        int d = e.d, l = e.l;
        std::vector<TypeId> ms = e.members;
        std::vector<TypeId> out;
        for (TypeId m : ms) out.push_back(proj(m));
        r = intern_set(d - 1, l, std::move(out));
    }
    proj_memo_.emplace(t, r);
    return r;
}

TypeId TypeTable::idempotent_power(TypeId t)
{
    auto it = idem_memo_.find(t);
    if (it != idem_memo_.end()) return it->second;
    TypeId x = t;
    for (std::size_t k = 0;; ++k) {
        if (add(x, x) == x) break;
        if (k > max_types_) throw ResourceLimit("idempotent power search did not terminate");
        x = add(x, t);
    }
    idem_memo_.emplace(t, x);
    return x;
}

TypeId TypeTable::omega_pow_idem(TypeId e)
{
    auto it = omega_memo_.find(e);
    if (it != omega_memo_.end()) return it->second;
    const Entry& en = entries_[e];
    TypeId r;
    if (en.d == 0) {
        r = intern0(omega_idem0(en.v));
    } else {
        // members of an idempotent are closed under addition
        std::vector<TypeId> ms = en.members;
        int d = en.d, l = en.l;
        r = intern_set(d, l, achievable(ms));
    }
    omega_memo_.emplace(e, r);
    return r;
}

TypeId TypeTable::omega(TypeId t)
{
    return omega_pow_idem(idempotent_power(t));
}

std::vector<TypeId> TypeTable::add_closure(const std::vector<TypeId>& gens)
{
    std::vector<TypeId> all(gens.begin(), gens.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<bool> seen;
    auto mark = [&](TypeId t) {
        if (t >= seen.size()) seen.resize(std::max<std::size_t>(t + 1, seen.size() * 2), false);
        bool was = seen[t];
        seen[t] = true;
        return !was;
    };
    for (TypeId t : all) mark(t);
    std::deque<TypeId> work(all.begin(), all.end());
    std::vector<TypeId> gen_list = all;
    while (!work.empty()) {
        TypeId x = work.front();
        work.pop_front();
        for (TypeId g : gen_list) {
            TypeId y = add(x, g);
            if (mark(y)) {
                all.push_back(y);
                work.push_back(y);
            }
        }
    }
    return all;
}

std::vector<TypeId> TypeTable::achievable(const std::vector<TypeId>& gens)
{
    std::vector<TypeId> plus = add_closure(gens);
    std::vector<TypeId> out;
    for (TypeId e : plus) {
        if (add(e, e) != e) continue;
        TypeId w = omega_pow_idem(e);
        out.push_back(w);
        for (TypeId p : plus) out.push_back(add(p, w));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TypeId TypeTable::fold(const std::vector<TypeId>& word)
{
    if (word.empty()) throw InvalidInput("fold of an empty word");
    TypeId acc = word[0];
    for (std::size_t i = 1; i < word.size(); ++i) acc = add(acc, word[i]);
    return acc;
}

bool TypeTable::eval(const KernelFormula& f, TypeId t)
{
    const Entry& e = entries_[t];
    switch (f.op()) {
    case KOp::True: return true;
    case KOp::False: return false;
    case KOp::Sub: return e.base.sub_bit(f.a(), f.b());
    case KOp::Before: return e.base.before_bit(f.a(), f.b());
    case KOp::Empty: return e.base.empty(f.a());
    case KOp::Sing: return e.base.size_of(f.a()) == 1;
    case KOp::Not: return !eval(f.kid(0), t);
    case KOp::And: return eval(f.kid(0), t) && eval(f.kid(1), t);
    case KOp::Or: return eval(f.kid(0), t) || eval(f.kid(1), t);
    case KOp::Exists: break;
    }
    if (e.d < f.depth()) throw InvalidInput("formula depth exceeds type depth");
    auto fit = formula_ids_.find(f.id());
    std::uint32_t fid;
    if (fit == formula_ids_.end()) {
        fid = static_cast<std::uint32_t>(formula_keep_.size());
        formula_ids_.emplace(f.id(), fid);
        formula_keep_.push_back(f);
    } else {
        fid = fit->second;
    }
    auto key = pair_key(fid, t);
    auto it = eval_memo_.find(key);
    if (it != eval_memo_.end()) return it->second;
    bool r = false;
    std::vector<TypeId> ms = e.members;
    for (TypeId m : ms)
        if (eval(f.kid(0), m)) { r = true; break; }
    eval_memo_.emplace(key, r);
    return r;
}

std::string TypeTable::describe(TypeId t) const
{
    const Entry& e = entries_[t];
    std::ostringstream os;
    if (e.d == 0) {
        os << "[";
        for (int i = 0; i < e.l; ++i) {
            if (i) os << ' ';
            int s = e.v.size_of(i);
            os << "|X" << i + 1 << "|=" << (s == 2 ? ">=2" : std::to_string(s));
        }
        for (int i = 0; i < e.l; ++i)
            for (int j = 0; j < e.l; ++j)
                if (e.v.before_bit(i, j)) os << " X" << i + 1 << "<X" << j + 1;
        for (int i = 0; i < e.l; ++i)
            for (int j = 0; j < e.l; ++j)
                if (i != j && e.v.sub_bit(i, j)) os << " X" << i + 1 << "sub" << "X" << j + 1;
        os << "]";
    } else {
        os << "{d" << e.d << " l" << e.l << " #" << e.members.size() << "}";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Universe reachable_universe(TypeTable& tt, int n, int l, std::size_t max_size)
{
    Universe u;
    u.n = n;
    u.l = l;
    auto insert = [&](TypeId t) {
        if (u.index.count(t)) return false;
        if (u.elements.size() >= max_size)
            throw ResourceLimit("universe closure exceeded " + std::to_string(max_size) + " types");
        u.index.emplace(t, static_cast<std::uint32_t>(u.elements.size()));
        u.elements.push_back(t);
        return true;
    };
    for (std::uint32_t bits = 0; bits < (1u << l) && bits < 4; ++bits) {
        u.letters[bits] = tt.letter(n, l, bits);
        insert(u.letters[bits]);
    }
    for (std::size_t i = 0; i < u.elements.size(); ++i) {
        TypeId x = u.elements[i];
        for (std::size_t j = 0; j <= i; ++j) {
            TypeId y = u.elements[j];
            insert(tt.add(x, y));
            insert(tt.add(y, x));
        }
        if (tt.idempotent(x)) insert(tt.omega_pow_idem(x));
    }
    return u;
}

std::vector<bool> win_set(TypeTable& tt, const Universe& u, const Kernel& k)
{
    if (k.depth() > u.n) throw InvalidInput("condition depth exceeds universe depth");
    std::vector<bool> w(u.elements.size());
    for (std::size_t i = 0; i < u.elements.size(); ++i) w[i] = tt.eval(k.body, u.elements[i]);
    return w;
}

PowerTypes power_types(TypeTable& tt, int n, int l)
{
    PowerTypes p;
    std::unordered_map<TypeId, std::size_t> first;
    TypeId t = tt.letter(n, l, 0);
    for (std::size_t k = 0;; ++k) {
        auto it = first.find(t);
        if (it != first.end()) {
            p.lag = it->second;
            p.period = k - it->second;
            break;
        }
        first.emplace(t, k);
        p.t.push_back(t);
        t = tt.omega(t);
    }
    std::vector<TypeId> loop(p.t.begin() + static_cast<std::ptrdiff_t>(p.lag), p.t.end());
    TypeId tail = tt.omega(tt.fold(loop));
    if (p.lag == 0) {
        p.omega_omega = tail;
    } else {
        std::vector<TypeId> pre(p.t.begin(), p.t.begin() + static_cast<std::ptrdiff_t>(p.lag));
        p.omega_omega = tt.add(tt.fold(pre), tail);
    }
    return p;
}

namespace {

TypeId times(TypeTable& tt, TypeId t, std::uint64_t c)
{
    TypeId result = t;
    bool have = false;
    TypeId base = t;
    while (c) {
        if (c & 1) {
            result = have ? tt.add(result, base) : base;
            have = true;
        }
        c >>= 1;
        if (c) base = tt.add(base, base);
    }
    return result;
}

}  // namespace

TypeId type_of_code(TypeTable& tt, int n, int l, const Code& code)
{
    PowerTypes p = power_types(tt, n, l);
    auto power = [&](std::size_t k) {
        if (k < p.t.size()) return p.t[k];
        return p.t[p.lag + (k - p.lag) % p.period];
    };
    bool have = false;
    TypeId acc = 0;
    if (code.flag) {
        acc = p.omega_omega;
        have = true;
    }
    std::size_t top = code.digits.size();
    for (std::size_t i = 0; i < top; ++i) {
        std::uint64_t c = code.digits[i];
        if (c == 0) continue;
        TypeId part = times(tt, power(top - 1 - i), c);
        acc = have ? tt.add(acc, part) : part;
        have = true;
    }
    if (!have) throw InvalidInput("the zero ordinal has no code");
    return acc;
}

bool decide_mth(TypeTable& tt, const Formula& sentence, const Code& code)
{
    Kernel k = sentence_kernel(sentence);
    TypeId t = type_of_code(tt, k.depth(), 0, code);
    return tt.eval(k.body, t);
}

}  // namespace church
