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

#include "church/semigroup.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "church/errors.hpp"

namespace church {

Semigroup::Semigroup(std::size_t n, std::vector<Elem> add, std::vector<Elem> omega)
    : n_(n), add_(std::move(add)), omega_(std::move(omega))
{
    if (add_.size() != n * n || omega_.size() != n) throw InvalidInput("semigroup table size mismatch");
}

Elem Semigroup::idempotent_power(Elem a) const
{
    Elem x = a;
    for (std::size_t k = 0; k <= n_; ++k) {
        if (idempotent(x)) return x;
        x = add(x, a);
    }
    throw InvalidInput("no idempotent power: table is not associative");
}

Elem Semigroup::fold(const std::vector<Elem>& word) const
{
    if (word.empty()) throw InvalidInput("fold of an empty word");
    Elem acc = word[0];
    for (std::size_t i = 1; i < word.size(); ++i) acc = add(acc, word[i]);
    return acc;
}

std::vector<Elem> Semigroup::add_closure(const std::vector<Elem>& gens) const
{
    std::vector<bool> seen(n_, false);
    std::vector<Elem> out;
    for (Elem g : gens)
        if (!seen[g]) { seen[g] = true; out.push_back(g); }
    std::vector<Elem> base = out;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (Elem g : base) {
            Elem y = add(out[i], g);
            if (!seen[y]) { seen[y] = true; out.push_back(y); }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Elem> Semigroup::achievable(const std::vector<Elem>& gens) const
{
    std::vector<Elem> plus = add_closure(gens);
    std::vector<bool> seen(n_, false);
    for (Elem e : plus) {
        if (!idempotent(e)) continue;
        Elem w = omega(e);
        seen[w] = true;
        for (Elem p : plus) seen[add(p, w)] = true;
    }
    std::vector<Elem> out;
    for (Elem x = 0; x < n_; ++x)
        if (seen[x]) out.push_back(x);
    return out;
}

std::string Semigroup::check_laws() const
{
    for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
            for (Elem c = 0; c < n_; ++c)
                if (add(add(a, b), c) != add(a, add(b, c)))
                    return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                           std::to_string(c) + ")";
    for (Elem a = 0; a < n_; ++a) {
        Elem e = idempotent_power(a);
        if (omega(a) != omega(e)) return "omega differs from omega of idempotent power at " + std::to_string(a);
        if (idempotent(a) && add(a, omega(a)) != omega(a)) return "e + omega(e) != omega(e) at " + std::to_string(a);
        if (omega(add(a, a)) != omega(a)) return "omega(a+a) != omega(a) at " + std::to_string(a);
        for (Elem b = 0; b < n_; ++b)
            if (add(a, omega(add(b, a))) != omega(add(a, b)))
                return "a + omega(b+a) != omega(a+b) at (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return {};
}

Elem lasso_value(const Semigroup& s, const std::vector<Elem>& u, const std::vector<Elem>& v)
{
    if (v.empty()) throw InvalidInput("lasso loop must be nonempty");
    Elem w = s.omega(s.fold(v));
    return u.empty() ? w : s.add(s.fold(u), w);
}

Quotient congruence_quotient(const Semigroup& s, const std::vector<std::uint32_t>& initial)
{
    std::size_t n = s.size();
    if (initial.size() != n) throw InvalidInput("initial labelling size mismatch");
    // Contexts x+g and g+x for g in a generating set under sum: every element
    // that is not a sum of two others, plus all omega values.
    std::vector<bool> is_sum(n, false), gen(n, false);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) is_sum[s.add(a, b)] = true;
    for (Elem a = 0; a < n; ++a) {
        if (!is_sum[a]) gen[a] = true;
        gen[s.omega(a)] = true;
    }
    std::vector<Elem> gens;
    for (Elem a = 0; a < n; ++a)
        if (gen[a]) gens.push_back(a);
    if (s.add_closure(gens).size() != n) {
        gens.resize(n);
        for (Elem a = 0; a < n; ++a) gens[a] = a;
    }

    std::vector<Elem> cls(n);
    {
        std::map<std::uint32_t, Elem> ids;
        for (Elem a = 0; a < n; ++a) cls[a] = ids.emplace(initial[a], static_cast<Elem>(ids.size())).first->second;
    }
    std::size_t count = 0;
    for (Elem c : cls) count = std::max<std::size_t>(count, c + 1);
    for (;;) {
        std::map<std::vector<Elem>, Elem> ids;
        std::vector<Elem> next(n);
        std::vector<Elem> sig;
        for (Elem a = 0; a < n; ++a) {
            sig.clear();
            sig.push_back(cls[a]);
            sig.push_back(cls[s.omega(a)]);
            for (Elem g : gens) {
                sig.push_back(cls[s.add(a, g)]);
                sig.push_back(cls[s.add(g, a)]);
            }
            next[a] = ids.emplace(sig, static_cast<Elem>(ids.size())).first->second;
        }
        cls.swap(next);
        if (ids.size() == count) break;
        count = ids.size();
    }
    Quotient q;
    q.cls = cls;
    q.rep.assign(count, 0);
    std::vector<bool> have(count, false);
    for (Elem a = 0; a < n; ++a)
        if (!have[cls[a]]) { have[cls[a]] = true; q.rep[cls[a]] = a; }
    std::vector<Elem> add(count * count), om(count);
    for (Elem c = 0; c < count; ++c) {
        om[c] = cls[s.omega(q.rep[c])];
        for (Elem d = 0; d < count; ++d) add[c * count + d] = cls[s.add(q.rep[c], q.rep[d])];
    }
    q.algebra = Semigroup(count, std::move(add), std::move(om));
    return q;
}

}  // namespace church
