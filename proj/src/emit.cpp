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

#include "church/emit.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "church/errors.hpp"
#include "church/finite_oracle.hpp"

namespace church {

namespace {

using templates::agree_below;
using templates::is_first;
using templates::mult_omega_power;
using templates::successor;

Formula lit(Formula f, bool positive) { return positive ? f : Formula::negate(std::move(f)); }
Formula implies(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return Formula::binary(Op::Iff, std::move(a), std::move(b)); }
Formula all1(const std::string& v, Formula body) { return Formula::quantifier(Op::Forall1, v, std::move(body)); }
Formula ex1(const std::string& v, Formula body) { return Formula::quantifier(Op::Exists1, v, std::move(body)); }
Formula all2(const std::string& v, Formula body) { return Formula::quantifier(Op::Forall2, v, std::move(body)); }
Formula ex2(const std::string& v, Formula body) { return Formula::quantifier(Op::Exists2, v, std::move(body)); }

void collect_names(const Formula& f, std::set<std::string>& out, std::set<const void*>& seen)
{
    if (!seen.insert(f.id()).second) return;
    if (!f.var1().empty()) out.insert(f.var1());
    if (!f.var2().empty()) out.insert(f.var2());
    for (const auto& k : f.kids()) collect_names(k, out, seen);
}

std::string unused_name(const std::string& base, const std::set<std::string>& used)
{
    std::string n = base;
    while (used.count(n)) n += "_";
    return n;
}

class Emitter {
public:
    explicit Emitter(const ChurchProblem& p) : p_(p) {}

    Formula node(const StrategyNode& n)
    {
        auto it = memo_.find(&n);
        if (it != memo_.end()) return it->second;
        Formula out;
        switch (n.kind) {
        case StrategyNode::Kind::Leaf: out = leaf(n); break;
        case StrategyNode::Kind::OmegaLeaf: out = omega_leaf(n); break;
        case StrategyNode::Kind::OmegaNode: out = omega_node(n); break;
        case StrategyNode::Kind::SeqNode: out = seq(n); break;
        }
        memo_.emplace(&n, out);
        return out;
    }

private:
    std::string pos() { return "s" + std::to_string(counter_++); }
    std::string set() { return "Q" + std::to_string(counter_++); }

    Formula chi(Elem t)
    {
        auto it = chi_.find(t);
        if (it != chi_.end()) return it->second;
        Formula f = kernel_to_formula(p_.formula_algebra().characteristic(0, t), {"X1", "X2"});
        chi_.emplace(t, f);
        return f;
    }

    Formula leaf(const StrategyNode& n)
    {
        const std::string own = n.player == Player::I ? "X1" : "X2";
        const std::string opp = n.player == Player::I ? "X2" : "X1";
        const int k = n.table.length;
        std::vector<Formula> clauses;
        for (int r = 0; r < k; ++r) {
            std::vector<std::string> xs;
            for (int i = 0; i <= r; ++i) xs.push_back(pos());
            std::vector<Formula> chain{is_first(xs[0])};
            for (int i = 0; i < r; ++i) chain.push_back(successor(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i) + 1]));
            const int visible = n.player == Player::I ? r : r + 1;
            std::vector<Formula> ones;
            for (std::uint64_t h = 0; h < (std::uint64_t{1} << visible); ++h) {
                if (!n.table.move(r, h)) continue;
                std::vector<Formula> match;
                for (int i = 0; i < visible; ++i) match.push_back(lit(Formula::in(xs[static_cast<std::size_t>(i)], opp), h >> i & 1));
                ones.push_back(Formula::conj(match));
            }
            Formula body = implies(Formula::conj(chain), iff(Formula::in(xs.back(), own), Formula::disj(ones)));
            for (int i = r; i >= 0; --i) body = all1(xs[static_cast<std::size_t>(i)], body);
            clauses.push_back(body);
        }
        return Formula::conj(clauses);
    }

    // Output of a machine state at position t as a formula.
    Formula output(const MealyMachine& m, int s, const std::string& t)
    {
        if (m.player == Player::I) return Formula::constant(m.out_i[static_cast<std::size_t>(s)] == 1);
        const auto& o = m.out_ii[static_cast<std::size_t>(s)];
        if (o[0] == o[1]) return Formula::constant(o[0] == 1);
        return lit(Formula::in(t, "X1"), o[1] == 1);
    }

    Formula omega_leaf(const StrategyNode& n)
    {
        const MealyMachine& m = n.machine;
        const std::string own = n.player == Player::I ? "X1" : "X2";
        const std::string in = n.player == Player::I ? "X2" : "X1";
        bool stateless = true;
        for (std::size_t s = 1; s < m.states(); ++s)
            stateless = stateless && (m.player == Player::I ? m.out_i[s] == m.out_i[0] : m.out_ii[s] == m.out_ii[0]);
        if (stateless) {
            std::string t = pos();
            return all1(t, iff(Formula::in(t, own), output(m, 0, t)));
        }
        std::vector<std::string> q;
        for (std::size_t s = 0; s < m.states(); ++s) q.push_back(set());
        std::vector<Formula> parts;
        {
            std::string t = pos();
            std::vector<Formula> one;
            for (std::size_t s = 0; s < q.size(); ++s) {
                std::vector<Formula> lits;
                for (std::size_t r = 0; r < q.size(); ++r) lits.push_back(lit(Formula::in(t, q[r]), r == s));
                one.push_back(Formula::conj(lits));
            }
            parts.push_back(all1(t, Formula::disj(one)));
        }
        {
            std::string t = pos();
            parts.push_back(all1(t, implies(is_first(t), Formula::in(t, q[static_cast<std::size_t>(m.initial)]))));
        }
        {
            std::string t = pos(), u = pos();
            std::vector<Formula> steps;
            for (std::size_t s = 0; s < q.size(); ++s)
                for (int x = 0; x < 2; ++x)
                    steps.push_back(implies(Formula::binary(Op::And, Formula::in(t, q[s]), lit(Formula::in(t, in), x == 1)),
                                            Formula::in(u, q[static_cast<std::size_t>(m.next[s][static_cast<std::size_t>(x)])])));
            parts.push_back(all1(t, all1(u, implies(successor(t, u), Formula::conj(steps)))));
        }
        {
            std::string t = pos();
            std::vector<Formula> outs;
            for (std::size_t s = 0; s < q.size(); ++s)
                outs.push_back(implies(Formula::in(t, q[s]), iff(Formula::in(t, own), output(m, static_cast<int>(s), t))));
            parts.push_back(all1(t, Formula::conj(outs)));
        }
        Formula body = Formula::conj(parts);
        for (std::size_t s = q.size(); s-- > 0;) body = ex2(q[s], body);
        return body;
    }

    // "the positions below t form a nonempty multiple of w^e"
    Formula multiple_below(const std::string& t, std::uint64_t e)
    {
        std::string b = set(), u = pos();
        return ex2(b, Formula::binary(Op::And, all1(u, iff(Formula::in(u, b), Formula::less(u, t))),
                                      mult_omega_power(b, static_cast<int>(e))));
    }

    Formula seq(const StrategyNode& n)
    {
        const StrategyNode& l = *n.left;
        const OrdinalExpr right = n.branches.begin()->second->segment;
        std::string t = pos();
        Formula theta;
        if (l.segment.finite()) {
            theta = relativize(templates::exactly(static_cast<int>(l.segment.finite_part())), RelMode::Below, t);
        } else if (right.finite()) {
            theta = relativize(templates::exactly(static_cast<int>(right.finite_part())), RelMode::AtOrAbove, t);
        } else {
            std::string v = pos();
            std::uint64_t e = right.terms[0].exp;
            theta = Formula::binary(Op::And, multiple_below(t, e),
                                    all1(v, implies(Formula::less(t, v), Formula::negate(multiple_below(v, e)))));
        }
        std::vector<Formula> parts{theta, relativize(node(l), RelMode::Below, t)};
        for (const auto& [tau, b] : n.branches)
            parts.push_back(implies(relativize(chi(tau), RelMode::Below, t), relativize(node(*b), RelMode::AtOrAbove, t)));
        return ex1(t, Formula::conj(parts));
    }

    Formula between(const Formula& f, const std::string& from, const std::string& to)
    {
        return relativize(relativize(f, RelMode::AtOrAbove, from), RelMode::Below, to);
    }

    Formula omega_node(const StrategyNode& n)
    {
        const MealyMachine& m = n.machine;
        const std::uint64_t inner = n.segment.terms[0].exp - 1;
        auto start = [&](const std::string& b) {
            return Formula::binary(Op::Or, is_first(b), multiple_below(b, inner));
        };
        std::vector<std::string> q;
        for (std::size_t s = 0; s < m.states(); ++s) q.push_back(set());
        std::vector<Formula> parts;
        {
            std::string b = pos();
            std::vector<Formula> one;
            for (std::size_t s = 0; s < q.size(); ++s) {
                std::vector<Formula> lits;
                for (std::size_t r = 0; r < q.size(); ++r) lits.push_back(lit(Formula::in(b, q[r]), r == s));
                one.push_back(Formula::conj(lits));
            }
            parts.push_back(all1(b, implies(start(b), Formula::disj(one))));
        }
        {
            std::string b = pos();
            parts.push_back(all1(b, implies(is_first(b), Formula::in(b, q[static_cast<std::size_t>(m.initial)]))));
        }
        std::string b = pos(), c = pos(), v = pos();
        Formula next = Formula::conj({start(b), start(c), Formula::less(b, c),
                                      all1(v, implies(Formula::binary(Op::And, Formula::less(b, v), Formula::less(v, c)),
                                                      Formula::negate(start(v))))});
        std::vector<Formula> per_state;
        for (int s = 0; s < static_cast<int>(m.states()); ++s) {
            WinSet obj = omega_block_objective(n, s, p_.games().full());
            std::vector<Formula> then{between(node(*n.blocks.at(obj)), b, c)};
            for (Elem tau = 0; tau < p_.algebra().size(); ++tau) {
                int target = -1;
                if (n.player == Player::I) {
                    WinSet prop = n.proposals[static_cast<std::size_t>(m.out_i[static_cast<std::size_t>(s)])];
                    if (prop >> tau & 1) {
                        int rank = std::popcount(prop & ((WinSet{1} << tau) - 1));
                        target = m.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(rank)];
                    }
                } else {
                    for (std::size_t d = 0; d < n.proposals.size() && target < 0; ++d) {
                        WinSet prop = n.proposals[d];
                        int want = m.out_ii[static_cast<std::size_t>(s)][d];
                        int rank = std::popcount(prop & ((WinSet{1} << tau) - 1));
                        if (prop >> tau & 1 && rank == want) target = m.next[static_cast<std::size_t>(s)][d];
                    }
                }
                if (target < 0) continue;
                then.push_back(implies(between(chi(tau), b, c), Formula::in(c, q[static_cast<std::size_t>(target)])));
            }
            per_state.push_back(implies(Formula::in(b, q[static_cast<std::size_t>(s)]), Formula::conj(then)));
        }
        parts.push_back(all1(b, all1(c, implies(next, Formula::conj(per_state)))));
        Formula body = Formula::conj(parts);
        for (std::size_t s = q.size(); s-- > 0;) body = ex2(q[s], body);
        return body;
    }

    const ChurchProblem& p_;
    std::size_t counter_ = 0;
    std::map<const StrategyNode*, Formula> memo_;
    std::map<Elem, Formula> chi_;
};

}  // namespace

WinSentences win_sentences(const Formula& phi, const Formula& psi, Player p)
{
    FreeVars fv = free_variables(psi);
    if (!fv.first_order.empty()) throw InvalidInput("strategy formula has free first-order variables");
    for (const auto& s : fv.sets)
        if (s != "X1" && s != "X2") throw InvalidInput("strategy formula mentions free variable " + s);
    std::set<std::string> used{"X1", "X2"};
    std::set<const void*> seen;
    collect_names(psi, used, seen);
    collect_names(phi, used, seen);
    const std::string y1 = unused_name("Y1", used), y2 = unused_name("Y2", used), t = unused_name("t", used);
    const std::string own = p == Player::I ? "X1" : "X2", opp = p == Player::I ? "X2" : "X1";
    const std::string own_y = p == Player::I ? y1 : y2, opp_y = p == Player::I ? y2 : y1;
    auto psi_with = [&](const std::string& a, const std::string& b) {
        return rename_sets(psi, {{"X1", a}, {"X2", b}});
    };
    Formula psi_xx = psi;
    Formula psi_own_y = p == Player::I ? psi_with(y1, "X2") : psi_with("X1", y2);
    Formula psi_yy = psi_with(y1, y2);
    Formula same_own = all1(t, iff(Formula::in(t, own), Formula::in(t, own_y)));

    WinSentences w;
    w.player = p;
    w.total = all2(opp, ex2(own, psi_xx));
    w.unique = all2(opp, all2(own, implies(psi_xx, all2(own_y, implies(psi_own_y, same_own)))));
    Formula step = all1(t, implies(agree_below(opp, opp_y, t, p == Player::II),
                                   iff(Formula::in(t, own), Formula::in(t, own_y))));
    w.causal = all2(opp, all2(own, implies(psi_xx, all2(opp_y, all2(own_y, implies(psi_yy, step))))));
    w.correct = all2(opp, all2(own, implies(psi_xx, p == Player::I ? phi : Formula::negate(phi))));
    w.win = Formula::conj({w.total, w.unique, w.causal, w.correct});
    return w;
}

std::pair<Formula, Formula> build_win_sentences(const Formula& phi, const Formula& psi)
{
    return {win_sentences(phi, psi, Player::I).win, win_sentences(phi, psi, Player::II).win};
}

Formula emit_strategy_formula(const StrategyTree& t, const ChurchProblem& p)
{
    if (!t.root) throw InvalidInput("empty strategy tree");
    return Emitter(p).node(*t.root);
}

namespace {

class BodyGen {
public:
    const std::vector<Formula>& get(std::size_t n, std::size_t depth)
    {
        auto key = std::make_pair(n, depth);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<Formula> out;
        std::vector<std::string> vars{"t"};
        for (std::size_t d = 0; d < depth; ++d) vars.push_back("u" + std::to_string(d));
        if (n == 1) {
            out.push_back(Formula::constant(true));
            out.push_back(Formula::constant(false));
            for (const auto& v : vars) {
                out.push_back(Formula::in(v, "X1"));
                out.push_back(Formula::in(v, "X2"));
            }
            for (std::size_t i = 0; i < vars.size(); ++i)
                for (std::size_t j = 0; j < vars.size(); ++j) {
                    if (i != j) out.push_back(Formula::less(vars[i], vars[j]));
                    if (i < j) out.push_back(Formula::equal(vars[i], vars[j]));
                }
        } else {
            for (const auto& f : get(n - 1, depth)) out.push_back(Formula::negate(f));
            for (std::size_t a = 1; a + 2 <= n; ++a) {
                std::size_t b = n - 1 - a;
                for (const auto& x : get(a, depth))
                    for (const auto& y : get(b, depth)) {
                        out.push_back(Formula::binary(Op::And, x, y));
                        out.push_back(Formula::binary(Op::Or, x, y));
                    }
            }
            if (depth < 2) {
                std::string u = "u" + std::to_string(depth);
                for (const auto& f : get(n - 1, depth + 1)) {
                    out.push_back(Formula::quantifier(Op::Exists1, u, f));
                    out.push_back(Formula::quantifier(Op::Forall1, u, f));
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Formula>> memo_;
};

}  // namespace

std::vector<Formula> candidate_bodies(std::size_t n)
{
    if (n == 0) return {};
    BodyGen g;
    std::vector<std::pair<std::string, Formula>> keyed;
    for (const auto& f : g.get(n, 0)) keyed.emplace_back(render(f), f);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Formula> out;
    for (std::size_t i = 0; i < keyed.size(); ++i)
        if (i == 0 || keyed[i].first != keyed[i - 1].first) out.push_back(keyed[i].second);
    return out;
}

SearchResult search_definable_strategy(const Formula& phi, const Code& code, const SearchOptions& opts)
{
    SearchResult r;
    OrdinalExpr a = ordinal_of(code);
    const bool finite = a.finite();
    for (std::size_t n = 1; n <= opts.max_size; ++n) {
        for (const Formula& body : candidate_bodies(n)) {
            for (Player p : {Player::I, Player::II}) {
                if (r.tested >= opts.budget) return r;
                ++r.tested;
                Formula psi = all1("t", iff(Formula::in("t", p == Player::I ? "X1" : "X2"), body));
                Formula win = win_sentences(phi, psi, p).win;
                try {
                    // A finite ordinal is its own chain, so evaluation is exact there.
                    if (finite) {
                        FiniteChain chain;
                        chain.k = static_cast<int>(a.finite_part());
                        if (!eval_finite(win, chain)) continue;
                    } else if (!decide_sentence(win, code, opts.max_types)) {
                        continue;
                    }
                } catch (const ResourceLimit&) {
                    ++r.skipped;
                    continue;
                }
                r.found = true;
                r.player = p;
                r.psi = psi;
                return r;
            }
        }
    }
    return r;
}

Formula gcode_sentence(const Code& g, const StabilizationInfo& info)
{
    const std::size_t m = info.m;
    if (g.digits.size() != m) throw InvalidInput("game code length does not match m");
    std::size_t counter = 0;
    auto fresh_pos = [&] { return "g" + std::to_string(counter++); };
    auto fresh_set = [&] { return "G" + std::to_string(counter++); };
    auto all_multiple = [&](std::uint64_t e) {
        std::string b = fresh_set(), u = fresh_pos();
        return ex2(b, Formula::binary(Op::And, all1(u, Formula::in(u, b)), mult_omega_power(b, static_cast<int>(e))));
    };
    auto multiple_below = [&](const std::string& t, std::uint64_t e) {
        std::string b = fresh_set(), u = fresh_pos();
        return ex2(b, Formula::binary(Op::And, all1(u, iff(Formula::in(u, b), Formula::less(u, t))),
                                      mult_omega_power(b, static_cast<int>(e))));
    };
    std::vector<Formula> parts;
    {
        std::string x = fresh_pos();
        parts.push_back(ex1(x, Formula::equal(x, x)));
    }
    {
        std::string b = fresh_set();
        Formula some = ex2(b, mult_omega_power(b, static_cast<int>(m)));
        parts.push_back(lit(some, g.flag));
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t k = m - 1 - i, d = g.digits[i];
        const std::uint64_t lag = info.lag[k], period = info.period[k];
        if (d >= lag + period) throw InvalidInput("digit outside the truncated range");
        // E: the w^k cuts after the last w^(k+1) cut; the coefficient of w^k
        // is |E|, plus one when the chain itself ends on such a block.
        std::string e = fresh_set(), t = fresh_pos(), u = fresh_pos();
        Formula in_e = Formula::binary(
            Op::And, multiple_below(t, k),
            Formula::negate(ex1(u, Formula::binary(Op::And, Formula::negate(Formula::less(u, t)), multiple_below(u, k + 1)))));
        Formula def_e = all1(t, iff(Formula::in(t, e), in_e));
        Formula delta = Formula::binary(Op::And, all_multiple(k), Formula::negate(all_multiple(k + 1)));
        auto count_is = [&](std::uint64_t shift) -> Formula {
            if (d < shift) return Formula::constant(false);
            std::uint64_t want = d - shift;
            if (d < lag) return templates::set_has_size(e, static_cast<int>(want));
            std::vector<Formula> small;
            for (std::uint64_t j = 0; j + shift < lag; ++j) small.push_back(templates::set_has_size(e, static_cast<int>(j)));
            return Formula::binary(Op::And, Formula::negate(Formula::disj(small)),
                                   templates::mod_count(e, e, static_cast<int>(period), static_cast<int>(want % period)));
        };
        Formula coef = Formula::binary(Op::Or, Formula::binary(Op::And, delta, count_is(1)),
                                       Formula::binary(Op::And, Formula::negate(delta), count_is(0)));
        parts.push_back(ex2(e, Formula::binary(Op::And, def_e, coef)));
    }
    return Formula::conj(parts);
}

Formula win_phi_sentence(const Atlas& atlas)
{
    std::vector<Formula> alts;
    for (const auto& row : atlas.rows)
        if (row.winner == Player::I) alts.push_back(gcode_sentence(row.gcode, atlas.info));
    return Formula::disj(alts);
}

}  // namespace church
