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

#include "church/synthesis.hpp"

#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

#include "church/errors.hpp"

namespace church {

const char* kind_name(StrategyNode::Kind k)
{
    switch (k) {
    case StrategyNode::Kind::Leaf: return "leaf";
    case StrategyNode::Kind::OmegaLeaf: return "omega-leaf";
    case StrategyNode::Kind::OmegaNode: return "omega-node";
    case StrategyNode::Kind::SeqNode: return "seq-node";
    }
    return "?";
}

namespace {

Elem nth_element(WinSet s, int n)
{
    for (Elem x = 0; x < 64; ++x)
        if (s >> x & 1 && n-- == 0) return x;
    throw std::logic_error("proposal index out of range");
}

std::vector<std::vector<Elem>> proposal_lists(const std::vector<WinSet>& proposals)
{
    std::vector<std::vector<Elem>> out;
    for (WinSet p : proposals) {
        std::vector<Elem> v;
        for (Elem x = 0; x < 64; ++x)
            if (p >> x & 1) v.push_back(x);
        out.push_back(std::move(v));
    }
    return out;
}

/// t' with t + t' in g.
WinSet suffix_targets(const Semigroup& s, Elem t, WinSet g)
{
    WinSet out = 0;
    for (Elem u = 0; u < s.size(); ++u)
        if (g >> s.add(t, u) & 1) out |= WinSet{1} << u;
    return out;
}

std::uint64_t length_of(const OrdinalExpr& a)
{
    if (!a.finite()) throw std::logic_error("segment is not finite");
    return a.finite_part();
}

/// Splits a into left + right as synthesis does; the second member is false for
/// single-block segments.
struct Split {
    bool seq = false;
    OrdinalExpr left, right;
};

Split split(const OrdinalExpr& a, int max_leaf)
{
    Split s;
    if (a.finite()) {
        std::uint64_t k = a.finite_part();
        if (k > static_cast<std::uint64_t>(max_leaf)) {
            s.seq = true;
            s.left = ordinal_finite(k - static_cast<std::uint64_t>(max_leaf));
            s.right = ordinal_finite(static_cast<std::uint64_t>(max_leaf));
        }
        return s;
    }
    OrdinalExpr::Term last = a.terms.back();
    if (last.exp == 0) {
        s.seq = true;
        s.left = a;
        s.left.terms.pop_back();
        s.right = ordinal_finite(last.coeff);
        return s;
    }
    if (a.terms.size() > 1 || last.coeff > 1) {
        s.seq = true;
        s.left = a;
        if (last.coeff > 1) --s.left.terms.back().coeff;
        else s.left.terms.pop_back();
        s.right = ordinal_power(last.exp);
    }
    return s;
}

class Synthesizer {
public:
    Synthesizer(ChurchProblem& p, const SynthOptions& o) : p_(p), ga_(p.games()), opts_(o) {}

    StrategyNode::Ptr build(const OrdinalExpr& seg, WinSet g)
    {
        auto key = std::make_pair(render(seg), g);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto node = std::make_shared<StrategyNode>();
        node->segment = seg;
        node->objective = g;
        Split sp = split(seg, opts_.max_leaf);
        if (sp.seq) {
            sequence(*node, sp, g);
        } else if (seg.finite()) {
            node->kind = StrategyNode::Kind::Leaf;
            int k = static_cast<int>(seg.finite_part());
            auto r = solve_finite_game(condition_of(ga_.algebra(), ga_.letters(), ga_.as_vector(g)), k, std::max(6, k));
            node->player = r.winner;
            node->table = std::move(r.strategy);
        } else if (seg.terms[0].exp == 1) {
            node->kind = StrategyNode::Kind::OmegaLeaf;
            auto r = solve_mcnaughton_omega(ga_.automata(), ga_.letters(), ga_.as_vector(g));
            node->player = r.winner;
            node->machine = std::move(r.machine);
        } else {
            omega_power(*node, seg.terms[0].exp, g);
        }
        memo_.emplace(key, node);
        return node;
    }

private:
    void sequence(StrategyNode& node, const Split& sp, WinSet g)
    {
        node.kind = StrategyNode::Kind::SeqNode;
        GameType c_right = p_.game_type(sp.right);
        WinSet k = ga_.k_set(c_right, g);
        node.player = p_.game_type(sp.left).contains(k) ? Player::I : Player::II;
        node.left = build(sp.left, k);
        expect(node.left->player == node.player, "prefix winner");
        for (Elem t = 0; t < ga_.size(); ++t) {
            WinSet targets = suffix_targets(ga_.algebra(), t, g);
            if (node.player == Player::I) {
                if (!(k >> t & 1)) continue;
                WinSet choice = 0;
                for (WinSet m : c_right.minimal())
                    if ((m & ~targets) == 0) {
                        choice = m;
                        break;
                    }
                node.branches[t] = build(sp.right, choice);
            } else {
                if (k >> t & 1) continue;
                node.branches[t] = build(sp.right, targets);
            }
            expect(node.branches[t]->player == node.player, "suffix winner");
        }
    }

    void omega_power(StrategyNode& node, std::uint64_t e, WinSet g)
    {
        node.kind = StrategyNode::Kind::OmegaNode;
        OrdinalExpr inner = ordinal_power(e - 1);
        GameType c = p_.game_type(inner);
        auto r = ga_.game_omega(c, g);
        node.player = r.winner;
        node.machine = std::move(r.machine);
        node.proposals = c.minimal();
        for (int s = 0; s < static_cast<int>(node.machine.states()); ++s) {
            WinSet obj = omega_block_objective(node, s, ga_.full());
            if (node.blocks.count(obj)) continue;
            node.blocks[obj] = build(inner, obj);
            expect(node.blocks[obj]->player == node.player, "block winner");
        }
    }

    static void expect(bool c, const char* what)
    {
        if (!c) throw std::logic_error(std::string("synthesis invariant failed: ") + what);
    }

    ChurchProblem& p_;
    GameAlgebra& ga_;
    SynthOptions opts_;
    std::map<std::pair<std::string, WinSet>, StrategyNode::Ptr> memo_;
};

}  // namespace

WinSet omega_block_objective(const StrategyNode& n, int state, WinSet full)
{
    const auto& m = n.machine;
    if (n.player == Player::I) return n.proposals.at(static_cast<std::size_t>(m.out_i.at(static_cast<std::size_t>(state))));
    WinSet answers = 0;
    for (std::size_t d = 0; d < n.proposals.size(); ++d)
        answers |= WinSet{1} << nth_element(n.proposals[d], m.out_ii.at(static_cast<std::size_t>(state))[d]);
    return full & ~answers;
}

StrategyTree synthesize(ChurchProblem& p, const OrdinalExpr& a, const SynthOptions& opts)
{
    if (a.flag) throw InvalidInput("synthesis needs an ordinal below w^w");
    if (a.is_zero()) throw InvalidInput("the ordinal must be positive");
    if (opts.max_leaf < 1) throw InvalidInput("max_leaf must be positive");
    Synthesizer s(p, opts);
    StrategyTree t;
    t.ordinal = a;
    t.root = s.build(a, p.winset());
    t.winner = t.root->player;
    return t;
}

std::size_t VerifyReport::failures() const
{
    std::size_t n = 0;
    for (const auto& o : obligations) n += !o.ok;
    return n;
}

std::string VerifyReport::text() const
{
    std::ostringstream os;
    for (const auto& o : obligations) os << (o.ok ? "ok   " : "FAIL ") << o.path << ": " << o.what << "\n";
    os << obligations.size() << " obligations, " << failures() << " failed\n";
    return os.str();
}

namespace {

class Verifier {
public:
    Verifier(ChurchProblem& p, VerifyReport& r) : p_(p), ga_(p.games()), r_(r) {}

    void node(const StrategyNode& n, const std::string& path)
    {
        if (!seen_.insert(&n).second) return;
        std::string head = std::string(kind_name(n.kind)) + " " + render(n.segment) + " for " + player_name(n.player) +
                           " objective " + render_winset(n.objective);
        switch (n.kind) {
        case StrategyNode::Kind::Leaf: leaf(n, path, head); break;
        case StrategyNode::Kind::OmegaLeaf: omega_leaf(n, path, head); break;
        case StrategyNode::Kind::OmegaNode: omega_node(n, path, head); break;
        case StrategyNode::Kind::SeqNode: seq(n, path, head); break;
        }
    }

private:
    bool check(const std::string& path, const std::string& what, bool ok)
    {
        r_.obligations.push_back({path, what, ok});
        return ok;
    }

    void leaf(const StrategyNode& n, const std::string& path, const std::string& head)
    {
        bool shape = check(path, head + ": table belongs to the node's player and length",
                           n.table.player == n.player && n.segment.finite() && !n.segment.is_zero() &&
                               static_cast<std::uint64_t>(n.table.length) == n.segment.finite_part() &&
                               n.table.moves.size() == FiniteStrategyTable::table_size(n.player, n.table.length));
        if (!shape) return;
        auto cond = condition_of(ga_.algebra(), ga_.letters(), ga_.as_vector(n.objective));
        check(path, head + ": table wins every play", verify_finite_strategy(n.table, cond, n.table.length));
    }

    void omega_leaf(const StrategyNode& n, const std::string& path, const std::string& head)
    {
        bool shape = check(path, head + ": machine belongs to the node's player on an w segment",
                           n.machine.player == n.player && n.segment == ordinal_power(1) && machine_shape(n, 2));
        if (!shape) return;
        const DPA& d = ga_.automata().get(ga_.as_vector(n.objective));
        check(path, head + ": machine model-checks", model_check_strategy(mcnaughton_round(ga_.letters()), d, n.machine));
    }

    bool machine_shape(const StrategyNode& n, std::size_t moves) const
    {
        const auto& m = n.machine;
        if (m.states() == 0 || m.initial < 0 || static_cast<std::size_t>(m.initial) >= m.states()) return false;
        if (m.player == Player::I ? m.out_i.size() != m.states() : m.out_ii.size() != m.states()) return false;
        for (std::size_t s = 0; s < m.states(); ++s) {
            if (m.player == Player::I && (m.out_i[s] < 0 || static_cast<std::size_t>(m.out_i[s]) >= moves)) return false;
            if (m.player == Player::II && m.out_ii[s].size() != moves) return false;
            for (int t : m.next[s])
                if (t >= static_cast<int>(m.states())) return false;
        }
        return true;
    }

    void omega_node(const StrategyNode& n, const std::string& path, const std::string& head)
    {
        bool shape = n.machine.player == n.player && n.segment.terms.size() == 1 && !n.segment.flag &&
                     n.segment.terms[0].coeff == 1 && n.segment.terms[0].exp >= 2 && !n.proposals.empty() &&
                     machine_shape(n, n.proposals.size());
        for (WinSet p : n.proposals) shape = shape && p != 0 && (p & ~ga_.full()) == 0;
        if (n.player == Player::II)
            for (std::size_t s = 0; shape && s < n.machine.states(); ++s)
                for (std::size_t d = 0; d < n.proposals.size(); ++d)
                    shape = shape && n.machine.out_ii[s][d] >= 0 &&
                            n.machine.out_ii[s][d] < std::popcount(n.proposals[d]);
        if (!check(path, head + ": meta machine and proposals well formed", shape)) return;
        RoundGame g = game_omega_round(proposal_lists(n.proposals));
        const DPA& d = ga_.automata().get(ga_.as_vector(n.objective));
        check(path, head + ": meta machine model-checks", model_check_strategy(g, d, n.machine));
        OrdinalExpr inner = ordinal_power(n.segment.terms[0].exp - 1);
        for (int s = 0; s < static_cast<int>(n.machine.states()); ++s) {
            WinSet obj = omega_block_objective(n, s, ga_.full());
            auto it = n.blocks.find(obj);
            std::string sub = path + "/block" + render_winset(obj);
            if (!check(sub, "block strategy present for meta state " + std::to_string(s), it != n.blocks.end()))
                continue;
            const StrategyNode& b = *it->second;
            if (!check(sub, "block strategy has the node's player, segment and objective",
                       b.player == n.player && b.segment == inner && b.objective == obj))
                continue;
            node(b, sub);
        }
    }

    void seq(const StrategyNode& n, const std::string& path, const std::string& head)
    {
        if (!check(path + "/left", head + ": prefix strategy present", n.left != nullptr && !n.branches.empty()))
            return;
        const StrategyNode& l = *n.left;
        OrdinalExpr right = n.branches.begin()->second->segment;
        bool shape = l.player == n.player && ordinal_add(l.segment, right) == n.segment;
        for (const auto& [t, b] : n.branches) shape = shape && b->segment == right && b->player == n.player;
        if (!check(path, head + ": segments compose and players agree", shape)) return;
        GameType c_right = p_.game_type(right);
        check(path, head + ": prefix objective is the K-set of the suffix game type",
              l.objective == ga_.k_set(c_right, n.objective));
        node(l, path + "/left");
        for (Elem t = 0; t < ga_.size(); ++t) {
            bool needed = (l.objective >> t & 1) == (n.player == Player::I);
            if (!needed) continue;
            std::string sub = path + "/branch" + std::to_string(t);
            auto it = n.branches.find(t);
            if (!check(sub, "branch for prefix type " + std::to_string(t), it != n.branches.end())) continue;
            const StrategyNode& b = *it->second;
            WinSet targets = suffix_targets(ga_.algebra(), t, n.objective);
            bool fits = n.player == Player::I ? (b.objective & ~targets) == 0 : (targets & ~b.objective) == 0;
            if (!check(sub, "suffix objective composes with prefix type " + std::to_string(t), fits)) continue;
            node(b, sub);
        }
    }

    ChurchProblem& p_;
    GameAlgebra& ga_;
    VerifyReport& r_;
    std::set<const StrategyNode*> seen_;
};

}  // namespace

VerifyReport verify_strategy_tree(const StrategyTree& t, ChurchProblem& p)
{
    VerifyReport r;
    bool top = t.root != nullptr;
    r.obligations.push_back({"root", "tree covers the game ordinal with the game's objective",
                             top && t.root->segment == t.ordinal && t.root->objective == p.winset() &&
                                 t.root->player == t.winner});
    if (top) Verifier(p, r).node(*t.root, "root");
    return r;
}

std::uint64_t run_finite_tree(const StrategyNode& n, const GameAlgebra& ga, std::uint64_t opp)
{
    if (n.kind == StrategyNode::Kind::Leaf) {
        Play play = run_table(n.table, opp);
        return n.player == Player::I ? play.x1 : play.x2;
    }
    if (n.kind != StrategyNode::Kind::SeqNode) throw InvalidInput("tree has an infinite segment");
    std::uint64_t len = length_of(n.left->segment);
    std::uint64_t own = run_finite_tree(*n.left, ga, opp & ((std::uint64_t{1} << len) - 1));
    std::vector<Elem> word;
    for (std::uint64_t r = 0; r < len; ++r) {
        int mine = static_cast<int>(own >> r & 1), theirs = static_cast<int>(opp >> r & 1);
        int a = n.player == Player::I ? mine : theirs, b = n.player == Player::I ? theirs : mine;
        word.push_back(ga.letters()[letter_bits(a, b)]);
    }
    Elem t = ga.algebra().fold(word);
    auto it = n.branches.find(t);
    if (it == n.branches.end()) throw std::logic_error("no branch for realized prefix type " + std::to_string(t));
    return own | run_finite_tree(*it->second, ga, opp >> len) << len;
}

FiniteStrategyTable flatten(const StrategyTree& t, const GameAlgebra& ga)
{
    int k = static_cast<int>(length_of(t.ordinal));
    if (k > 20) throw ResourceLimit("flattening is capped at length 20");
    FiniteStrategyTable tab;
    tab.player = t.winner;
    tab.length = k;
    tab.moves.assign(FiniteStrategyTable::table_size(t.winner, k), 2);
    for (std::uint64_t opp = 0; opp < (std::uint64_t{1} << k); ++opp) {
        std::uint64_t own = run_finite_tree(*t.root, ga, opp);
        for (int r = 0; r < k; ++r) {
            std::uint64_t seen = t.winner == Player::I ? opp & ((std::uint64_t{1} << r) - 1)
                                                       : opp & ((std::uint64_t{2} << r) - 1);
            std::uint8_t bit = static_cast<std::uint8_t>(own >> r & 1);
            std::uint8_t& slot = tab.move(r, seen);
            if (slot != 2 && slot != bit) throw std::logic_error("tree reads moves it may not see");
            slot = bit;
        }
    }
    return tab;
}

Formula winset_formula(const ChurchProblem& p, WinSet g)
{
    std::vector<Formula> parts;
    for (Elem t = 0; t < p.algebra().size(); ++t)
        if (g >> t & 1) parts.push_back(kernel_to_formula(p.formula_algebra().characteristic(0, t), {"X1", "X2"}));
    return Formula::disj(parts);
}

Reduction reduce_to_omega_omega(ChurchProblem& p, const OrdinalExpr& a)
{
    if (!a.flag) throw InvalidInput("reduction needs an ordinal of at least w^w");
    Reduction r;
    r.beta = a;
    r.beta.flag = false;
    if (r.beta.is_zero()) {
        r.k = p.winset();
        r.condition = p.formula();
        return r;
    }
    r.k = p.games().k_set(p.game_type(r.beta), p.winset());
    r.condition = winset_formula(p, r.k);
    return r;
}

}  // namespace church
