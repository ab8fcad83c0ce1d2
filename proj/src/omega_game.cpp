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

#include "church/omega_game.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "church/errors.hpp"

namespace church {

int MealyMachine::respond(int state, int opponent_move) const
{
    if (player == Player::I) return out_i[static_cast<std::size_t>(state)];
    return out_ii[static_cast<std::size_t>(state)][static_cast<std::size_t>(opponent_move)];
}

std::pair<int, int> MealyMachine::step(int state, int opponent_move) const
{
    return {respond(state, opponent_move), next[static_cast<std::size_t>(state)][static_cast<std::size_t>(opponent_move)]};
}

MealyMachine minimize(const MealyMachine& m)
{
    const std::size_t n = m.states();
    std::vector<int> cls(n, 0);
    {
        std::map<std::vector<int>, int> ids;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<int> key = m.player == Player::I ? std::vector<int>{m.out_i[s]} : m.out_ii[s];
            key.push_back(static_cast<int>(m.next[s].size()));
            cls[s] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
        }
    }
    std::size_t count = 0;
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> nc(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<int> key{cls[s]};
            for (int t : m.next[s]) key.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
            nc[s] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
        }
        cls.swap(nc);
        if (ids.size() == count) break;
        count = ids.size();
    }
    // Renumber classes in breadth-first order from the initial state.
    std::vector<int> order(count, -1), rep;
    std::vector<int> queue{cls[static_cast<std::size_t>(m.initial)]};
    order[static_cast<std::size_t>(queue[0])] = 0;
    std::vector<int> rep_of(count, -1);
    for (std::size_t s = 0; s < n; ++s)
        if (rep_of[static_cast<std::size_t>(cls[s])] < 0) rep_of[static_cast<std::size_t>(cls[s])] = static_cast<int>(s);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int s = rep_of[static_cast<std::size_t>(queue[i])];
        for (int t : m.next[static_cast<std::size_t>(s)]) {
            if (t < 0) continue;
            int c = cls[static_cast<std::size_t>(t)];
            if (order[static_cast<std::size_t>(c)] < 0) {
                order[static_cast<std::size_t>(c)] = static_cast<int>(queue.size());
                queue.push_back(c);
            }
        }
    }
    MealyMachine out;
    out.player = m.player;
    out.initial = 0;
    for (int c : queue) {
        int s = rep_of[static_cast<std::size_t>(c)];
        if (m.player == Player::I) out.out_i.push_back(m.out_i[static_cast<std::size_t>(s)]);
        else out.out_ii.push_back(m.out_ii[static_cast<std::size_t>(s)]);
        std::vector<int> nx;
        for (int t : m.next[static_cast<std::size_t>(s)]) nx.push_back(t < 0 ? -1 : order[static_cast<std::size_t>(cls[static_cast<std::size_t>(t)])]);
        out.next.push_back(std::move(nx));
    }
    return out;
}

namespace {

struct RoundArena {
    ParityArena arena;
    std::vector<std::pair<int, int>> info;  // I-position: (q, prio); II-position: (q, a)
    std::vector<bool> is_i;
};

RoundArena build_arena(const RoundGame& g, const DPA& dpa)
{
    RoundArena ra;
    std::map<std::pair<int, int>, int> i_pos, ii_pos;
    auto get_i = [&](int q, int prio) {
        auto [it, fresh] = i_pos.emplace(std::make_pair(q, prio), static_cast<int>(ra.arena.size()));
        if (fresh) {
            ra.arena.add_position(0, prio);
            ra.info.emplace_back(q, prio);
            ra.is_i.push_back(true);
        }
        return std::make_pair(it->second, fresh);
    };
    std::vector<int> work{get_i(dpa.initial, 0).first};
    for (std::size_t w = 0; w < work.size(); ++w) {
        int v = work[w];
        int q = ra.info[static_cast<std::size_t>(v)].first;
        for (int a = 0; a < g.moves_i(); ++a) {
            auto [it, fresh] = ii_pos.emplace(std::make_pair(q, a), static_cast<int>(ra.arena.size()));
            if (fresh) {
                ra.arena.add_position(1, 0);
                ra.info.emplace_back(q, a);
                ra.is_i.push_back(false);
                for (int b = 0; b < g.moves_ii(a); ++b) {
                    int letter = g.emit[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                    int q2 = dpa.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(letter)];
                    int pr = dpa.priority[static_cast<std::size_t>(q)][static_cast<std::size_t>(letter)];
                    auto [target, fresh_i] = get_i(q2, pr);
                    ra.arena.add_edge(it->second, target);
                    if (fresh_i) work.push_back(target);
                }
            }
            ra.arena.add_edge(v, it->second);
        }
    }
    return ra;
}

}  // namespace

RoundGameSolution solve_round_game(const RoundGame& g, const DPA& dpa)
{
    if (g.moves_i() == 0) throw InvalidInput("Player I has no moves");
    for (int a = 0; a < g.moves_i(); ++a)
        if (g.moves_ii(a) == 0) throw InvalidInput("Player II has no answer to move " + std::to_string(a));
    RoundArena ra = build_arena(g, dpa);
    ParitySolution sol = solve_parity(ra.arena);
    RoundGameSolution out;
    out.arena_positions = ra.arena.size();
    out.winner = sol.winner[0] == 0 ? Player::I : Player::II;
    MealyMachine m;
    m.player = out.winner;
    // Machine states are the I-positions reached under the winner's strategy.
    std::map<int, int> state_of;
    std::vector<int> order{0};
    state_of[0] = 0;
    int max_b = 0;
    for (int a = 0; a < g.moves_i(); ++a) max_b = std::max(max_b, g.moves_ii(a));
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        auto add_state = [&](int pos) {
            auto [it, fresh] = state_of.emplace(pos, static_cast<int>(order.size()));
            if (fresh) order.push_back(pos);
            return it->second;
        };
        if (out.winner == Player::I) {
            int ii = sol.strategy[static_cast<std::size_t>(v)];
            int a = ra.info[static_cast<std::size_t>(ii)].second;
            m.out_i.push_back(a);
            std::vector<int> nx(static_cast<std::size_t>(max_b), -1);
            const auto& succ = ra.arena.succ[static_cast<std::size_t>(ii)];
            for (int b = 0; b < g.moves_ii(a); ++b) nx[static_cast<std::size_t>(b)] = add_state(succ[static_cast<std::size_t>(b)]);
            m.next.push_back(std::move(nx));
        } else {
            std::vector<int> outs, nx;
            const auto& succ_i = ra.arena.succ[static_cast<std::size_t>(v)];
            for (int a = 0; a < g.moves_i(); ++a) {
                int ii = succ_i[static_cast<std::size_t>(a)];
                int target = sol.strategy[static_cast<std::size_t>(ii)];
                const auto& succ = ra.arena.succ[static_cast<std::size_t>(ii)];
                int b = static_cast<int>(std::find(succ.begin(), succ.end(), target) - succ.begin());
                outs.push_back(b);
                nx.push_back(add_state(target));
            }
            m.out_ii.push_back(std::move(outs));
            m.next.push_back(std::move(nx));
        }
    }
    out.machine = minimize(m);
    return out;
}

bool model_check_strategy(const RoundGame& g, const DPA& dpa, const MealyMachine& m)
{
    // Product nodes (machine state, automaton state) with prioritized edges.
    struct Edge {
        int to;
        int prio;
    };
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> nodes;
    std::vector<std::vector<Edge>> edges;
    auto get = [&](int s, int q) {
        auto [it, fresh] = id.emplace(std::make_pair(s, q), static_cast<int>(nodes.size()));
        if (fresh) {
            nodes.emplace_back(s, q);
            edges.emplace_back();
        }
        return it->second;
    };
    get(m.initial, dpa.initial);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [s, q] = nodes[i];
        if (s < 0 || static_cast<std::size_t>(s) >= m.states()) return false;
        auto move = [&](int a, int b) {
            if (a < 0 || a >= g.moves_i() || b < 0 || b >= g.moves_ii(a)) return false;
            int letter = g.emit[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            int next = m.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(m.player == Player::I ? b : a)];
            int q2 = dpa.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(letter)];
            int pr = dpa.priority[static_cast<std::size_t>(q)][static_cast<std::size_t>(letter)];
            int t = get(next, q2);
            edges[i].push_back({t, pr});
            return true;
        };
        if (m.player == Player::I) {
            int a = m.out_i[static_cast<std::size_t>(s)];
            if (a < 0 || a >= g.moves_i()) return false;
            for (int b = 0; b < g.moves_ii(a); ++b)
                if (!move(a, b)) return false;
        } else {
            for (int a = 0; a < g.moves_i(); ++a)
                if (!move(a, m.out_ii[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])) return false;
        }
    }
    int bad = m.player == Player::I ? 1 : 0;
    // A losing cycle exists iff some edge x->y of bad priority p closes a
    // cycle through edges of priority <= p.
    for (std::size_t x = 0; x < nodes.size(); ++x)
        for (const Edge& e : edges[x]) {
            if (e.prio % 2 != bad) continue;
            std::vector<char> seen(nodes.size(), 0);
            std::vector<int> st{e.to};
            seen[static_cast<std::size_t>(e.to)] = 1;
            while (!st.empty()) {
                int v = st.back();
                st.pop_back();
                if (v == static_cast<int>(x)) return false;
                for (const Edge& f : edges[static_cast<std::size_t>(v)])
                    if (f.prio <= e.prio && !seen[static_cast<std::size_t>(f.to)]) {
                        seen[static_cast<std::size_t>(f.to)] = 1;
                        st.push_back(f.to);
                    }
            }
        }
    return true;
}

const DPA& ValueAutomata::get(const std::vector<bool>& win)
{
    auto it = cache_.find(win);
    if (it != cache_.end()) return *it->second;
    std::vector<std::uint32_t> label(win.begin(), win.end());
    Quotient q = congruence_quotient(s_, label);
    std::vector<bool> qwin(q.algebra.size());
    for (Elem c = 0; c < q.algebra.size(); ++c) qwin[c] = win[q.rep[c]];
    std::string key;
    for (Elem x : q.algebra.add_table()) key += std::to_string(x) + ",";
    key += ";";
    for (Elem x : q.algebra.omega_table()) key += std::to_string(x) + ",";
    key += ";";
    for (bool b : qwin) key += b ? '1' : '0';
    auto sit = by_quotient_.find(key);
    if (sit == by_quotient_.end())
        sit = by_quotient_.emplace(key, reduce(determinize(build_value_nba(q.algebra, qwin), max_states_))).first;
    const DPA& small = sit->second;
    auto d = std::make_unique<DPA>();
    d->alphabet = static_cast<int>(s_.size());
    d->initial = small.initial;
    d->max_priority = small.max_priority;
    d->delta.resize(small.states());
    d->priority.resize(small.states());
    for (std::size_t st = 0; st < small.states(); ++st)
        for (Elem x = 0; x < s_.size(); ++x) {
            d->delta[st].push_back(small.delta[st][q.cls[x]]);
            d->priority[st].push_back(small.priority[st][q.cls[x]]);
        }
    return *cache_.emplace(win, std::move(d)).first->second;
}

RoundGame mcnaughton_round(const std::vector<Elem>& letters)
{
    RoundGame g;
    g.emit.assign(2, std::vector<int>(2));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g.emit[a][b] = static_cast<int>(letters[letter_bits(a, b)]);
    return g;
}

RoundGameSolution solve_mcnaughton_omega(ValueAutomata& va, const std::vector<Elem>& letters, const std::vector<bool>& win)
{
    return solve_round_game(mcnaughton_round(letters), va.get(win));
}

RoundGame game_omega_round(const std::vector<std::vector<Elem>>& proposals)
{
    RoundGame g;
    for (const auto& set : proposals) {
        if (set.empty()) throw InvalidInput("Game_omega proposal must be nonempty");
        g.emit.emplace_back(set.begin(), set.end());
    }
    return g;
}

RoundGameSolution solve_game_omega(ValueAutomata& va, const std::vector<std::vector<Elem>>& proposals,
                                   const std::vector<bool>& win)
{
    if (proposals.empty()) throw InvalidInput("Game_omega needs a nonempty family");
    return solve_round_game(game_omega_round(proposals), va.get(win));
}

std::pair<std::vector<int>, std::vector<int>> play_lasso(const RoundGame& g, const MealyMachine& m,
                                                         const std::vector<int>& opp_prefix,
                                                         const std::vector<int>& opp_loop)
{
    if (opp_loop.empty()) throw InvalidInput("opponent loop must be nonempty");
    std::vector<int> letters;
    int s = m.initial;
    auto round = [&](int opp) {
        int a, b;
        if (m.player == Player::I) {
            a = m.out_i[static_cast<std::size_t>(s)];
            b = opp % g.moves_ii(a);
            s = m.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
        } else {
            a = opp % g.moves_i();
            b = m.out_ii[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
            s = m.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        }
        letters.push_back(g.emit[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    };
    for (int x : opp_prefix) round(x);
    std::map<int, std::size_t> seen;  // machine state at a loop start -> letter index
    for (;;) {
        auto it = seen.find(s);
        if (it != seen.end()) {
            std::vector<int> u(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(it->second));
            std::vector<int> v(letters.begin() + static_cast<std::ptrdiff_t>(it->second), letters.end());
            return {u, v};
        }
        seen.emplace(s, letters.size());
        for (int x : opp_loop) round(x);
    }
}

std::string dump(const MealyMachine& m)
{
    std::ostringstream os;
    os << "mealy player " << player_name(m.player) << " states " << m.states() << " initial " << m.initial << "\n";
    for (std::size_t s = 0; s < m.states(); ++s)
        for (std::size_t x = 0; x < m.next[s].size(); ++x) {
            if (m.next[s][x] < 0) continue;
            int out = m.player == Player::I ? m.out_i[s] : m.out_ii[s][x];
            os << "step " << s << " in " << x << " out " << out << " next " << m.next[s][x] << "\n";
        }
    return os.str();
}

}  // namespace church
