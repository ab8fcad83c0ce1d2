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

#include "church/parity.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "church/errors.hpp"

namespace church {

int ParityArena::add_position(int own, int prio)
{
    owner.push_back(own);
    priority.push_back(prio);
    succ.emplace_back();
    return static_cast<int>(owner.size()) - 1;
}

std::string ParityArena::check() const
{
    for (std::size_t v = 0; v < size(); ++v)
        if (succ[v].empty()) return "position " + std::to_string(v) + " has no successor";
    return {};
}

namespace {

class Zielonka {
public:
    explicit Zielonka(const ParityArena& g) : g_(g), pred_(g.size())
    {
        for (std::size_t v = 0; v < g.size(); ++v)
            for (int w : g.succ[v]) pred_[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
    }

    // Returns winning regions (as membership flags) and fills strategy.
    void solve(std::vector<char> alive, std::vector<char>& w0, std::vector<char>& w1, std::vector<int>& strat)
    {
        const std::size_t n = g_.size();
        w0.assign(n, 0);
        w1.assign(n, 0);
        int top = -1;
        for (std::size_t v = 0; v < n; ++v)
            if (alive[v]) top = std::max(top, g_.priority[v]);
        if (top < 0) return;
        int p = top % 2;
        std::vector<char> target(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            if (alive[v] && g_.priority[v] == top) target[v] = 1;
        std::vector<char> a = attractor(alive, target, p, strat);
        // Player p stays in the target: any alive successor works.
        for (std::size_t v = 0; v < n; ++v)
            if (target[v] && g_.owner[v] == p) strat[v] = first_alive(v, alive);
        std::vector<char> rest(n, 0);
        for (std::size_t v = 0; v < n; ++v) rest[v] = alive[v] && !a[v];
        std::vector<char> r0, r1;
        solve(rest, r0, r1, strat);
        std::vector<char>& rp = p == 0 ? r0 : r1;
        std::vector<char>& ro = p == 0 ? r1 : r0;
        bool opp_empty = std::none_of(ro.begin(), ro.end(), [](char c) { return c; });
        if (opp_empty) {
            std::vector<char>& wp = p == 0 ? w0 : w1;
            for (std::size_t v = 0; v < n; ++v) wp[v] = alive[v];
            return;
        }
        std::vector<char> b = attractor(alive, ro, 1 - p, strat);
        std::vector<char> rest2(n, 0);
        for (std::size_t v = 0; v < n; ++v) rest2[v] = alive[v] && !b[v];
        std::vector<char> s0, s1;
        solve(rest2, s0, s1, strat);
        std::vector<char>& sp = p == 0 ? s0 : s1;
        std::vector<char>& so = p == 0 ? s1 : s0;
        std::vector<char>& wp = p == 0 ? w0 : w1;
        std::vector<char>& wo = p == 0 ? w1 : w0;
        for (std::size_t v = 0; v < n; ++v) {
            wp[v] = sp[v];
            wo[v] = so[v] || b[v];
        }
        (void)rp;
    }

private:
    int first_alive(std::size_t v, const std::vector<char>& alive) const
    {
        for (int w : g_.succ[v])
            if (alive[static_cast<std::size_t>(w)]) return w;
        throw InvalidInput("dead end in a subarena");
    }

    // Attractor for player p inside alive; sets strategy for attracted p-positions.
    std::vector<char> attractor(const std::vector<char>& alive, const std::vector<char>& target, int p,
                                std::vector<int>& strat) const
    {
        const std::size_t n = g_.size();
        std::vector<char> in(n, 0);
        std::vector<int> count(n, 0);
        std::vector<int> queue;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            for (int w : g_.succ[v])
                if (alive[static_cast<std::size_t>(w)]) ++count[v];
            if (target[v]) {
                in[v] = 1;
                queue.push_back(static_cast<int>(v));
            }
        }
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int w = queue[i];
            for (int v : pred_[static_cast<std::size_t>(w)]) {
                std::size_t vv = static_cast<std::size_t>(v);
                if (!alive[vv] || in[vv]) continue;
                if (g_.owner[vv] == p) {
                    in[vv] = 1;
                    strat[vv] = w;
                    queue.push_back(v);
                } else if (--count[vv] == 0) {
                    in[vv] = 1;
                    queue.push_back(v);
                }
            }
        }
        return in;
    }

    const ParityArena& g_;
    std::vector<std::vector<int>> pred_;
};

}  // namespace

ParitySolution solve_parity(const ParityArena& g)
{
    std::string bad = g.check();
    if (!bad.empty()) throw InvalidInput(bad);
    const std::size_t n = g.size();
    // Neighbouring priorities of equal parity can be merged.
    std::vector<int> used = g.priority;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<int, int> squeeze;
    int cur = used.empty() ? 0 : used[0] % 2;
    for (int p : used) {
        if (p % 2 != cur % 2) ++cur;
        squeeze[p] = cur;
    }
    ParityArena h = g;
    for (auto& p : h.priority) p = squeeze[p];
    std::vector<int> strat(n, -1);
    std::vector<char> w0, w1;
    Zielonka z(h);
    z.solve(std::vector<char>(n, 1), w0, w1, strat);
    ParitySolution sol;
    sol.winner.resize(n);
    sol.strategy.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        sol.winner[v] = w0[v] ? 0 : 1;
        if (g.owner[v] == sol.winner[v]) sol.strategy[v] = strat[v];
    }
    return sol;
}

namespace {

// Is there a cycle reachable from `from`, using edges allowed by `keep`, whose
// top priority has parity `bad`?
bool bad_cycle(const ParityArena& g, const std::vector<std::vector<int>>& edges, int from, int bad)
{
    const std::size_t n = g.size();
    std::vector<char> reach(n, 0);
    std::vector<int> st{from};
    reach[static_cast<std::size_t>(from)] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int w : edges[static_cast<std::size_t>(v)])
            if (!reach[static_cast<std::size_t>(w)]) { reach[static_cast<std::size_t>(w)] = 1; st.push_back(w); }
    }
    // For each reachable position v with bad parity priority p: a cycle through
    // v using only positions of priority <= p.
    for (std::size_t v = 0; v < n; ++v) {
        if (!reach[v] || g.priority[v] % 2 != bad) continue;
        int p = g.priority[v];
        std::vector<char> seen(n, 0);
        std::vector<int> s{static_cast<int>(v)};
        while (!s.empty()) {
            int x = s.back();
            s.pop_back();
            for (int w : edges[static_cast<std::size_t>(x)]) {
                if (g.priority[static_cast<std::size_t>(w)] > p) continue;
                if (w == static_cast<int>(v)) return true;
                if (!seen[static_cast<std::size_t>(w)]) { seen[static_cast<std::size_t>(w)] = 1; s.push_back(w); }
            }
        }
    }
    return false;
}

}  // namespace

bool strategy_wins_from(const ParityArena& g, const std::vector<int>& strategy, int player, int from)
{
    std::vector<std::vector<int>> edges(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.owner[v] == player) {
            int w = strategy[v];
            if (w < 0) {
                edges[v] = g.succ[v];  // outside the region: unconstrained
                continue;
            }
            edges[v] = {w};
        } else {
            edges[v] = g.succ[v];
        }
    }
    return !bad_cycle(g, edges, from, 1 - player);
}

std::vector<int> brute_force_winners(const ParityArena& g)
{
    const std::size_t n = g.size();
    std::vector<int> mine;
    for (std::size_t v = 0; v < n; ++v)
        if (g.owner[v] == 0) mine.push_back(static_cast<int>(v));
    std::vector<int> winner(n, 1);
    std::vector<std::size_t> choice(mine.size(), 0);
    std::vector<std::vector<int>> edges(n);
    for (;;) {
        for (std::size_t v = 0; v < n; ++v) edges[v] = g.succ[v];
        for (std::size_t i = 0; i < mine.size(); ++i) {
            std::size_t v = static_cast<std::size_t>(mine[i]);
            edges[v] = {g.succ[v][choice[i]]};
        }
        for (std::size_t v = 0; v < n; ++v)
            if (winner[v] == 1 && !bad_cycle(g, edges, static_cast<int>(v), 1)) winner[v] = 0;
        std::size_t i = 0;
        while (i < mine.size() && ++choice[i] == g.succ[static_cast<std::size_t>(mine[i])].size()) choice[i++] = 0;
        if (i == mine.size()) break;
    }
    return winner;
}

std::string dump(const ParityArena& g)
{
    std::ostringstream os;
    os << "arena positions " << g.size() << " initial " << g.initial << "\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
        os << "pos " << v << " owner " << g.owner[v] << " priority " << g.priority[v] << "\n";
        for (int w : g.succ[v]) os << "edge " << v << ' ' << w << "\n";
    }
    return os.str();
}

}  // namespace church
