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

#include "church/automata.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "church/errors.hpp"

namespace church {

NBA build_value_nba(const Semigroup& s, const std::vector<bool>& win)
{
    const int n = static_cast<int>(s.size());
    if (static_cast<int>(win.size()) != n) throw InvalidInput("win set size mismatch");
    // Prefix states: 0 = nothing read, 1 + p = partial sum p.
    // Block states for idempotent e: block partial sum b, with b = -1 the cut.
    std::vector<int> idem;
    for (int e = 0; e < n; ++e)
        if (s.idempotent(static_cast<Elem>(e))) idem.push_back(e);
    auto block = [&](std::size_t ei, int b) { return 1 + n + static_cast<int>(ei) * (n + 1) + (b + 1); };
    int total = 1 + n + static_cast<int>(idem.size()) * (n + 1);

    NBA raw;
    raw.alphabet = n;
    raw.initial = 0;
    raw.delta.assign(static_cast<std::size_t>(total), std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
    raw.accepting.assign(static_cast<std::size_t>(total), false);
    for (int x = 0; x < n; ++x) {
        for (int p = -1; p < n; ++p) {
            int from = p < 0 ? 0 : 1 + p;
            int sum = p < 0 ? x : static_cast<int>(s.add(static_cast<Elem>(p), static_cast<Elem>(x)));
            auto& out = raw.delta[from][x];
            out.push_back(1 + sum);
            for (std::size_t ei = 0; ei < idem.size(); ++ei)
                if (win[s.add(static_cast<Elem>(sum), s.omega(static_cast<Elem>(idem[ei])))]) out.push_back(block(ei, -1));
        }
        for (std::size_t ei = 0; ei < idem.size(); ++ei) {
            int e = idem[ei];
            for (int b = -1; b < n; ++b) {
                int sum = b < 0 ? x : static_cast<int>(s.add(static_cast<Elem>(b), static_cast<Elem>(x)));
                auto& out = raw.delta[block(ei, b)][x];
                out.push_back(block(ei, sum));
                if (sum == e) out.push_back(block(ei, -1));
            }
        }
    }
    for (std::size_t ei = 0; ei < idem.size(); ++ei) raw.accepting[block(ei, -1)] = true;

    // Keep the reachable part.
    std::vector<int> id(static_cast<std::size_t>(total), -1);
    std::vector<int> order{0};
    id[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& targets : raw.delta[order[i]])
            for (int t : targets)
                if (id[t] < 0) {
                    id[t] = static_cast<int>(order.size());
                    order.push_back(t);
                }
    NBA a;
    a.alphabet = n;
    a.initial = 0;
    a.delta.resize(order.size());
    a.accepting.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a.accepting[i] = raw.accepting[order[i]];
        a.delta[i].resize(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            for (int t : raw.delta[order[i]][x]) a.delta[i][x].push_back(id[t]);
            std::sort(a.delta[i][x].begin(), a.delta[i][x].end());
        }
    }
    return a;
}

bool nba_accepts_lasso(const NBA& a, const std::vector<int>& u, const std::vector<int>& v)
{
    if (v.empty()) throw InvalidInput("lasso loop must be nonempty");
    const std::size_t len = u.size() + v.size();
    const std::size_t nq = a.states();
    auto letter = [&](std::size_t pos) { return pos < u.size() ? u[pos] : v[pos - u.size()]; };
    auto next_pos = [&](std::size_t pos) { return pos + 1 < len ? pos + 1 : u.size(); };
    auto node = [&](std::size_t q, std::size_t pos) { return q * len + pos; };
    std::vector<char> reach(nq * len, 0);
    std::vector<std::size_t> stack{node(static_cast<std::size_t>(a.initial), 0)};
    reach[stack[0]] = 1;
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        std::size_t q = cur / len, pos = cur % len;
        for (int t : a.delta[q][letter(pos)]) {
            std::size_t nx = node(static_cast<std::size_t>(t), next_pos(pos));
            if (!reach[nx]) { reach[nx] = 1; stack.push_back(nx); }
        }
    }
    for (std::size_t q = 0; q < nq; ++q) {
        if (!a.accepting[q]) continue;
        for (std::size_t pos = u.size(); pos < len; ++pos) {
            std::size_t start = node(q, pos);
            if (!reach[start]) continue;
            std::vector<char> seen(nq * len, 0);
            std::vector<std::size_t> st{start};
            while (!st.empty()) {
                std::size_t cur = st.back();
                st.pop_back();
                std::size_t cq = cur / len, cp = cur % len;
                for (int t : a.delta[cq][letter(cp)]) {
                    std::size_t nx = node(static_cast<std::size_t>(t), next_pos(cp));
                    if (nx == start) return true;
                    if (!seen[nx]) { seen[nx] = 1; st.push_back(nx); }
                }
            }
        }
    }
    return false;
}

bool dpa_accepts_lasso(const DPA& a, const std::vector<int>& u, const std::vector<int>& v)
{
    if (v.empty()) throw InvalidInput("lasso loop must be nonempty");
    int q = a.initial;
    for (int x : u) q = a.delta[q][x];
    std::map<int, std::size_t> first;
    std::vector<int> best_of_iteration;
    for (;;) {
        auto it = first.find(q);
        if (it != first.end()) {
            int best = 0;
            for (std::size_t i = it->second; i < best_of_iteration.size(); ++i) best = std::max(best, best_of_iteration[i]);
            return best % 2 == 0;
        }
        first.emplace(q, best_of_iteration.size());
        int best = 0;
        for (int x : v) {
            best = std::max(best, a.priority[q][x]);
            q = a.delta[q][x];
        }
        best_of_iteration.push_back(best);
    }
}

// ---------------------------------------------------------------------------
// Determinization

namespace {

template <std::size_t W>
using Bits = std::array<std::uint64_t, W>;

template <std::size_t W>
bool bits_empty(const Bits<W>& b)
{
    for (auto w : b)
        if (w) return false;
    return true;
}

template <std::size_t W>
struct SafraTree {
    std::vector<int> parent;  // by name - 1; root has -1
    std::vector<Bits<W>> label;

    std::string key() const
    {
        std::string k;
        k.reserve(parent.size() * (sizeof(int) + 8 * W));
        for (std::size_t i = 0; i < parent.size(); ++i) {
            k.append(reinterpret_cast<const char*>(&parent[i]), sizeof(int));
            k.append(reinterpret_cast<const char*>(label[i].data()), 8 * W);
        }
        return k;
    }
};

template <std::size_t W>
class Safra {
public:
    using B = Bits<W>;

    explicit Safra(const NBA& a) : a_(a), post_(a.states() * static_cast<std::size_t>(a.alphabet))
    {
        acc_.fill(0);
        for (std::size_t q = 0; q < a.states(); ++q) {
            if (a.accepting[q]) acc_[q / 64] |= std::uint64_t(1) << (q % 64);
            for (int x = 0; x < a.alphabet; ++x) {
                B& b = post_[q * static_cast<std::size_t>(a.alphabet) + static_cast<std::size_t>(x)];
                b.fill(0);
                for (int t : a.delta[q][static_cast<std::size_t>(x)]) b[static_cast<std::size_t>(t) / 64] |= std::uint64_t(1) << (t % 64);
            }
        }
    }

    SafraTree<W> initial() const
    {
        SafraTree<W> t;
        t.parent.push_back(-1);
        B b{};
        b[static_cast<std::size_t>(a_.initial) / 64] |= std::uint64_t(1) << (a_.initial % 64);
        t.label.push_back(b);
        return t;
    }

    // Returns the successor and the min-parity priority in 1..2n+1.
    std::pair<SafraTree<W>, int> step(const SafraTree<W>& t, int letter)
    {
        const int n = static_cast<int>(a_.states());
        const int none = 2 * n + 1;
        const std::size_t k = t.parent.size();
        if (k == 0) return {t, none};
        nodes_.clear();
        for (std::size_t i = 0; i < k; ++i) nodes_.push_back({static_cast<int>(i) + 1, t.parent[i], post(t.label[i], letter), {}, false, false});
        for (std::size_t i = 0; i < k; ++i) {
            B f;
            bool any = false;
            for (std::size_t w = 0; w < W; ++w) {
                f[w] = nodes_[i].label[w] & acc_[w];
                any |= f[w] != 0;
            }
            if (any) nodes_.push_back({0, static_cast<int>(i), f, {}, false, false});
        }
        for (std::size_t i = 1; i < nodes_.size(); ++i) nodes_[static_cast<std::size_t>(nodes_[i].parent)].kids.push_back(static_cast<int>(i));

        // Horizontal merge: a state stays only in the oldest branch holding it.
        horizontal(0, B{});

        for (auto& nd : nodes_)
            if (bits_empty<W>(nd.label)) nd.removed = true;
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            Node& nd = nodes_[v];
            if (nd.removed) continue;
            B uni{};
            bool has = false;
            for (int c : nd.kids) {
                if (nodes_[static_cast<std::size_t>(c)].removed) continue;
                has = true;
                for (std::size_t w = 0; w < W; ++w) uni[w] |= nodes_[static_cast<std::size_t>(c)].label[w];
            }
            if (has && uni == nd.label) {
                nd.green = true;
                remove_subtree(static_cast<int>(v));
            }
        }
        int green = none, removed = none;
        for (const auto& nd : nodes_) {
            if (nd.old_name == 0) continue;
            if (nd.removed) removed = std::min(removed, nd.old_name);
            if (nd.green && !nd.removed) green = std::min(green, nd.old_name);
        }
        int prio = none;
        if (green < removed) prio = 2 * green;
        else if (removed < none) prio = 2 * removed - 1;

        SafraTree<W> out;
        name_.assign(nodes_.size(), -1);
        // Parents precede children in index order, so compaction keeps parents first.
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            if (nodes_[v].removed) continue;
            name_[v] = static_cast<int>(out.parent.size());
            out.parent.push_back(nodes_[v].parent < 0 ? -1 : name_[static_cast<std::size_t>(nodes_[v].parent)]);
            out.label.push_back(nodes_[v].label);
        }
        if (static_cast<int>(out.parent.size()) > n) throw InvalidInput("Safra tree exceeded its node bound");
        return {std::move(out), prio};
    }

private:
    struct Node {
        int old_name;  // 0 for nodes created in this step
        int parent;
        B label;
        std::vector<int> kids;
        bool removed;
        bool green;
    };

    void horizontal(int v, const B& blocked)
    {
        Node& nd = nodes_[static_cast<std::size_t>(v)];
        for (std::size_t w = 0; w < W; ++w) nd.label[w] &= ~blocked[w];
        B acc = blocked;
        for (std::size_t i = 0; i < nodes_[static_cast<std::size_t>(v)].kids.size(); ++i) {
            int c = nodes_[static_cast<std::size_t>(v)].kids[i];
            horizontal(c, acc);
            for (std::size_t w = 0; w < W; ++w) acc[w] |= nodes_[static_cast<std::size_t>(c)].label[w];
        }
    }

    void remove_subtree(int v)
    {
        for (int c : nodes_[static_cast<std::size_t>(v)].kids) {
            nodes_[static_cast<std::size_t>(c)].removed = true;
            remove_subtree(c);
        }
    }

    B post(const B& s, int letter) const
    {
        B out{};
        for (std::size_t w = 0; w < W; ++w)
            for (std::uint64_t m = s[w]; m; m &= m - 1) {
                std::size_t q = 64 * w + static_cast<std::size_t>(std::countr_zero(m));
                const B& p = post_[q * static_cast<std::size_t>(a_.alphabet) + static_cast<std::size_t>(letter)];
                for (std::size_t u = 0; u < W; ++u) out[u] |= p[u];
            }
        return out;
    }

    const NBA& a_;
    B acc_;
    std::vector<B> post_;
    std::vector<Node> nodes_;
    std::vector<int> name_;
};

template <std::size_t W>
DPA safra_determinize(const NBA& a, std::size_t max_states)
{
    DPA d;
    d.alphabet = a.alphabet;
    d.initial = 0;
    Safra<W> safra(a);
    const int top = 2 * static_cast<int>(a.states()) + 2;  // even, turns min-parity into max-parity
    std::unordered_map<std::string, int> index;
    std::vector<SafraTree<W>> trees{safra.initial()};
    index.emplace(trees[0].key(), 0);
    for (std::size_t i = 0; i < trees.size(); ++i) {
        d.delta.emplace_back(a.alphabet);
        d.priority.emplace_back(a.alphabet);
        for (int x = 0; x < a.alphabet; ++x) {
            auto [next, prio] = safra.step(trees[i], x);
            auto [it, fresh] = index.emplace(next.key(), static_cast<int>(trees.size()));
            if (fresh) {
                if (trees.size() >= max_states)
                    throw ResourceLimit("determinization exceeded " + std::to_string(max_states) + " states");
                trees.push_back(std::move(next));
            }
            d.delta[i][static_cast<std::size_t>(x)] = it->second;
            d.priority[i][static_cast<std::size_t>(x)] = top - prio;
            d.max_priority = std::max(d.max_priority, top - prio);
        }
    }
    return d;
}

}  // namespace

DPA determinize(const NBA& a, std::size_t max_states)
{
    DPA d;
    d.alphabet = a.alphabet;
    d.initial = 0;
    if (a.states() == 0) throw InvalidInput("automaton without states");
    // A deterministic automaton passes through: priority 2 entering an accepting state.
    bool deterministic = std::all_of(a.delta.begin(), a.delta.end(), [](const auto& row) {
        return std::all_of(row.begin(), row.end(), [](const auto& ts) { return ts.size() == 1; });
    });
    if (deterministic) {
        d.initial = a.initial;
        d.delta.resize(a.states());
        d.priority.resize(a.states());
        for (std::size_t q = 0; q < a.states(); ++q)
            for (int x = 0; x < a.alphabet; ++x) {
                int t = a.delta[q][static_cast<std::size_t>(x)][0];
                d.delta[q].push_back(t);
                d.priority[q].push_back(a.accepting[static_cast<std::size_t>(t)] ? 2 : 1);
            }
        d.max_priority = 2;
        return d;
    }
    const std::size_t n = a.states();
    if (n <= 64) return safra_determinize<1>(a, max_states);
    if (n <= 128) return safra_determinize<2>(a, max_states);
    if (n <= 256) return safra_determinize<4>(a, max_states);
    if (n <= 512) return safra_determinize<8>(a, max_states);
    throw ResourceLimit("automaton with " + std::to_string(n) + " states is too large to determinize");
}

DPA reduce(const DPA& a)
{
    const std::size_t n = a.states();
    const int sigma = a.alphabet;
    // Tarjan's SCCs, iteratively.
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stack;
    std::vector<char> on(n, 0);
    int counter = 0, comps = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (num[root] >= 0) continue;
        std::vector<std::pair<int, int>> call{{static_cast<int>(root), 0}};
        num[root] = low[root] = counter++;
        stack.push_back(static_cast<int>(root));
        on[root] = 1;
        while (!call.empty()) {
            auto& [v, x] = call.back();
            const std::size_t vv = static_cast<std::size_t>(v);
            if (x < sigma) {
                const int w = a.delta[vv][static_cast<std::size_t>(x++)];
                const std::size_t ww = static_cast<std::size_t>(w);
                if (num[ww] < 0) {
                    num[ww] = low[ww] = counter++;
                    stack.push_back(w);
                    on[ww] = 1;
                    call.emplace_back(w, 0);
                } else if (on[ww]) {
                    low[vv] = std::min(low[vv], num[ww]);
                }
                continue;
            }
            if (low[vv] == num[vv]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = comps;
                } while (w != v);
                ++comps;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) {
                const std::size_t pv = static_cast<std::size_t>(call.back().first);
                low[pv] = std::min(low[pv], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    // Transitions leaving an SCC are taken finitely often; their priority is irrelevant.
    std::vector<std::vector<int>> prio = a.priority;
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t x = 0; x < static_cast<std::size_t>(sigma); ++x)
            if (comp[q] != comp[static_cast<std::size_t>(a.delta[q][x])]) prio[q][x] = 0;

    // Coarsest partition where merged states agree on every transition's
    // priority and target block.
    std::vector<int> block(n, 0);
    std::size_t blocks = 1;
    for (;;) {
        std::map<std::vector<int>, int> sig;
        std::vector<int> next(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<int> key{block[q]};
            for (std::size_t x = 0; x < static_cast<std::size_t>(sigma); ++x) {
                key.push_back(prio[q][x]);
                key.push_back(block[static_cast<std::size_t>(a.delta[q][x])]);
            }
            next[q] = sig.emplace(std::move(key), static_cast<int>(sig.size())).first->second;
        }
        block = std::move(next);
        if (sig.size() == blocks) break;
        blocks = sig.size();
    }
    // Renumber blocks in breadth-first order from the initial state.
    std::vector<int> rep(blocks, -1), id(blocks, -1), order;
    for (std::size_t q = 0; q < n; ++q)
        if (rep[static_cast<std::size_t>(block[q])] < 0) rep[static_cast<std::size_t>(block[q])] = static_cast<int>(q);
    DPA r;
    r.alphabet = sigma;
    r.initial = 0;
    id[static_cast<std::size_t>(block[static_cast<std::size_t>(a.initial)])] = 0;
    order.push_back(block[static_cast<std::size_t>(a.initial)]);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t q = static_cast<std::size_t>(rep[static_cast<std::size_t>(order[i])]);
        std::vector<int> row, prow;
        for (std::size_t x = 0; x < static_cast<std::size_t>(sigma); ++x) {
            const std::size_t b = static_cast<std::size_t>(block[static_cast<std::size_t>(a.delta[q][x])]);
            if (id[b] < 0) {
                id[b] = static_cast<int>(order.size());
                order.push_back(static_cast<int>(b));
            }
            row.push_back(id[b]);
            prow.push_back(prio[q][x]);
            r.max_priority = std::max(r.max_priority, prio[q][x]);
        }
        r.delta.push_back(std::move(row));
        r.priority.push_back(std::move(prow));
    }
    return r;
}

std::string dump(const NBA& a)
{
    std::ostringstream os;
    os << "nba states " << a.states() << " alphabet " << a.alphabet << " initial " << a.initial << "\n";
    for (std::size_t q = 0; q < a.states(); ++q) {
        os << "state " << q << (a.accepting[q] ? " acc" : "") << "\n";
        for (int x = 0; x < a.alphabet; ++x)
            for (int t : a.delta[q][x]) os << "edge " << q << ' ' << x << ' ' << t << "\n";
    }
    return os.str();
}

std::string dump(const DPA& a)
{
    std::ostringstream os;
    os << "dpa states " << a.states() << " alphabet " << a.alphabet << " initial " << a.initial << " max-priority "
       << a.max_priority << "\n";
    for (std::size_t q = 0; q < a.states(); ++q)
        for (int x = 0; x < a.alphabet; ++x)
            os << "edge " << q << ' ' << x << ' ' << a.delta[q][x] << ' ' << a.priority[q][x] << "\n";
    return os.str();
}

}  // namespace church
