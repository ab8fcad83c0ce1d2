#include "doctest.h"

#include "church/automata.hpp"
#include "church/semigroup.hpp"

using namespace church;

namespace {

// Lassos over n letters with |u| <= maxu and 1 <= |v| <= maxv.
template <class F>
void each_lasso(int n, int maxu, int maxv, F f)
{
    std::vector<std::vector<int>> words{{}};
    for (int len = 1; len <= std::max(maxu, maxv); ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : words)
            if (static_cast<int>(w.size()) == len - 1)
                for (int x = 0; x < n; ++x) {
                    auto w2 = w;
                    w2.push_back(x);
                    next.push_back(w2);
                }
        words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& u : words)
        for (const auto& v : words)
            if (static_cast<int>(u.size()) <= maxu && !v.empty() && static_cast<int>(v.size()) <= maxv) f(u, v);
}

}  // namespace

TEST_CASE("value automata agree with lasso values")
{
    Semigroup s(3, {0, 1, 2, 1, 0, 2, 2, 2, 2}, {2, 2, 2});
    Semigroup m(2, {0, 1, 1, 1}, {0, 1});
    for (const Semigroup* alg : {&s, &m}) {
        for (std::uint32_t mask = 0; mask < (1u << alg->size()); ++mask) {
            std::vector<bool> win(alg->size());
            for (std::size_t i = 0; i < win.size(); ++i) win[i] = (mask >> i) & 1;
            NBA nba = build_value_nba(*alg, win);
            DPA dpa = determinize(nba);
            DPA small = reduce(dpa);
            CHECK(small.states() <= dpa.states());
            each_lasso(static_cast<int>(alg->size()), 3, 3, [&](const std::vector<int>& u, const std::vector<int>& v) {
                std::vector<Elem> ue(u.begin(), u.end()), ve(v.begin(), v.end());
                bool want = win[lasso_value(*alg, ue, ve)];
                CHECK(nba_accepts_lasso(nba, u, v) == want);
                CHECK(dpa_accepts_lasso(dpa, u, v) == want);
                CHECK(dpa_accepts_lasso(small, u, v) == want);
            });
        }
    }
}

TEST_CASE("a deterministic automaton passes through determinization")
{
    NBA a;
    a.alphabet = 2;
    a.delta = {{{0}, {1}}, {{0}, {1}}};
    a.accepting = {false, true};
    DPA d = determinize(a);
    CHECK(d.states() == 2);
    CHECK(dpa_accepts_lasso(d, {}, {0, 1}));
    CHECK_FALSE(dpa_accepts_lasso(d, {1, 1}, {0}));
}

TEST_CASE("dumps")
{
    NBA a;
    a.alphabet = 1;
    a.delta = {{{0}}};
    a.accepting = {true};
    CHECK(dump(a).find("state 0") != std::string::npos);
    CHECK(dump(determinize(a)).find("edge 0 0 0") != std::string::npos);
}
