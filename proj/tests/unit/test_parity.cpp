#include "doctest.h"

#include <random>

#include "church/errors.hpp"
#include "church/parity.hpp"

using namespace church;

TEST_CASE("single positions")
{
    for (int p = 0; p < 4; ++p) {
        ParityArena g;
        g.add_position(p % 2, p);
        g.add_edge(0, 0);
        ParitySolution s = solve_parity(g);
        CHECK(s.winner[0] == p % 2);
    }
}

TEST_CASE("random arenas against brute force")
{
    std::mt19937 rng(7);
    for (int round = 0; round < 300; ++round) {
        int n = 1 + static_cast<int>(rng() % 5);
        ParityArena g;
        for (int v = 0; v < n; ++v) g.add_position(static_cast<int>(rng() % 2), static_cast<int>(rng() % 5));
        for (int v = 0; v < n; ++v) {
            g.add_edge(v, static_cast<int>(rng() % static_cast<unsigned>(n)));
            for (int w = 0; w < n; ++w)
                if (rng() % 3 == 0) g.add_edge(v, w);
        }
        ParitySolution s = solve_parity(g);
        std::vector<int> bf = brute_force_winners(g);
        CHECK(s.winner == bf);
        for (int v = 0; v < n; ++v) CHECK(strategy_wins_from(g, s.strategy, s.winner[static_cast<std::size_t>(v)], v));
    }
}

TEST_CASE("dead ends are rejected")
{
    ParityArena g;
    g.add_position(0, 0);
    CHECK_FALSE(g.check().empty());
    CHECK_THROWS_AS(solve_parity(g), InvalidInput);
}
