#include "doctest.h"

#include "church/finite_oracle.hpp"

using namespace church;

TEST_CASE("chains from words")
{
    FiniteChain m = FiniteChain::from_word({1, 2, 3}, 2);
    CHECK(m.k == 3);
    CHECK(m.preds[0] == 0b101);
    CHECK(m.preds[1] == 0b110);
    CHECK(m.letter_at(1) == 2);
}

TEST_CASE("evaluation of simple conditions")
{
    Formula has_max = parse_formula("ex1 x: all1 y: (y < x | y = x)");
    CHECK(eval_finite(has_max, FiniteChain::from_word({0, 0}, 0)));
    Formula order = parse_formula("ex1 x: ex1 y: (x < y & x in X1 & y in X2)");
    CHECK(eval_finite(order, FiniteChain::from_word({1, 2}, 2)));
    CHECK_FALSE(eval_finite(order, FiniteChain::from_word({2, 1}, 2)));
    CHECK_FALSE(eval_finite(order, FiniteChain::from_word({3}, 2)));
}

TEST_CASE("minimax winners")
{
    // I moves first in each round, so II can copy; I cannot.
    PlayCondition copy = condition_of(parse_formula("all1 t: (t in X1 <-> t in X2)"));
    for (int k = 1; k <= 4; ++k) {
        FiniteGameResult r = solve_finite_game(copy, k);
        CHECK(r.winner == Player::II);
        CHECK(verify_finite_strategy(r.strategy, copy, k));
    }
    PlayCondition some = condition_of(parse_formula("ex1 x: x in X1"));
    FiniteGameResult r = solve_finite_game(some, 3);
    CHECK(r.winner == Player::I);
    CHECK(verify_finite_strategy(r.strategy, some, 3));
}

TEST_CASE("a wrong table is rejected")
{
    PlayCondition some = condition_of(parse_formula("ex1 x: x in X1"));
    FiniteGameResult r = solve_finite_game(some, 2);
    FiniteStrategyTable t = r.strategy;
    for (auto& m : t.moves) m = 0;
    CHECK_FALSE(verify_finite_strategy(t, some, 2));
}

TEST_CASE("running a table")
{
    PlayCondition copy = condition_of(parse_formula("all1 t: (t in X1 <-> t in X2)"));
    FiniteGameResult r = solve_finite_game(copy, 3);
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
        Play p = run_table(r.strategy, bits);
        CHECK(p.length == 3);
        CHECK(p.x1 == bits);
        CHECK_FALSE(copy(p.x1, p.x2, 3));
    }
}

TEST_CASE("table sizes")
{
    CHECK(FiniteStrategyTable::table_size(Player::I, 1) == 1);
    CHECK(FiniteStrategyTable::table_size(Player::II, 1) == 2);
}
