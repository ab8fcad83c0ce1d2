#include "doctest.h"

#include "church/finite_oracle.hpp"
#include "church/game_types.hpp"
#include "church/ordinal.hpp"

using namespace church;

TEST_CASE("game types are upward closed antichains")
{
    GameType t = GameType::generated_by({0b011, 0b001, 0b110});
    CHECK(t.minimal() == std::vector<WinSet>{0b001, 0b110});
    CHECK(t.contains(0b101));
    CHECK(t.contains(0b111));
    CHECK_FALSE(t.contains(0b010));
    CHECK(render_winset(0b101) == "{0,2}");
    CHECK(GameType::generated_by({}).empty());
}

TEST_CASE("winners of classic conditions")
{
    ChurchProblem copy(parse_formula("all1 t: (t in X1 <-> t in X2)"));
    ChurchProblem some(parse_formula("ex1 x: x in X1"));
    ChurchProblem has_max(parse_formula("ex1 x: all1 y: (y < x | y = x)"));
    for (const char* a : {"1", "4", "w", "w+1", "w^2*2+3", "w^w", "w^w+1"}) {
        OrdinalExpr o = parse_ordinal(a);
        CHECK(copy.decide(o) == Player::II);
        CHECK(some.decide(o) == Player::I);
        CHECK(has_max.decide(o) == (o.finite_part() > 0 ? Player::I : Player::II));
    }
}

TEST_CASE("finite winners agree with minimax")
{
    for (const char* text : {"ex1 x: ex1 y: (x < y & x in X2 & y in X2)", "all1 x: ex1 y: (x < y & y in X1)",
                             "ex1 x: (x in X2 & all1 y: (x < y -> y in X1))"}) {
        Formula f = parse_formula(text);
        ChurchProblem p(f);
        for (int k = 1; k <= 5; ++k)
            CHECK(p.decide(ordinal_finite(static_cast<std::uint64_t>(k))) ==
                  solve_finite_game(condition_of(f), k).winner);
    }
}

TEST_CASE("stabilization and atlas")
{
    ChurchProblem p(parse_formula("sing(X1)"));
    const Stabilization& st = p.stabilization();
    CHECK(st.idempotent_top);
    CHECK(st.powers.size() == st.info.m + 1);
    Atlas at = p.atlas();
    CHECK(!at.rows.empty());
    for (const AtlasRow& r : at.rows) CHECK(p.decide(ordinal_of_gcode(r.gcode, at.info)) == r.winner);
}

TEST_CASE("sums of game types")
{
    ChurchProblem p(parse_formula("ex1 x: x in X2"));
    GameAlgebra& ga = p.games();
    GameType one = ga.one();
    GameType two = ga.add(one, one);
    CHECK(two == ga.times(one, 2));
    CHECK(ga.add(two, one) == ga.add(one, two));
    CHECK(p.game_type(ordinal_finite(3)) == ga.times(one, 3));
}
