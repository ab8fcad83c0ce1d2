#include "doctest.h"

#include "church/automata.hpp"
#include "church/omega_game.hpp"

using namespace church;

namespace {

// Letters 0..3 by (a, b) bits; the algebra tracks whether a and b ever differed.
// Elements: 0 = equal so far, 1 = differed; omega keeps the value.
struct Copycat {
    Semigroup s{2, {0, 1, 1, 1}, {0, 1}};
    std::vector<Elem> letters{0, 1, 1, 0};
    std::vector<bool> win{false, true};  // I wins iff the bits differ somewhere
};

}  // namespace

TEST_CASE("copycat at w is won by II")
{
    Copycat c;
    ValueAutomata va(c.s);
    RoundGameSolution sol = solve_mcnaughton_omega(va, c.letters, c.win);
    CHECK(sol.winner == Player::II);
    RoundGame g = mcnaughton_round(c.letters);
    CHECK(model_check_strategy(g, va.get(c.win), sol.machine));
    auto [u, v] = play_lasso(g, sol.machine, {1, 0}, {1});
    for (int x : u) CHECK(x == 0);
    for (int x : v) CHECK(x == 0);
}

TEST_CASE("the complement is won by I")
{
    Copycat c;
    ValueAutomata va(c.s);
    std::vector<bool> lose{true, false};
    RoundGameSolution sol = solve_mcnaughton_omega(va, c.letters, lose);
    CHECK(sol.winner == Player::II);  // II can always differ
    std::vector<bool> all{true, true};
    CHECK(solve_mcnaughton_omega(va, c.letters, all).winner == Player::I);
}

TEST_CASE("a broken machine fails model checking")
{
    Copycat c;
    ValueAutomata va(c.s);
    RoundGameSolution sol = solve_mcnaughton_omega(va, c.letters, c.win);
    MealyMachine m = sol.machine;
    for (auto& row : m.out_ii)
        for (auto& o : row) o = 1 - o;
    CHECK_FALSE(model_check_strategy(mcnaughton_round(c.letters), va.get(c.win), m));
}

TEST_CASE("minimization keeps behaviour")
{
    MealyMachine m;
    m.player = Player::I;
    m.initial = 0;
    m.out_i = {1, 1};
    m.next = {{1, 1}, {0, 0}};
    MealyMachine k = minimize(m);
    CHECK(k.states() == 1);
    CHECK(k.respond(k.initial, 0) == 1);
}

TEST_CASE("meta game with proposals")
{
    Copycat c;
    ValueAutomata va(c.s);
    // I proposes {1}: every answer is "differed", so I wins.
    CHECK(solve_game_omega(va, {{1}}, c.win).winner == Player::I);
    CHECK(solve_game_omega(va, {{0, 1}}, c.win).winner == Player::II);
}
