#include "doctest.h"

#include "church/algebra.hpp"
#include "church/emit.hpp"
#include "church/finite_oracle.hpp"
#include "church/ordinal.hpp"
#include "church/synthesis.hpp"

using namespace church;

TEST_CASE("emitted finite strategies satisfy the win sentence")
{
    for (const char* text : {"ex1 x: x in X1", "all1 t: (t in X1 <-> t in X2)"}) {
        Formula phi = parse_formula(text);
        ChurchProblem p(phi);
        for (std::uint64_t k = 1; k <= 3; ++k) {
            StrategyTree t = synthesize(p, ordinal_finite(k));
            Formula psi = emit_strategy_formula(t, p);
            WinSentences ws = win_sentences(phi, psi, t.winner);
            FiniteChain chain = FiniteChain::from_word(std::vector<std::uint32_t>(k, 0), 0);
            CHECK(eval_finite(ws.win, chain));
        }
    }
}

TEST_CASE("a wrong strategy formula fails")
{
    Formula phi = parse_formula("ex1 x: x in X1");
    Formula never = parse_formula("all1 t: ~t in X1");
    WinSentences ws = win_sentences(phi, never, Player::I);
    FiniteChain chain = FiniteChain::from_word({0, 0}, 0);
    CHECK(eval_finite(ws.total, chain));
    CHECK(eval_finite(ws.unique, chain));
    CHECK_FALSE(eval_finite(ws.correct, chain));
}

TEST_CASE("search finds simple strategies")
{
    SearchResult r = search_definable_strategy(parse_formula("ex1 x: x in X1"), code_of(parse_ordinal("w+1")));
    CHECK(r.found);
    CHECK(r.player == Player::I);
    SearchResult c = search_definable_strategy(parse_formula("all1 t: (t in X1 <-> t in X2)"),
                                               code_of(ordinal_finite(3)));
    CHECK(c.found);
    CHECK(c.player == Player::II);
    FiniteChain chain = FiniteChain::from_word({0, 0, 0}, 0);
    CHECK(eval_finite(win_sentences(parse_formula("all1 t: (t in X1 <-> t in X2)"), c.psi, Player::II).win, chain));
}

TEST_CASE("candidate bodies are distinct")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<Formula> bodies = candidate_bodies(n);
        CHECK(!bodies.empty());
        std::set<std::string> seen;
        for (const auto& b : bodies) CHECK(seen.insert(render(b)).second);
    }
}

TEST_CASE("game code sentences on finite chains")
{
    ChurchProblem p(parse_formula("sing(X1)"));
    Atlas at = p.atlas();
    for (const AtlasRow& row : at.rows) {
        Formula s = gcode_sentence(row.gcode, at.info);
        for (std::uint64_t k = 1; k <= 6; ++k) {
            FiniteChain chain = FiniteChain::from_word(std::vector<std::uint32_t>(k, 0), 0);
            CHECK(eval_finite(s, chain) == (gcode_of(ordinal_finite(k), at.info) == row.gcode));
        }
    }
    Formula win = win_phi_sentence(at);
    for (std::uint64_t k = 1; k <= 6; ++k)
        CHECK(eval_finite(win, FiniteChain::from_word(std::vector<std::uint32_t>(k, 0), 0)) ==
              (p.decide(ordinal_finite(k)) == Player::I));
}
