#include "doctest.h"

#include "church/finite_oracle.hpp"
#include "church/ordinal.hpp"
#include "church/synthesis.hpp"

using namespace church;

TEST_CASE("synthesized trees verify")
{
    for (const char* text : {"ex1 x: x in X1", "all1 t: (t in X1 <-> t in X2)", "ex1 x: all1 y: (y < x | y = x)",
                             "all1 x: (x in X2 -> ex1 y: (x < y & y in X1))"}) {
        ChurchProblem p(parse_formula(text));
        for (const char* a : {"1", "3", "7", "w", "w+2", "w*2", "w^2+1"}) {
            OrdinalExpr o = parse_ordinal(a);
            StrategyTree t = synthesize(p, o);
            CHECK(t.winner == p.decide(o));
            VerifyReport r = verify_strategy_tree(t, p);
            INFO(text, " at ", a, "\n", r.text());
            CHECK(r.ok());
        }
    }
}

TEST_CASE("finite trees flatten to winning tables")
{
    Formula f = parse_formula("all1 x: (x in X2 -> ex1 y: (x < y & y in X1))");
    ChurchProblem p(f);
    SynthOptions opts;
    opts.max_leaf = 2;
    for (std::uint64_t k = 1; k <= 6; ++k) {
        StrategyTree t = synthesize(p, ordinal_finite(k), opts);
        FiniteStrategyTable table = flatten(t, p.games());
        CHECK(verify_finite_strategy(table, condition_of(f), static_cast<int>(k)));
    }
}

TEST_CASE("tampering is noticed")
{
    ChurchProblem p(parse_formula("ex1 x: x in X1"));
    StrategyTree t = synthesize(p, ordinal_finite(2));
    REQUIRE(t.root->kind == StrategyNode::Kind::Leaf);
    auto bad = std::make_shared<StrategyNode>(*t.root);
    for (auto& m : bad->table.moves) m = 0;
    t.root = bad;
    CHECK_FALSE(verify_strategy_tree(t, p).ok());
}

TEST_CASE("reduction past w^w")
{
    ChurchProblem p(parse_formula("ex1 x: all1 y: (y < x | y = x)"));
    Reduction r = reduce_to_omega_omega(p, parse_ordinal("w^w+w+2"));
    CHECK(r.beta == parse_ordinal("w+2"));
    CHECK(p.game_type(parse_ordinal("w^w")).contains(r.k) == (p.decide(parse_ordinal("w^w+w+2")) == Player::I));
    Formula g = winset_formula(p, p.winset());
    CHECK(g.valid());
}
