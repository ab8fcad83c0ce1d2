#include "doctest.h"

#include "church/errors.hpp"
#include "church/ordinal.hpp"
#include "church/strategy_io.hpp"
#include "church/synthesis.hpp"

using namespace church;

TEST_CASE("strategy documents round trip")
{
    ChurchProblem p(parse_formula("all1 x: (x in X2 -> ex1 y: (x < y & y in X1))"));
    for (const char* a : {"3", "w", "w*2+1", "w^2"}) {
        StrategyTree t = synthesize(p, parse_ordinal(a));
        nlohmann::json doc = strategy_to_json(t);
        StrategyTree back = strategy_from_json(doc);
        CHECK(strategy_to_json(back) == doc);
        CHECK(verify_strategy_tree(back, p).ok());
    }
}

TEST_CASE("win sets as lists")
{
    CHECK(winset_to_json(0b1010) == nlohmann::json::array({1, 3}));
    CHECK(winset_from_json(nlohmann::json::array({0, 2})) == 0b101);
}

TEST_CASE("malformed documents")
{
    CHECK_THROWS_AS(strategy_from_json(nlohmann::json::object()), InvalidInput);
    CHECK_THROWS_AS(strategy_from_json(nlohmann::json::parse(R"({"format":"church-strategy","version":1})")),
                    InvalidInput);
    CHECK_THROWS_AS(load_strategy("/nonexistent/strategy.json"), InvalidInput);
}
