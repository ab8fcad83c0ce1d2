#include "doctest.h"

#include "church/errors.hpp"
#include "church/finite_oracle.hpp"
#include "church/formula.hpp"

using namespace church;

TEST_CASE("render then parse gives the same formula")
{
    const char* texts[] = {
        "ex1 x: x in X1",
        "all1 x: (x in X2 -> ex1 y: (x < y & y in X1))",
        "~X2 sub X1",
        "(ex1 x: x in X1) <-> (ex1 y: y in X2)",
        "ex2 Y: (sing(Y) & Y sub X1 & all1 x: (x in Y -> ~x in X2))",
        "all2 Z: (empty(Z) | ~empty(Z))",
        "true & ~false",
    };
    for (const char* t : texts) {
        Formula f = parse_formula(t);
        CHECK(parse_formula(render(f)) == f);
        Formula g = parse_formula(render(f, {true}));
        CHECK(render(g, {true}) == render(f, {true}));
    }
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse_formula("ex1 x:"), ParseError);
    CHECK_THROWS_AS(parse_formula("x in X1"), ParseError);  // free first-order variable
    CHECK_THROWS_AS(parse_formula("X1 in X2"), ParseError);
    CHECK_THROWS_AS(parse_formula("ex1 x: (x in X1"), ParseError);
    CHECK_NOTHROW(parse_formula("x in X1", {true}));
}

TEST_CASE("depth, size and free variables")
{
    Formula f = parse_formula("all1 x: (x in X2 -> ex1 y: (x < y & y in X1))");
    CHECK(quantifier_depth(f) == 2);
    FreeVars fv = free_variables(f);
    CHECK(fv.first_order.empty());
    CHECK(fv.sets == std::set<std::string>{"X1", "X2"});
    CHECK(formula_size(parse_formula("x in X1", {true})) == 1);
}

TEST_CASE("normalize separates bound names")
{
    Formula f = parse_formula("(ex1 x: x in X1) & (ex1 x: x in X2)");
    Formula g = normalize(f);
    REQUIRE(g.op() == Op::And);
    CHECK(g.kid(0).var1() != g.kid(1).var1());
    FiniteChain m = FiniteChain::from_word({1, 2, 0}, 2);
    CHECK(eval_finite(f, m) == eval_finite(g, m));
}

TEST_CASE("relativization below and above a pivot")
{
    Formula f = parse_formula("ex1 x: x in X1");
    Formula below = relativize(f, RelMode::Below, "p");
    Formula above = relativize(f, RelMode::AtOrAbove, "p");
    CHECK(quantifier_depth(below) <= quantifier_depth(f) + 2);
    // X1 = {0} on a chain of length 3, pivot at position 1.
    for (int pivot = 0; pivot < 3; ++pivot) {
        Formula pb = Formula::quantifier(
            Op::Exists1, "p", Formula::conj({templates::has_predecessors("p", pivot), below}));
        Formula pa = Formula::quantifier(
            Op::Exists1, "p", Formula::conj({templates::has_predecessors("p", pivot), above}));
        FiniteChain m = FiniteChain::from_word({1, 0, 0}, 2);
        CHECK(eval_finite(pb, m) == (pivot > 0));
        CHECK(eval_finite(pa, m) == (pivot == 0));
    }
}

TEST_CASE("templates on finite chains")
{
    for (int k = 1; k <= 5; ++k) {
        FiniteChain m = FiniteChain::from_word(std::vector<std::uint32_t>(static_cast<std::size_t>(k), 0), 2);
        for (int j = 1; j <= 5; ++j) CHECK(eval_finite(templates::exactly(j), m) == (j == k));
    }
    FiniteChain m = FiniteChain::from_word({1, 0, 1, 1}, 2);
    for (int j = 0; j <= 4; ++j)
        CHECK(eval_finite(templates::set_has_size("X1", j), m) == (j == 3));
}
