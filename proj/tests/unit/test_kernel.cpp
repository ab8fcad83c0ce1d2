#include "doctest.h"

#include "church/errors.hpp"
#include "church/finite_oracle.hpp"
#include "church/kernel.hpp"
#include "words.hpp"

using namespace church;

namespace {

const char* kConditions[] = {
    "ex1 x: x in X1",
    "all1 x: (x in X2 -> ex1 y: (x < y & y in X1))",
    "ex1 x: ex1 y: (x < y & x in X1 & y in X2)",
    "X1 sub X2",
    "sing(X2) | empty(X1)",
    "all1 t: (t in X1 <-> t in X2)",
    "ex2 Y: (sing(Y) & Y sub X1 & all1 x: (x in Y -> ~x in X2))",
};

}  // namespace

TEST_CASE("kernel translation preserves truth")
{
    for (const char* text : kConditions) {
        Formula f = parse_formula(text);
        Kernel k = game_kernel(f);
        Formula back = kernel_to_formula(k.body, {"X1", "X2"});
        for (int len = 1; len <= 4; ++len)
            for (const auto& w : all_words(len)) {
                FiniteChain m = FiniteChain::from_word(w, 2);
                bool v = eval_finite(f, m);
                CHECK(eval_finite(k, m) == v);
                CHECK(eval_finite(back, m) == v);
            }
    }
}

TEST_CASE("kernel depth")
{
    CHECK(game_kernel(parse_formula("X1 sub X2")).depth() == 0);
    CHECK(game_kernel(parse_formula("ex1 x: x in X1")).depth() == 1);
    CHECK(game_kernel(parse_formula("ex1 x: ex1 y: (x < y & y in X1)")).depth() == 2);
}

TEST_CASE("unexpected free variables are rejected")
{
    CHECK_THROWS_AS(game_kernel(parse_formula("X3 sub X1")), InvalidInput);
    CHECK_THROWS_AS(sentence_kernel(parse_formula("empty(X1)")), InvalidInput);
    CHECK_THROWS_AS(to_kernel(parse_formula("x in X1", {true}), {"X1"}), InvalidInput);
}

TEST_CASE("kernel rendering")
{
    Kernel k = game_kernel(parse_formula("X1 sub X2"));
    CHECK(render_kernel(k.body, 2) == "Sub(X1,X2)");
    CHECK(kernel_size(k.body) == 1);
}
