#include "doctest.h"

#include "church/finite_oracle.hpp"
#include "church/kernel.hpp"
#include "church/ordinal.hpp"
#include "church/types.hpp"
#include "words.hpp"

using namespace church;

TEST_CASE("depth-0 sums are associative on letters")
{
    std::vector<Depth0> xs;
    for (std::uint32_t b = 0; b < 4; ++b) xs.push_back(Depth0::letter(2, b));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) xs.push_back(add0(xs[i], xs[j]));
    for (const auto& a : xs)
        for (const auto& b : xs)
            for (const auto& c : xs) CHECK(add0(add0(a, b), c) == add0(a, add0(b, c)));
    for (const auto& a : xs) CHECK(a.consistent());
}

TEST_CASE("types evaluate formulas like the chains they come from")
{
    TypeTable tt;
    Kernel k = game_kernel(parse_formula("ex1 x: ex1 y: (x < y & x in X1 & y in X2)"));
    for (int len = 1; len <= 3; ++len)
        for (const auto& w : all_words(len)) {
            FiniteChain m = FiniteChain::from_word(w, 2);
            TypeId t = enumerate_type(tt, 2, 2, m);
            CHECK(tt.eval(k.body, t) == eval_finite(k, m));
        }
}

TEST_CASE("sum and projection are homomorphisms")
{
    TypeTable tt;
    for (int len = 1; len <= 3; ++len)
        for (const auto& w : all_words(len)) {
            std::vector<std::uint32_t> w2 = w;
            w2.push_back(2);
            TypeId a = enumerate_type(tt, 1, 2, FiniteChain::from_word(w, 2));
            TypeId b = enumerate_type(tt, 1, 2, FiniteChain::from_word({2}, 2));
            CHECK(tt.add(a, b) == enumerate_type(tt, 1, 2, FiniteChain::from_word(w2, 2)));
            CHECK(tt.fold({tt.letter(1, 2, w[0])}) == enumerate_type(tt, 1, 2, FiniteChain::from_word({w[0]}, 2)));
        }
}

TEST_CASE("monadic theory queries")
{
    TypeTable tt;
    Formula has_max = parse_formula("ex1 x: all1 y: (y < x | y = x)");
    CHECK(decide_mth(tt, has_max, code_of(parse_ordinal("3"))));
    CHECK_FALSE(decide_mth(tt, has_max, code_of(parse_ordinal("w"))));
    CHECK(decide_mth(tt, has_max, code_of(parse_ordinal("w^2+1"))));
    CHECK_FALSE(decide_mth(tt, has_max, code_of(parse_ordinal("w^w"))));
    Formula two = parse_formula("ex1 x: ex1 y: x < y");
    CHECK_FALSE(decide_mth(tt, two, code_of(parse_ordinal("1"))));
    CHECK(decide_mth(tt, two, code_of(parse_ordinal("2"))));
    CHECK(decide_mth(tt, two, code_of(parse_ordinal("w"))));
}

TEST_CASE("powers of w become periodic")
{
    TypeTable tt;
    PowerTypes pt = power_types(tt, 1, 0);
    CHECK(pt.t.size() == pt.lag + pt.period);
    CHECK(pt.period >= 1);
}
