#include "doctest.h"

#include "church/algebra.hpp"
#include "church/finite_oracle.hpp"
#include "church/ordinal.hpp"
#include "words.hpp"

using namespace church;

TEST_CASE("reduced algebra decides finite words")
{
    const char* texts[] = {"ex1 x: ex1 y: (x < y & x in X1 & y in X2)", "sing(X2) | empty(X1)",
                           "all1 x: (x in X2 -> ex1 y: (x < y & y in X1))"};
    for (const char* text : texts) {
        Formula f = parse_formula(text);
        Kernel k = game_kernel(f);
        FormulaAlgebra a(k);
        CHECK(a.universe().check_laws().empty());
        CHECK(a.syntactic().check_laws().empty());
        for (int len = 1; len <= 4; ++len)
            for (const auto& w : all_words(len)) {
                std::vector<Elem> letters;
                for (auto b : w) letters.push_back(a.letter(b));
                CHECK(a.wins(a.syntactic().fold(letters)) == eval_finite(f, FiniteChain::from_word(w, 2)));
            }
    }
}

TEST_CASE("characteristic formulas pick out their class")
{
    Formula f = parse_formula("ex1 x: ex1 y: (x < y & x in X1 & y in X2)");
    FormulaAlgebra a(game_kernel(f));
    std::vector<Kernel> chars;
    for (Elem c = 0; c < a.syntactic().size(); ++c)
        chars.push_back(Kernel{a.characteristic(0, c), 2, {"X1", "X2"}});
    for (int len = 1; len <= 3; ++len)
        for (const auto& w : all_words(len)) {
            std::vector<Elem> letters;
            for (auto b : w) letters.push_back(a.letter(b));
            Elem cls = a.syntactic().fold(letters);
            FiniteChain m = FiniteChain::from_word(w, 2);
            for (Elem c = 0; c < chars.size(); ++c) CHECK(eval_finite(chars[c], m) == (c == cls));
        }
}

TEST_CASE("sentences through the reduced algebra")
{
    Formula has_max = parse_formula("ex1 x: all1 y: (y < x | y = x)");
    CHECK(decide_sentence(has_max, code_of(parse_ordinal("w*2+1"))));
    CHECK_FALSE(decide_sentence(has_max, code_of(parse_ordinal("w^3*2"))));
}

TEST_CASE("power sequences")
{
    Semigroup s(3, {0, 1, 2, 1, 0, 2, 2, 2, 2}, {2, 2, 2});
    PowerSequence ps = power_sequence(s, 1);
    CHECK(ps.power(0) == 1);
    CHECK(ps.power(1) == 2);
    CHECK(ps.power(7) == 2);
    CHECK(value_of_code(s, 1, code_of(parse_ordinal("3"))) == 1);
}
