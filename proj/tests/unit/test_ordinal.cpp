#include "doctest.h"

#include "church/errors.hpp"
#include "church/ordinal.hpp"

using namespace church;

TEST_CASE("parse and render")
{
    const char* texts[] = {"7", "w", "w + 1", "w^2*3 + w + 2", "w^w", "w^w + w^3*2 + w*5 + 7"};
    for (const char* t : texts) CHECK(parse_ordinal(render(parse_ordinal(t))) == parse_ordinal(t));
    CHECK(render(parse_ordinal("w*2")) == "w*2");
    CHECK(parse_ordinal("code:[1,2,0]") == ordinal_of(parse_code("code:[1,2,0]")));
    CHECK_THROWS_AS(parse_ordinal("w^"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("x"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("0"), std::exception);
}

TEST_CASE("addition absorbs smaller terms")
{
    CHECK(ordinal_add(ordinal_finite(3), parse_ordinal("w")) == parse_ordinal("w"));
    CHECK(ordinal_add(parse_ordinal("w"), ordinal_finite(3)) == parse_ordinal("w+3"));
    CHECK(ordinal_add(parse_ordinal("w*2+1"), parse_ordinal("w^2")) == parse_ordinal("w^2"));
    CHECK(ordinal_add(parse_ordinal("w^2+w"), parse_ordinal("w*3+1")) == parse_ordinal("w^2+w*4+1"));
    CHECK(ordinal_add(parse_ordinal("w^3"), parse_ordinal("w^w")) == parse_ordinal("w^w"));
    CHECK(parse_ordinal("w+5").finite_part() == 5);
    CHECK(parse_ordinal("5").finite());
}

TEST_CASE("codes")
{
    Code c = code_of(parse_ordinal("w^2*3+2"));
    CHECK_FALSE(c.flag);
    CHECK(c.digits == std::vector<std::uint64_t>{3, 0, 2});
    CHECK(render(c) == "code:[0,3,0,2]");
    CHECK(ordinal_of(c) == parse_ordinal("w^2*3+2"));
    CHECK(code_of(parse_ordinal("w^w+1")).flag);
}

TEST_CASE("truncation and game codes")
{
    CHECK(trun(1, 2, 3) == 1);
    CHECK(trun(2, 2, 3) == 2);
    CHECK(trun(6, 2, 3) == 3);
    CHECK(trun(11, 2, 3) == 2);
    StabilizationInfo st;
    st.m = 2;
    st.lag = {2, 1};
    st.period = {2, 1};
    Code g = gcode_of(parse_ordinal("w^5+w*7+9"), st);
    CHECK(g.flag);
    Code h = gcode_of(parse_ordinal("w*3+4"), st);
    CHECK_FALSE(h.flag);
    CHECK(gcode_of(ordinal_of_gcode(h, st), st) == h);
    CHECK(code_n(parse_ordinal("w^2+w+3"), 2).flag);
    CHECK(code_n(parse_ordinal("w+3"), 2).digits == std::vector<std::uint64_t>{1, 3});
}
