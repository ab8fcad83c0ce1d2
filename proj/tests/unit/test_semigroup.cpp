#include "doctest.h"

#include "church/semigroup.hpp"

using namespace church;

namespace {

// {0, 1} under max, with omega(x) = x.
Semigroup max_semigroup()
{
    return Semigroup(2, {0, 1, 1, 1}, {0, 1});
}

// Z/2 with an absorbing "infinite" element: 0, 1 finite parities, 2 = omega sums.
Semigroup parity_semigroup()
{
    return Semigroup(3, {0, 1, 2, 1, 0, 2, 2, 2, 2}, {2, 2, 2});
}

}  // namespace

TEST_CASE("laws of small algebras")
{
    CHECK(max_semigroup().check_laws().empty());
    CHECK(parity_semigroup().check_laws().empty());
    Semigroup bad(2, {1, 0, 0, 0}, {0, 0});
    CHECK_FALSE(bad.check_laws().empty());
}

TEST_CASE("folds and powers")
{
    Semigroup s = parity_semigroup();
    CHECK(s.fold({1, 1, 1}) == 1);
    CHECK(s.idempotent_power(1) == 0);
    CHECK(s.add_closure({1}) == std::vector<Elem>{0, 1});
    CHECK(lasso_value(s, {1}, {1}) == 2);
    CHECK(lasso_value(max_semigroup(), {}, {0, 1}) == 1);
}

TEST_CASE("quotient by a labelling")
{
    Semigroup s = parity_semigroup();
    Quotient q = congruence_quotient(s, {0, 0, 1});
    CHECK(q.algebra.size() == 2);
    CHECK(q.cls[0] == q.cls[1]);
    CHECK(q.algebra.check_laws().empty());
    Quotient fine = congruence_quotient(s, {0, 1, 2});
    CHECK(fine.algebra.size() == 3);
}
