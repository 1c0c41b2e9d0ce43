#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bvhh/field.hpp"

using namespace bvhh;

TEST_CASE("prime field arithmetic wraps correctly") {
    PrimeField f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.neg(0) == 0);
    CHECK(f.neg(3) == 4);
    CHECK(f.mul(5, 5) == 4);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.from_int(-14) == 0);
    CHECK(f.characteristic() == 7);
}

TEST_CASE("prime field inverses satisfy a * inv(a) == 1") {
    PrimeField f(31);
    for (std::uint64_t a = 1; a < 31; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), InputError);
}

TEST_CASE("prime field accepts large primes and rejects composites") {
    CHECK_NOTHROW(PrimeField(2147483647ull)); // 2^31 - 1
    CHECK_THROWS_AS(PrimeField(1), InputError);
    CHECK_THROWS_AS(PrimeField(91), InputError); // 7 * 13
    CHECK_THROWS_AS(PrimeField(1ull << 31), InputError);
}

TEST_CASE("prime field parses fractions as modular division") {
    PrimeField f(7);
    CHECK(f.parse("10") == 3);
    CHECK(f.parse("-1") == 6);
    CHECK(f.parse("3/2") == 5); // 3 * inv(2) = 3 * 4
    CHECK_THROWS_AS(f.parse("abc"), InputError);
    CHECK_THROWS_AS(f.parse("1/0"), InputError);
}

TEST_CASE("rational field is exact") {
    RationalField q;
    auto a = q.parse("1/3");
    auto b = q.parse("1/6");
    CHECK(q.eq(q.add(a, b), q.parse("1/2")));
    CHECK(q.eq(q.mul(q.from_int(3), a), q.one()));
    CHECK(q.eq(q.inv(q.parse("-2/5")), q.parse("-5/2")));
    CHECK(q.is_zero(q.sub(a, a)));
    CHECK(q.characteristic() == 0);
    CHECK(q.to_string(q.parse("4/6")) == "2/3");
    CHECK_THROWS_AS(q.inv(q.zero()), InputError);
    CHECK_THROWS_AS(q.parse("x/2"), InputError);
}

TEST_CASE("parity helper handles negative exponents") {
    CHECK(is_odd(1));
    CHECK(is_odd(-1));
    CHECK(is_odd(-3));
    CHECK_FALSE(is_odd(0));
    CHECK_FALSE(is_odd(-2));
    RationalField q;
    CHECK(q.eq(sign_of(q, -3), q.from_int(-1)));
    CHECK(q.eq(sign_of(q, -4), q.one()));
}

TEST_CASE("field concept holds for both backends") {
    static_assert(ScalarField<PrimeField>);
    static_assert(ScalarField<RationalField>);
}
