#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspjet/rational.hpp"

#include <random>

using cuspjet::BigInt;
using cuspjet::Rat;

TEST_CASE("BigInt small arithmetic matches int64")
{
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (int i = 0; i < 2000; ++i) {
        long long x = dist(rng), y = dist(rng);
        BigInt a(x), b(y);
        CHECK((a + b).to_int64() == x + y);
        CHECK((a - b).to_int64() == x - y);
        CHECK((a * b).to_int64() == x * y);
        if (y != 0) {
            CHECK((a / b).to_int64() == x / y);
            CHECK((a % b).to_int64() == x % y);
        }
        CHECK((a < b) == (x < y));
        CHECK((a == b) == (x == y));
    }
}

TEST_CASE("BigInt survives 64-bit overflow")
{
    BigInt big(1);
    for (int i = 0; i < 40; ++i) big = big * BigInt(1000); // 10^120
    BigInt expect = BigInt::from_string("1" + std::string(120, '0'));
    CHECK(big == expect);
    CHECK(big.to_string() == expect.to_string());
    CHECK((big - big).is_zero());
    CHECK((big / BigInt(1000)).to_string() == "1" + std::string(117, '0'));
    CHECK((big % BigInt(999983)).fits_int64());

    // divmod identity across the small/large boundary
    std::mt19937_64 rng(777);
    for (int i = 0; i < 200; ++i) {
        BigInt a = BigInt(static_cast<long long>(rng() >> 1)) * BigInt(static_cast<long long>(rng() >> 20));
        BigInt b = BigInt(static_cast<long long>((rng() >> 30) + 1));
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(BigInt::abs(r) < BigInt::abs(b));
    }
}

TEST_CASE("BigInt gcd and isqrt")
{
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-5)) == BigInt(5));
    CHECK(BigInt::isqrt(BigInt(0)) == BigInt(0));
    CHECK(BigInt::isqrt(BigInt(15)) == BigInt(3));
    CHECK(BigInt::isqrt(BigInt(16)) == BigInt(4));
    BigInt n = BigInt::from_string("123456789123456789123456789");
    BigInt s = BigInt::isqrt(n * n);
    CHECK(s == n);
    bool ok = false;
    BigInt::sqrt_exact(n * n + BigInt(1), ok);
    CHECK(!ok);
}

TEST_CASE("Rat normalization and arithmetic")
{
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK((Rat(2, 3) + Rat(23, 5)).to_string() == "79/15");
    CHECK((Rat(2, 3) * Rat(23, 5)).to_string() == "46/15");
    CHECK((Rat(1, 3) / Rat(1, 6)) == Rat(2));
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 3) < Rat(0));
    CHECK_THROWS_AS(Rat(1, 0), cuspjet::arithmetic_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), cuspjet::arithmetic_error);
}

TEST_CASE("Rat field axioms on random values")
{
    std::mt19937_64 rng(99);
    auto rnd = [&] {
        std::uniform_int_distribution<long long> num(-40, 40), den(1, 12);
        return Rat(num(rng), den(rng));
    };
    for (int i = 0; i < 500; ++i) {
        Rat a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * (Rat(1) / a) == Rat(1));
    }
}

TEST_CASE("Rat exact sqrt")
{
    CHECK(Rat::sqrt_exact(Rat(4)) == Rat(2));
    CHECK(Rat::sqrt_exact(Rat(9, 4)) == Rat(3, 2));
    CHECK(Rat::sqrt_exact(Rat(0)) == Rat(0));
    CHECK_THROWS_AS(Rat::sqrt_exact(Rat(2)), cuspjet::arithmetic_error);
    CHECK_THROWS_AS(Rat::sqrt_exact(Rat(-4)), cuspjet::arithmetic_error);
}

TEST_CASE("Rat to_double")
{
    CHECK(Rat(1, 2).to_double() == 0.5);
    CHECK(Rat(-3, 4).to_double() == -0.75);
    BigInt big = BigInt::from_string("10000000000000000000000");
    CHECK(Rat(big, BigInt(1)).to_double() == doctest::Approx(1e22));
}
