#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspjet/jet.hpp"
#include "oracle_poly.hpp"

#include <random>

using namespace cuspjet;

namespace {

std::mt19937_64 rng(20240817);

Rat rnd_rat()
{
    std::uniform_int_distribution<long long> num(-4, 4), den(1, 3);
    return Rat(num(rng), den(rng));
}

JetQ rnd_jet(int order, int max_terms = 8)
{
    JetQ j(order);
    std::uniform_int_distribution<int> ed(0, order);
    std::uniform_int_distribution<int> nt(1, max_terms);
    int n = nt(rng);
    for (int t = 0; t < n; ++t) {
        int i = ed(rng), jj = ed(rng), k = ed(rng);
        if (i + jj + k > order) continue;
        j.set_coeff(Expo(i, jj, k), rnd_rat());
    }
    return j;
}

JetQ U(int n) { return JetQ::variable(Var::u, n); }
JetQ V(int n) { return JetQ::variable(Var::v, n); }
JetQ Sv(int n) { return JetQ::variable(Var::s, n); }

} // namespace

TEST_CASE("basic arithmetic identities")
{
    int n = 4;
    JetQ one = JetQ::constant(Rat(1), n);
    // (1+u)(1-u) = 1-u^2
    JetQ p = (one + U(n)) * (one - U(n));
    JetQ expect(n);
    expect.set_coeff(Expo(0, 0, 0), Rat(1));
    expect.set_coeff(Expo(2, 0, 0), Rat(-1));
    CHECK(p == expect);

    // j + 0 = j
    JetQ j = rnd_jet(6);
    CHECK(j + JetQ(6) == j);

    // (v^2)*(v^2) at order 3 truncates away
    JetQ v2 = V(3) * V(3);
    CHECK((v2 * v2).is_zero());
    CHECK((v2 * v2).order() == 3);
}

TEST_CASE("arithmetic matches the dense polynomial oracle")
{
    for (int rep = 0; rep < 60; ++rep) {
        int n = 6;
        JetQ a = rnd_jet(n), b = rnd_jet(n);
        auto pa = oracle::Poly::from_jet(a), pb = oracle::Poly::from_jet(b);
        CHECK(a + b == (pa + pb).to_jet(n));
        CHECK(a * b == (pa * pb).to_jet(n));
    }
}

TEST_CASE("ring axioms hold exactly")
{
    for (int rep = 0; rep < 40; ++rep) {
        JetQ a = rnd_jet(5), b = rnd_jet(5), c = rnd_jet(5);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("differentiate")
{
    // d/du (u^2 * d2) = 2 u d2 for constant d2
    JetQ f = U(5) * U(5) * JetQ::constant(Rat(7, 2), 5);
    JetQ g = f.differentiate(Var::u);
    JetQ expect(4);
    expect.set_coeff(Expo(1, 0, 0), Rat(7));
    CHECK(g == expect);

    // d/dv (c0 + v c1 + v^2 c2) at v=0 equals c1
    JetQ c0 = rnd_jet(5).restrict_zero(Var::v);
    JetQ c1 = rnd_jet(5).restrict_zero(Var::v);
    JetQ c2 = rnd_jet(5).restrict_zero(Var::v);
    JetQ f32 = c0 + V(5) * c1 + V(5) * V(5) * c2;
    CHECK(f32.differentiate(Var::v).restrict_zero(Var::v) == c1.truncated(4));

    // d/ds (s + u s d1) at origin is 1
    JetQ h = Sv(4) + U(4) * Sv(4) * JetQ::constant(Rat(3), 4);
    CHECK(h.differentiate(Var::s).constant_term() == Rat(1));
}

TEST_CASE("Leibniz rule is exact")
{
    for (int rep = 0; rep < 30; ++rep) {
        JetQ a = rnd_jet(6), b = rnd_jet(6);
        for (Var var : {Var::u, Var::v, Var::s}) {
            JetQ lhs = (a * b).differentiate(var);
            JetQ rhs = a.differentiate(var) * b + a * b.differentiate(var);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("compose basics")
{
    int n = 6;
    // u^2 composed with u -> u+v gives u^2+2uv+v^2
    JetQ outer = U(n) * U(n);
    JetQ r = JetQ::compose(outer, {U(n) + V(n), V(n), Sv(n)});
    JetQ expect(n);
    expect.set_coeff(Expo(2, 0, 0), Rat(1));
    expect.set_coeff(Expo(1, 1, 0), Rat(2));
    expect.set_coeff(Expo(0, 2, 0), Rat(1));
    CHECK(r == expect);

    // c1(u,s) = s + u^2 under s -> -s^2 becomes -s^2 + u^2
    JetQ c1 = Sv(n) + U(n) * U(n);
    JetQ sub = JetQ::compose(c1, {U(n), V(n), JetQ(n) - Sv(n) * Sv(n)});
    JetQ expect2(n);
    expect2.set_coeff(Expo(0, 0, 2), Rat(-1));
    expect2.set_coeff(Expo(2, 0, 0), Rat(1));
    CHECK(sub == expect2);

    // identity composition
    JetQ j = rnd_jet(n);
    CHECK(JetQ::compose(j, {U(n), V(n), Sv(n)}) == j);

    // nonzero inner constant term rejected
    CHECK_THROWS_AS(JetQ::compose(j, {U(n) + JetQ::constant(Rat(1), n), V(n), Sv(n)}),
                    NonvanishingConstantTerm);
}

TEST_CASE("compose matches oracle substitution")
{
    for (int rep = 0; rep < 25; ++rep) {
        int n = 5;
        JetQ outer = rnd_jet(n, 5);
        JetQ g0 = rnd_jet(n, 4), g1 = rnd_jet(n, 4), g2 = rnd_jet(n, 4);
        // strip constant terms so composition is defined
        g0.set_coeff(Expo(0, 0, 0), Rat(0));
        g1.set_coeff(Expo(0, 0, 0), Rat(0));
        g2.set_coeff(Expo(0, 0, 0), Rat(0));
        JetQ mine = JetQ::compose(outer, {g0, g1, g2});
        auto po = oracle::Poly::from_jet(outer);
        auto sub = po.substitute(oracle::Poly::from_jet(g0), oracle::Poly::from_jet(g1),
                                 oracle::Poly::from_jet(g2));
        CHECK(mine == sub.to_jet(n));
    }
}

TEST_CASE("chain rule through order N-1")
{
    for (int rep = 0; rep < 15; ++rep) {
        int n = 6;
        JetQ f = rnd_jet(n, 5);
        JetQ g = rnd_jet(n, 4);
        g.set_coeff(Expo(0, 0, 0), Rat(0));
        // single-variable chain: F(u) := f(g(u,v,s), v, s)
        JetQ F = JetQ::compose(f, {g, V(n), Sv(n)});
        JetQ lhs = F.differentiate(Var::u);
        JetQ rhs = JetQ::compose(f.differentiate(Var::u), {g, V(n - 1), Sv(n - 1)}) *
                   g.differentiate(Var::u);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("invert_unit and sqrt_unit")
{
    int n = 8;
    JetQ one = JetQ::constant(Rat(1), n);

    // geometric series
    JetQ inv = (one + U(n)).invert_unit();
    for (int k = 0; k <= n; ++k) CHECK(inv.coeff(k, 0, 0) == Rat(k % 2 == 0 ? 1 : -1));

    // sqrt(1+2u+u^2) = 1+u
    JetQ sq = (one + U(n) * Rat(2) + U(n) * U(n)).sqrt_unit();
    CHECK(sq == one + U(n));

    // sqrt(4) = 2
    CHECK(JetQ::constant(Rat(4), n).sqrt_unit() == JetQ::constant(Rat(2), n));

    CHECK_THROWS_AS(U(n).invert_unit(), ZeroConstantTerm);
    CHECK_THROWS_AS(U(n).sqrt_unit(), ZeroConstantTerm);
    CHECK_THROWS_AS((JetQ::constant(Rat(-1), n) + U(n)).sqrt_unit(), NegativeConstantTerm);

    // two-sided inverses through order N on random units
    for (int rep = 0; rep < 20; ++rep) {
        JetQ a = rnd_jet(6);
        a.set_coeff(Expo(0, 0, 0), Rat(rep % 3 + 1, 2));
        CHECK(a * a.invert_unit() == JetQ::constant(Rat(1), 6));
        JetQ b = (a * a).sqrt_unit();
        CHECK(b * b == a * a);
    }
}

TEST_CASE("evaluate")
{
    int n = 6;
    JetQ f = U(n) * U(n) + Sv(n);
    CHECK(f.evaluate({Rat(1, 5), Rat(0), Rat(-1, 25)}) == Rat(0));

    JetQ j = rnd_jet(n);
    CHECK(j.evaluate({Rat(0), Rat(0), Rat(0)}) == j.constant_term());

    JetQ v2 = V(n) * V(n);
    CHECK(v2.evaluate({Rat(0), Rat(3), Rat(0)}) == Rat(9));

    // against oracle on random points
    for (int rep = 0; rep < 20; ++rep) {
        JetQ a = rnd_jet(5);
        Rat x = rnd_rat(), y = rnd_rat(), z = rnd_rat();
        CHECK(a.evaluate({x, y, z}) == oracle::Poly::from_jet(a).eval(x, y, z));
    }
}

TEST_CASE("divide, restrict, parity helpers")
{
    int n = 6;
    JetQ f = V(n) * (U(n) + Sv(n) * Rat(2));
    CHECK(f.divisible_by(Var::v));
    CHECK(f.divide_by(Var::v) == (U(n) + Sv(n) * Rat(2)).truncated(n - 1));
    CHECK_THROWS_AS(U(n).divide_by(Var::v), NotDivisible);

    JetQ g = U(n) + V(n) * V(n) + V(n) * Sv(n);
    CHECK(g.parity_part(Var::v, 0) == U(n) + V(n) * V(n));
    CHECK(g.parity_part(Var::v, 1) == V(n) * Sv(n));
    CHECK((V(n) * V(n)).halve_exponents(Var::v) == V(n));
    CHECK(g.restrict_zero(Var::v) == U(n));
}

TEST_CASE("shift_var recenters the polynomial representative")
{
    for (int rep = 0; rep < 20; ++rep) {
        JetQ a = rnd_jet(5);
        Rat c = rnd_rat();
        JetQ shifted = a.shift_var(Var::u, c);
        for (int t = 0; t < 5; ++t) {
            Rat x = rnd_rat(), y = rnd_rat(), z = rnd_rat();
            CHECK(shifted.evaluate({x, y, z}) == a.evaluate({x + c, y, z}));
        }
    }
}

TEST_CASE("order bookkeeping")
{
    JetQ a = rnd_jet(7), b = rnd_jet(4);
    CHECK((a + b).order() == 4);
    CHECK((a * b).order() == 4);
    CHECK(a.differentiate(Var::u).order() == 6);
    CHECK(a.truncated(3).order() == 3);
    CHECK(a.mul_monomial(Expo(0, 2, 0), Rat(1)).order() == 9);
}

TEST_CASE("printing is deterministic and readable")
{
    int n = 4;
    JetQ f = JetQ::constant(Rat(1, 2), n) + U(n) * Rat(-1) + V(n) * V(n) * Rat(3);
    CHECK(f.to_string() == "1/2 + -u + 3 v^2");
    CHECK(JetQ(3).to_string() == "0");
}
