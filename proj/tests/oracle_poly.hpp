#pragma once

// Test-only oracle: naive dense trivariate polynomials over Rat with no
// truncation. Deliberately written with the dumbest possible loops so it
// shares no code path with Jet. Used to cross-check jet arithmetic,
// composition and calculus.

#include "cuspjet/jet.hpp"
#include "cuspjet/rational.hpp"

#include <map>
#include <tuple>

namespace oracle {

using cuspjet::Expo;
using cuspjet::Jet;
using cuspjet::Rat;
using cuspjet::Var;

struct Poly {
    std::map<std::tuple<int, int, int>, Rat> c;

    static Poly from_jet(const Jet<Rat>& j)
    {
        Poly p;
        for (const auto& [e, coef] : j.terms())
            p.c[{e[Var::u], e[Var::v], e[Var::s]}] = coef;
        return p;
    }

    Jet<Rat> to_jet(int order) const
    {
        Jet<Rat> j(order);
        for (const auto& [e, coef] : c) {
            auto [i, jj, k] = e;
            if (i + jj + k <= order && !coef.is_zero()) j.set_coeff(Expo(i, jj, k), coef);
        }
        return j;
    }

    void add_term(int i, int j, int k, const Rat& r)
    {
        auto key = std::make_tuple(i, j, k);
        c[key] = c[key] + r;
        if (c[key].is_zero()) c.erase(key);
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        Poly r = a;
        for (const auto& [e, coef] : b.c) {
            auto [i, j, k] = e;
            r.add_term(i, j, k, coef);
        }
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly r;
        for (const auto& [ea, ca] : a.c)
            for (const auto& [eb, cb] : b.c) {
                auto [i1, j1, k1] = ea;
                auto [i2, j2, k2] = eb;
                r.add_term(i1 + i2, j1 + j2, k1 + k2, ca * cb);
            }
        return r;
    }

    Poly diff(int var) const
    {
        Poly r;
        for (const auto& [e, coef] : c) {
            auto [i, j, k] = e;
            int exp = var == 0 ? i : var == 1 ? j : k;
            if (exp == 0) continue;
            int ii = i, jj = j, kk = k;
            (var == 0 ? ii : var == 1 ? jj : kk) -= 1;
            r.add_term(ii, jj, kk, coef * Rat(exp));
        }
        return r;
    }

    // full polynomial substitution, no truncation
    Poly substitute(const Poly& gu, const Poly& gv, const Poly& gs) const
    {
        Poly r;
        for (const auto& [e, coef] : c) {
            auto [i, j, k] = e;
            Poly term;
            term.add_term(0, 0, 0, coef);
            for (int t = 0; t < i; ++t) term = term * gu;
            for (int t = 0; t < j; ++t) term = term * gv;
            for (int t = 0; t < k; ++t) term = term * gs;
            r = r + term;
        }
        return r;
    }

    Rat eval(const Rat& x, const Rat& y, const Rat& z) const
    {
        Rat acc(0);
        for (const auto& [e, coef] : c) {
            auto [i, j, k] = e;
            Rat t = coef;
            for (int q = 0; q < i; ++q) t = t * x;
            for (int q = 0; q < j; ++q) t = t * y;
            for (int q = 0; q < k; ++q) t = t * z;
            acc = acc + t;
        }
        return acc;
    }
};

} // namespace oracle
