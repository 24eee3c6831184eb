#pragma once

#include "cuspjet/jet.hpp"

#include <cmath>
#include <optional>

namespace cuspjet {

/// Map-germ f : (R^2 x R, 0) -> (R^3, 0) as three jets in (u, v, s),
/// with the deformation origin condition f(0,0,s) = 0 identically.
template <typename S>
struct MapGerm {
    JetVec3<S> comp;

    MapGerm() = default;
    explicit MapGerm(JetVec3<S> c, bool validate = true) : comp(std::move(c))
    {
        if (validate) check_origin_condition();
    }

    const Jet<S>& x() const { return comp[0]; }
    const Jet<S>& y() const { return comp[1]; }
    const Jet<S>& z() const { return comp[2]; }
    int order() const { return std::min({comp[0].order(), comp[1].order(), comp[2].order()}); }

    void check_origin_condition() const
    {
        for (const auto& c : comp)
            for (const auto& [e, coef] : c.terms())
                if (e[Var::u] == 0 && e[Var::v] == 0)
                    throw InvariantViolation(
                        "MapGerm: component does not vanish on the deformation axis (u=v=0)");
    }

    friend bool operator==(const MapGerm& a, const MapGerm& b) { return a.comp == b.comp; }

    template <typename T>
    MapGerm<T> cast() const
    {
        return MapGerm<T>({comp[0].template cast<T>(), comp[1].template cast<T>(),
                           comp[2].template cast<T>()},
                          false);
    }
};

/// General normal form of a deformation with admissible 2-jet:
///   (u, u^2 f21(u) + v^2 + u s f24(u,s),
///       u^2 f31(u) + v^2 f32(u,v,s) + v f33(u,s) + u s f34(u,s))
/// with f32(0,0,0) = f33(0,0) = 0.
template <typename S>
struct NormalFormS1 {
    Jet<S> f21, f24, f31, f32, f33, f34;

    NormalFormS1() = default;
    NormalFormS1(Jet<S> f21_, Jet<S> f24_, Jet<S> f31_, Jet<S> f32_, Jet<S> f33_, Jet<S> f34_,
                 bool validate = true)
        : f21(std::move(f21_)), f24(std::move(f24_)), f31(std::move(f31_)),
          f32(std::move(f32_)), f33(std::move(f33_)), f34(std::move(f34_))
    {
        if (validate) check();
    }

    void check() const
    {
        require_vars(f21, true, false, false, "f21");
        require_vars(f24, true, false, true, "f24");
        require_vars(f31, true, false, false, "f31");
        require_vars(f33, true, false, true, "f33");
        require_vars(f34, true, false, true, "f34");
        if (!scalar_is_zero(f32.constant_term()))
            throw InvariantViolation("NormalFormS1: f32(0,0,0) != 0");
        if (!scalar_is_zero(f33.constant_term()))
            throw InvariantViolation("NormalFormS1: f33(0,0) != 0");
    }

    int order() const
    {
        return std::min({f21.order(), f24.order(), f31.order(), f32.order(), f33.order(),
                         f34.order()});
    }

    friend bool operator==(const NormalFormS1& a, const NormalFormS1& b)
    {
        return a.f21 == b.f21 && a.f24 == b.f24 && a.f31 == b.f31 && a.f32 == b.f32 &&
               a.f33 == b.f33 && a.f34 == b.f34;
    }

private:
    static void require_vars(const Jet<S>& j, bool u_ok, bool v_ok, bool s_ok, const char* name)
    {
        for (const auto& [e, c] : j.terms()) {
            if ((!u_ok && e[Var::u] > 0) || (!v_ok && e[Var::v] > 0) || (!s_ok && e[Var::s] > 0))
                throw InvariantViolation(std::string("NormalFormS1: ") + name +
                                         " depends on a forbidden variable");
        }
    }
};

/// Decomposition f32 = c0(u,s) + v c1(u,s) + v^2 c2(u,v^2,s) + v^3 c3(u,v^2,s).
/// c2 and c3 are stored with the middle exponent meaning w = v^2.
template <typename S>
struct F32Parts {
    Jet<S> c0, c1, c2, c3;
};

template <typename S>
F32Parts<S> decompose_f32(const Jet<S>& f32)
{
    int n = f32.order();
    F32Parts<S> p{Jet<S>(n), Jet<S>(std::max(n - 1, 0)), Jet<S>(std::max(n - 2, 0)),
                  Jet<S>(std::max(n - 3, 0))};
    for (const auto& [e, c] : f32.terms()) {
        int i = e[Var::u], j = e[Var::v], k = e[Var::s];
        if (j == 0) p.c0.set_coeff(Expo(i, 0, k), c);
        else if (j == 1) p.c1.set_coeff(Expo(i, 0, k), c);
        else if (j % 2 == 0) p.c2.set_coeff(Expo(i, (j - 2) / 2, k), c);
        else p.c3.set_coeff(Expo(i, (j - 3) / 2, k), c);
    }
    return p;
}

/// Reassemble f32 from its parts at the given truncation order. Inverse
/// exponent mapping of decompose_f32, so the round trip is exact.
template <typename S>
Jet<S> reassemble_f32(const F32Parts<S>& p, int order)
{
    Jet<S> r(order);
    auto put = [&](const Jet<S>& part, int vbase, bool w_form) {
        for (const auto& [e, c] : part.terms()) {
            int j = vbase + (w_form ? 2 * e[Var::v] : 0);
            Expo t(e[Var::u], j, e[Var::s]);
            if (t.total() <= order) r.add_coeff(t, c);
        }
    };
    put(p.c0, 0, false);
    put(p.c1, 1, false);
    put(p.c2, 2, true);
    put(p.c3, 3, true);
    return r;
}

/// Coefficient data of c1 = s + u s d1(s) + u^2 d2(s) + u^3 d3(s) + u^4 d4(u,s),
/// with d20 = sqrt(|d2(0)|) and the sign of d2(0) kept separately.
template <typename S>
struct C1Expansion {
    Jet<S> d1, d2, d3, d4;
    S d20 = S(0);             // exact sqrt(|d2(0)|) when representable in S
    bool d20_exact = false;
    int d2_sign = 0;          // sign of d2(0); 0 flags the degenerate case
    bool degenerate() const { return d2_sign == 0; }

    double d20_approx() const
    {
        if (d20_exact) return to_double(d20);
        double v = to_double(d2.constant_term());
        return std::sqrt(v < 0 ? -v : v);
    }
};

template <typename S>
C1Expansion<S> expand_c1(const Jet<S>& c1)
{
    // c1 must already be reduced to c1(0,s) = s through the truncation order.
    Jet<S> at_u0 = c1.restrict_zero(Var::u);
    if (at_u0 != Jet<S>::variable(Var::s, c1.order()))
        throw NotReducedC1("expand_c1: c1(0,s) != s through the truncation order");

    C1Expansion<S> out;
    int n = c1.order();
    Jet<S> d1us(n), d2u(n), d3u(n), d4u(n);
    for (const auto& [e, c] : c1.terms()) {
        int i = e[Var::u], k = e[Var::s];
        if (i == 0) continue; // the plain s term
        if (i == 1) {
            if (k == 0)
                throw NotReducedC1("expand_c1: (c1)_u(0,0) != 0");
            d1us.set_coeff(Expo(0, 0, k - 1), c);
        } else if (i == 2) {
            d2u.set_coeff(Expo(0, 0, k), c);
        } else if (i == 3) {
            d3u.set_coeff(Expo(0, 0, k), c);
        } else {
            d4u.set_coeff(Expo(i - 4, 0, k), c);
        }
    }
    out.d1 = d1us;
    out.d2 = d2u;
    out.d3 = d3u;
    out.d4 = d4u;
    S d20_sq = out.d2.constant_term();
    if (scalar_is_zero(d20_sq)) {
        out.d2_sign = 0;
        out.d20 = S(0);
    } else {
        out.d2_sign = to_double(d20_sq) > 0 ? 1 : -1;
        try {
            out.d20 = scalar_sqrt(out.d2_sign > 0 ? d20_sq : S(0) - d20_sq);
            out.d20_exact = true;
        } catch (const arithmetic_error&) {
            // |d2(0)| is not a perfect square in rational mode; numeric
            // consumers fall back to d20_approx().
        }
    }
    return out;
}

/// Frontal normal form: the f33-free case, with the f32 decomposition kept
/// alongside and the c1 expansion computed on demand.
template <typename S>
struct FrontalNormalForm {
    Jet<S> f21, f24, f31, f34;
    F32Parts<S> f32_parts;
    int order_ = 0;

    FrontalNormalForm() = default;
    FrontalNormalForm(const NormalFormS1<S>& nf)
        : f21(nf.f21), f24(nf.f24), f31(nf.f31), f34(nf.f34),
          f32_parts(decompose_f32(nf.f32)), order_(nf.order())
    {
        if (!nf.f33.is_zero())
            throw InvariantViolation("FrontalNormalForm: f33 is not identically zero");
        if (!scalar_is_zero(f32_parts.c0.constant_term()))
            throw InvariantViolation("FrontalNormalForm: c0(0,0) != 0");
    }

    int order() const { return order_; }
    const Jet<S>& c0() const { return f32_parts.c0; }
    const Jet<S>& c1() const { return f32_parts.c1; }
    const Jet<S>& c2() const { return f32_parts.c2; }
    const Jet<S>& c3() const { return f32_parts.c3; }

    Jet<S> f32() const { return reassemble_f32(f32_parts, order_); }

    NormalFormS1<S> as_normal_form() const
    {
        return NormalFormS1<S>(f21, f24, f31, f32(), Jet<S>(order_), f34);
    }

    C1Expansion<S> expand() const { return expand_c1(c1()); }
};

template <typename S>
MapGerm<S> assemble(const NormalFormS1<S>& nf)
{
    int n = nf.order();
    Jet<S> u = Jet<S>::variable(Var::u, n);
    Jet<S> v = Jet<S>::variable(Var::v, n);
    Jet<S> s = Jet<S>::variable(Var::s, n);
    Jet<S> u2 = u * u, v2 = v * v, us = u * s;
    Jet<S> y = u2 * nf.f21.truncated(n) + v2 + us * nf.f24.truncated(n);
    Jet<S> z = u2 * nf.f31.truncated(n) + v2 * nf.f32.truncated(n) +
               v * nf.f33.truncated(n) + us * nf.f34.truncated(n);
    return MapGerm<S>({u, y, z});
}

template <typename S>
MapGerm<S> assemble(const FrontalNormalForm<S>& fnf)
{
    return assemble(fnf.as_normal_form());
}

} // namespace cuspjet
