#pragma once

#include "cuspjet/germ.hpp"

#include <string>
#include <vector>

namespace cuspjet {

template <typename S>
struct Mat3 {
    std::array<std::array<S, 3>, 3> m;

    static Mat3 identity()
    {
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.m[i][j] = S(i == j ? 1 : 0);
        return t;
    }

    std::array<S, 3> apply(const std::array<S, 3>& x) const
    {
        std::array<S, 3> r{S(0), S(0), S(0)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i] += m[i][j] * x[j];
        return r;
    }

    JetVec3<S> apply(const JetVec3<S>& f) const
    {
        JetVec3<S> r{Jet<S>(f[0].order()), Jet<S>(f[1].order()), Jet<S>(f[2].order())};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i] = r[i] + f[j] * m[i][j];
        return r;
    }

    Mat3 mul(const Mat3& o) const
    {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = S(0);
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
            }
        return r;
    }
};

/// Record of the group element found by normalize: the target rotation T and
/// the accumulated source diffeomorphism (phi1, phi2, phi3(s)), so that
/// assemble(nf) == T o f o phi through the truncation order.
template <typename S>
struct TransformLog {
    Mat3<S> rotation = Mat3<S>::identity();
    JetVec3<S> source;
    std::vector<std::string> steps;
    bool s_gauge_pinned = false;
    int c1_s_sign = 0;
};

template <typename S>
struct Normalized {
    NormalFormS1<S> nf;
    TransformLog<S> log;
};

namespace detail {

/// Floating-point runs accumulate roundoff in coefficients that the exact
/// path keeps at literal zero; snap them before reading the shape off.
inline void snap_to_shape(JetVec3<double>& F, double tol)
{
    for (auto& comp : F) {
        Jet<double> cleaned(comp.order());
        for (const auto& [e, c] : comp.terms())
            if (std::abs(c) > tol) cleaned.set_coeff(e, c);
        comp = cleaned;
    }
    Jet<double> u = Jet<double>::variable(Var::u, F[0].order());
    bool first_ok = true;
    for (const auto& [e, c] : (F[0] - u).terms())
        if (std::abs(c) > tol) first_ok = false;
    if (first_ok) F[0] = u;
    double v2 = F[1].coeff(0, 2, 0);
    if (std::abs(v2 - 1.0) <= tol) F[1].set_coeff(Expo(0, 2, 0), 1.0);
}

template <typename S>
void snap_to_shape(JetVec3<S>&, double)
{
}

template <typename S>
bool negligible(const S& c, double tol)
{
    if constexpr (std::is_same_v<S, double>) return std::abs(c) <= tol;
    else return scalar_is_zero(c);
}

template <typename S>
std::array<S, 3> jet_vec_at_origin(const JetVec3<S>& f, Var var)
{
    return {f[0].differentiate(var).constant_term(), f[1].differentiate(var).constant_term(),
            f[2].differentiate(var).constant_term()};
}

template <typename S>
std::array<S, 3> second_derivative_at_origin(const JetVec3<S>& f, Var var)
{
    std::array<S, 3> r;
    for (int i = 0; i < 3; ++i)
        r[i] = f[i].differentiate(var).differentiate(var).constant_term();
    return r;
}

template <typename S>
S dot3(const std::array<S, 3>& a, const std::array<S, 3>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename S>
bool vec_zero(const std::array<S, 3>& a)
{
    return scalar_is_zero(a[0]) && scalar_is_zero(a[1]) && scalar_is_zero(a[2]);
}

/// Extract the normal-form coefficient functions from a germ already in
/// normal shape; throws if a disallowed monomial survives.
template <typename S>
NormalFormS1<S> read_off_normal_form(const JetVec3<S>& F, int n)
{
    Jet<S> f21(n), f24(n), f31(n), f32(n), f33(n), f34(n);

    if (F[0] != Jet<S>::variable(Var::u, n))
        throw NormalizationObstruction("normalize: first component did not reduce to u");

    for (const auto& [e, c] : F[1].terms()) {
        int i = e[Var::u], j = e[Var::v], k = e[Var::s];
        if (j == 0 && k == 0 && i >= 2) f21.set_coeff(Expo(i - 2, 0, 0), c);
        else if (j == 0 && k >= 1 && i >= 1) f24.set_coeff(Expo(i - 1, 0, k - 1), c);
        else if (i == 0 && j == 2 && k == 0 && c == S(1)) continue; // the v^2 term
        else
            throw NormalizationObstruction("normalize: residual monomial in second component");
    }
    for (const auto& [e, c] : F[2].terms()) {
        int i = e[Var::u], j = e[Var::v], k = e[Var::s];
        if (j >= 2) f32.set_coeff(Expo(i, j - 2, k), c);
        else if (j == 1) f33.set_coeff(Expo(i, 0, k), c);
        else if (k == 0 && i >= 2) f31.set_coeff(Expo(i - 2, 0, 0), c);
        else if (k >= 1 && i >= 1) f34.set_coeff(Expo(i - 1, 0, k - 1), c);
        else
            throw NormalizationObstruction("normalize: residual monomial in third component");
    }
    return NormalFormS1<S>(f21, f24, f31, f32, f33, f34);
}

} // namespace detail

/// Reduce a deformation with admissible 2-jet to the normal shape
///   (u, u^2 f21 + v^2 + u s f24, u^2 f31 + v^2 f32 + v f33 + u s f34)
/// by degree-by-degree elimination: a target rotation fixed from the 1- and
/// 2-jet, then per total degree a source correction that removes every
/// monomial the shape forbids. When the deformation is generic
/// ((c1)_s(0,0) != 0 after reduction) the deformation parameter is also
/// rescaled so that c1(0,s) = (+-)s, which pins the residual
/// reparametrization freedom and makes the output coefficients invariants.
template <typename S>
Normalized<S> normalize(const MapGerm<S>& input)
{
    using detail::dot3;
    const int n = input.order();
    if (n < 3) throw OrderTooLow("normalize: truncation order must be at least 3");
    input.check_origin_condition();

    JetVec3<S> F = {input.comp[0].truncated(n), input.comp[1].truncated(n),
                    input.comp[2].truncated(n)};
    TransformLog<S> log;
    log.source = {Jet<S>::variable(Var::u, n), Jet<S>::variable(Var::v, n),
                  Jet<S>::variable(Var::s, n)};

    auto compose_source = [&](const JetVec3<S>& psi, const std::string& what) {
        for (int i = 0; i < 3; ++i) F[i] = Jet<S>::compose(F[i], psi);
        for (int i = 0; i < 3; ++i) log.source[i] = Jet<S>::compose(log.source[i], psi);
        log.steps.push_back(what);
    };
    auto U = [&] { return Jet<S>::variable(Var::u, n); };
    auto V = [&] { return Jet<S>::variable(Var::v, n); };
    auto Sj = [&] { return Jet<S>::variable(Var::s, n); };
    auto require_zero = [&](const S& c, const std::string& what) {
        if (!detail::negligible(c, 1e-10))
            throw NormalizationObstruction("normalize: cannot remove " + what +
                                           "; the germ is not equivalent to the normal shape");
    };

    // --- 1-jet: align the kernel of df(0) with the v-axis -----------------
    auto fu0 = detail::jet_vec_at_origin(F, Var::u);
    auto fv0 = detail::jet_vec_at_origin(F, Var::v);
    if (detail::vec_zero(fu0) && detail::vec_zero(fv0))
        throw WrongTwoJet("normalize: df(0) vanishes");
    if (detail::vec_zero(fu0)) {
        compose_source({V(), Jet<S>(n) - U(), Sj()}, "swap (u,v) -> (v,-u)");
        fu0 = detail::jet_vec_at_origin(F, Var::u);
        fv0 = detail::jet_vec_at_origin(F, Var::v);
    }
    int pivot = 0;
    while (scalar_is_zero(fu0[pivot])) ++pivot;
    S mu = fv0[pivot] * scalar_inv(fu0[pivot]);
    for (int i = 0; i < 3; ++i)
        if (!scalar_is_zero(fv0[i] - mu * fu0[i]))
            throw WrongTwoJet("normalize: df(0) has rank 2 (immersion point)");
    if (!scalar_is_zero(mu))
        compose_source({U() - V() * mu, V(), Sj()}, "shear kernel onto the v-axis");

    // --- rotation: f_u(0) to the first axis, normal part of f_vv(0) to the
    // second ---------------------------------------------------------------
    fu0 = detail::jet_vec_at_origin(F, Var::u);
    S nu2 = dot3(fu0, fu0);
    S nu = scalar_sqrt(nu2);
    std::array<S, 3> e1 = {fu0[0] * scalar_inv(nu), fu0[1] * scalar_inv(nu),
                           fu0[2] * scalar_inv(nu)};
    auto fvv0 = detail::second_derivative_at_origin(F, Var::v);
    S proj = dot3(fvv0, e1);
    std::array<S, 3> w = {fvv0[0] - proj * e1[0], fvv0[1] - proj * e1[1],
                          fvv0[2] - proj * e1[2]};
    if (detail::vec_zero(w))
        throw WrongTwoJet("normalize: f_vv(0) has no component normal to f_u(0)");
    S nw = scalar_sqrt(dot3(w, w));
    std::array<S, 3> e2 = {w[0] * scalar_inv(nw), w[1] * scalar_inv(nw), w[2] * scalar_inv(nw)};
    std::array<S, 3> e3 = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                           e1[0] * e2[1] - e1[1] * e2[0]};
    Mat3<S> T;
    T.m = {std::array<S, 3>{e1[0], e1[1], e1[2]}, std::array<S, 3>{e2[0], e2[1], e2[2]},
           std::array<S, 3>{e3[0], e3[1], e3[2]}};
    F = T.apply(F);
    log.rotation = T;
    log.steps.push_back("rotate image frame");

    // --- scales: first component u-coefficient 1, v^2 coefficient 1 -------
    compose_source({U() * scalar_inv(nu), V(), Sj()}, "scale u");
    S c_v2 = F[1].coeff(0, 2, 0);
    if (scalar_sign(c_v2) <= 0)
        throw WrongTwoJet("normalize: nonpositive v^2 coefficient after rotation");
    S lam = scalar_inv(scalar_sqrt(c_v2));
    if (!(lam == S(1))) compose_source({U(), V() * lam, Sj()}, "scale v");

    // --- per-degree elimination substeps ------------------------------------
    // The v-correction is composed before the u-correction: at degree 2 the
    // v-correction is linear, so it feeds back into the first component's
    // quadratic junk, which must be read off afterwards.
    auto eliminate_f2_v_monomials = [&](int d) {
        Jet<S> d2(n);
        for (const auto& [e, c] : F[1].terms()) {
            if (e.total() != d) continue;
            int i = e[Var::u], j = e[Var::v], k = e[Var::s];
            if (j == 0 || (i == 0 && j == 1)) continue; // handled by the rigidity checks
            if (d == 2 && i == 0 && j == 2) continue;   // the v^2 term itself
            d2.set_coeff(Expo(i, j - 1, k), S(0) - c * (S(1) / S(2)));
        }
        if (!d2.is_zero())
            compose_source({U(), V() + d2, Sj()},
                           "remove v-monomials of degree " + std::to_string(d));
    };
    auto eliminate_f1_junk = [&](int d) {
        Jet<S> d1(n);
        for (const auto& [e, c] : F[0].terms()) {
            if (e.total() != d) continue;
            if (e[Var::u] == 0 && e[Var::v] == 0)
                require_zero(c, "a pure-s term in the first component");
            else
                d1.set_coeff(e, S(0) - c);
        }
        if (!d1.is_zero())
            compose_source({U() + d1, V(), Sj()},
                           "restore first component at degree " + std::to_string(d));
    };
    auto rigidity_checks = [&](int d) {
        for (const auto& [e, c] : F[1].terms()) {
            if (e.total() != d) continue;
            int i = e[Var::u], j = e[Var::v], k = e[Var::s];
            if (i == 0 && j == 0)
                require_zero(c, "a pure-s term in the second component");
            if (i == 0 && j == 1)
                require_zero(c, "a v s^" + std::to_string(k) + " term in the second component");
        }
        for (const auto& [e, c] : F[2].terms()) {
            if (e.total() != d) continue;
            if (e[Var::u] == 0 && e[Var::v] == 0)
                require_zero(c, "a pure-s term in the third component");
            if (d == 2 && e[Var::u] == 0 && e[Var::v] == 2)
                require_zero(c, "the v^2 term in the third component");
        }
    };

    // degree 2, then 3..n
    eliminate_f2_v_monomials(2);
    eliminate_f1_junk(2);
    rigidity_checks(2);
    for (int d = 3; d <= n; ++d) {
        eliminate_f2_v_monomials(d);
        eliminate_f1_junk(d);
        rigidity_checks(d);

        // Deformation-parameter gauge: with c1(0,s) reduced to (+-)s, the
        // coefficient functions stop depending on how s was parametrized.
        if (d == 4) {
            S chi = F[2].coeff(0, 3, 1);
            if (!detail::negligible(chi, 1e-10)) {
                log.s_gauge_pinned = true;
                log.c1_s_sign = scalar_sign(chi);
                S target = S(log.c1_s_sign);
                if (!(chi == target)) {
                    S scale = target * scalar_inv(chi); // positive
                    compose_source({U(), V(), Sj() * scale}, "rescale deformation parameter");
                }
            }
        } else if (d >= 5 && log.s_gauge_pinned) {
            S r = F[2].coeff(0, 3, d - 3);
            if (!detail::negligible(r, 1e-14)) {
                S chi_hat = F[2].coeff(0, 3, 1);
                S gamma = (S(0) - r) * scalar_inv(chi_hat);
                Jet<S> corr = Jet<S>::monomial(Expo(0, 0, d - 3), gamma, n);
                compose_source({U(), V(), Sj() + corr},
                               "reparametrize s at order " + std::to_string(d - 3));
            }
        }
    }

    detail::snap_to_shape(F, 1e-10);
    Normalized<S> out{detail::read_off_normal_form(F, n), std::move(log)};
    return out;
}

/// Convenience: apply a recorded (or synthesized) transform to a germ.
template <typename S>
MapGerm<S> apply_transform(const Mat3<S>& rotation, const JetVec3<S>& source,
                           const MapGerm<S>& f)
{
    JetVec3<S> moved;
    for (int i = 0; i < 3; ++i) moved[i] = Jet<S>::compose(f.comp[i], source);
    return MapGerm<S>(Mat3<S>(rotation).apply(moved), false);
}

} // namespace cuspjet
