#pragma once

#include "cuspjet/classify.hpp"
#include "cuspjet/extrapolate.hpp"
#include "cuspjet/frontal.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace cuspjet {

using Vec3 = std::array<double, 3>;

inline double vdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 vcross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double vnorm(const Vec3& a) { return std::sqrt(vdot(a, a)); }
inline double vdet(const Vec3& a, const Vec3& b, const Vec3& c) { return vdot(a, vcross(b, c)); }
inline Vec3 vscale(const Vec3& a, double t) { return {a[0] * t, a[1] * t, a[2] * t}; }
inline Vec3 vadd(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

enum class Method { closed_form, series, oracle };
inline const char* to_string(Method m)
{
    switch (m) {
        case Method::closed_form: return "closed-form";
        case Method::series: return "series";
        default: return "oracle";
    }
}

// ---------------------------------------------------------------------------
// Trajectory of second-stratum points: u(s_tilde) series and Newton roots
// ---------------------------------------------------------------------------

/// Leading coefficients of the singular-point trajectory
/// u(s~) = alpha1 s~ + alpha2 s~^2 + alpha3 s~^3 + O(4), where s = -s~^2 for
/// d2(0) > 0 (and s = +s~^2 in the mirrored d2(0) < 0 case).
template <typename S>
struct TrajectorySeries {
    S alpha1, alpha2, alpha3;
    int d2_sign = +1;
    double validity_radius = 0.0;
};

template <typename S>
TrajectorySeries<S> trajectory_series(const FrontalNormalForm<S>& fnf)
{
    auto e = fnf.expand();
    if (e.degenerate()) throw DegenerateD2("trajectory_series: d2(0) = 0");
    if (!e.d20_exact)
        throw arithmetic_error("trajectory_series: |d2(0)| is not an exact square; "
                               "use the floating-point scalar mode");
    // sigma is the sign of s = sigma s~^2 on the side where roots exist
    S sigma = S(e.d2_sign > 0 ? -1 : 1);
    S d20 = e.d20;
    S d2c = e.d2.constant_term();             // signed d2(0)
    S d1c = e.d1.constant_term();
    S d3c = e.d3.constant_term();
    S d4c = e.d4.constant_term();
    S d2s = e.d2.differentiate(Var::s).constant_term();

    TrajectorySeries<S> out{S(0), S(0), S(0), e.d2_sign, 0.0};
    S a1 = scalar_inv(d20);
    // order s~^3 balance: sigma a1 d1 + 2 a1 a2 d2 + a1^3 d3 = 0
    S a2 = (S(0) - (sigma * d1c + a1 * a1 * d3c)) * scalar_inv(S(2) * d2c);
    // order s~^4 balance
    S a3 = (S(0) - (sigma * a2 * d1c + a2 * a2 * d2c + sigma * a1 * a1 * d2s +
                    S(3) * a1 * a1 * a2 * d3c + a1 * a1 * a1 * a1 * d4c)) *
           scalar_inv(S(2) * a1 * d2c);
    out.alpha1 = a1;
    out.alpha2 = a2;
    out.alpha3 = a3;
    double A1 = to_double(a1), A2 = to_double(a2), A3 = to_double(a3);
    double lim = 1.0;
    if (A2 != 0.0) lim = std::min(lim, 0.5 * std::abs(A1 / A2));
    if (A3 != 0.0) lim = std::min(lim, 0.5 * std::sqrt(std::abs(A1 / A3)));
    out.validity_radius = lim;
    return out;
}

/// Jet-level implicit solve of c1(u(t), sigma t^2) = 0: the independent route
/// to the trajectory series, exact in rational mode.
template <typename S>
Jet<S> solve_u_series(const FrontalNormalForm<S>& fnf, int terms)
{
    auto e = fnf.expand();
    if (e.degenerate()) throw DegenerateD2("solve_u_series: d2(0) = 0");
    if (!e.d20_exact)
        throw arithmetic_error("solve_u_series: |d2(0)| is not an exact square");
    S sigma = S(e.d2_sign > 0 ? -1 : 1);
    const Jet<S>& c1 = fnf.c1();
    int m = std::min(terms, c1.order() - 1);
    Jet<S> t = Jet<S>::variable(Var::u, m + 1);
    Jet<S> s_of_t = t * t * sigma;
    Jet<S> u = t * scalar_inv(e.d20);
    S denom = S(2) * e.d2.constant_term() * scalar_inv(e.d20); // 2 d2(0) alpha1
    for (int deg = 2; deg <= m; ++deg) {
        Jet<S> residual = Jet<S>::compose(c1, {u, Jet<S>(m + 1), s_of_t});
        S rho = residual.coeff(deg + 1, 0, 0);
        if (scalar_is_zero(rho)) continue;
        u.add_coeff(Expo(deg, 0, 0), (S(0) - rho) * scalar_inv(denom));
    }
    return u.truncated(m);
}

/// Newton-polished second-stratum roots at deformation value s = sigma s~^2,
/// near +-s~/d20. Residuals below 1e-12 or NoConvergence.
template <typename S>
std::vector<double> solve_singular_u(const FrontalNormalForm<S>& fnf, double s_tilde)
{
    auto e = fnf.expand();
    if (e.degenerate()) throw DegenerateD2("solve_singular_u: d2(0) = 0");
    if (s_tilde == 0.0) return {0.0};
    double d20 = e.d20_approx();
    double s0 = (e.d2_sign > 0 ? -1.0 : 1.0) * s_tilde * s_tilde;
    JetD c1 = fnf.c1().template cast<double>();
    JetD poly = c1.shift_var(Var::s, s0).restrict_zero(Var::s);
    double seed = s_tilde / d20;
    double radius = 3 * seed + 1e-6;
    return {detail::polish_root(poly, -seed, radius), detail::polish_root(poly, seed, radius)};
}

// ---------------------------------------------------------------------------
// Self-intersection curves
// ---------------------------------------------------------------------------

struct TraceResult {
    double u0 = 0.0;                       // branch base point on v = 0
    double u_vv = 0.0, u_vvvv = 0.0;       // jet data of u(v) at v = 0
    std::vector<std::array<double, 2>> samples; // (v, u) along the branch
};

namespace detail {

/// i(u, v) = c1(u,s) + v^2 c3(u, v^2, s) with s frozen; returned as a jet in
/// (u, v) for evaluation near the branch.
template <typename S>
JetD intersection_function(const FrontalNormalForm<S>& fnf, double s0, int extend_to = 16)
{
    JetD c1 = fnf.c1().template cast<double>().extended(extend_to);
    JetD c3 = fnf.c3().template cast<double>().extended(extend_to);
    JetD c1_frozen = c1.shift_var(Var::s, s0).restrict_zero(Var::s);
    JetD c3_frozen = c3.shift_var(Var::s, s0).restrict_zero(Var::s);
    int n = extend_to;
    JetD v = JetD::variable(Var::v, n);
    JetD c3_in_v = JetD::compose(c3_frozen, {JetD::variable(Var::u, n), v * v, JetD(n)});
    return c1_frozen + v * v * c3_in_v;
}

} // namespace detail

/// Trace one branch of the self-intersection curve at fixed s < 0 (d2(0)>0
/// convention; the mirrored side otherwise): continuation in v from the
/// second-stratum root, Newton-corrected in u, residual below 1e-12. Also
/// evaluates the closed-form jet data u_vv and u_vvvv at v = 0.
template <typename S>
TraceResult trace_self_intersection(const FrontalNormalForm<S>& fnf, double s0, int side = +1,
                                    double v_max = 0.05, int samples = 16)
{
    auto e = fnf.expand();
    if (e.degenerate()) throw DegenerateD2("trace_self_intersection: d2(0) = 0");
    double inside = e.d2_sign > 0 ? -s0 : s0;
    if (inside <= 0)
        throw BranchSingular("trace_self_intersection: no branch on this side of s = 0");
    double s_tilde = std::sqrt(inside);
    auto roots = solve_singular_u(fnf, s_tilde);
    double u0 = side >= 0 ? roots.back() : roots.front();

    TraceResult out;
    out.u0 = u0;

    JetD c1 = fnf.c1().template cast<double>();
    JetD c3 = fnf.c3().template cast<double>();
    auto at_pt = [&](const JetD& j) { return j.evaluate({u0, 0.0, s0}); };
    double c1u = at_pt(c1.differentiate(Var::u));
    double c1uu = at_pt(c1.differentiate(Var::u).differentiate(Var::u));
    double c3v = at_pt(c3);                                   // c3(u0, 0, s0)
    double c3u = at_pt(c3.differentiate(Var::u));
    double c3w = at_pt(c3.differentiate(Var::v));             // w-slot derivative
    if (c1u == 0.0)
        throw BranchSingular("trace_self_intersection: i_u vanishes at the base point");
    out.u_vv = -2.0 * c3v / c1u;
    out.u_vvvv =
        -12.0 / (c1u * c1u * c1u) *
        (2.0 * c1u * c1u * c3w - 2.0 * c1u * c3u * c3v + c1uu * c3v * c3v);

    JetD big_i = detail::intersection_function(fnf, s0);
    JetD di = big_i.differentiate(Var::u);
    double u = u0;
    for (int k = 0; k <= samples; ++k) {
        double v = v_max * k / samples;
        // Newton in u at fixed v
        for (int it = 0; it < 60; ++it) {
            double fi = big_i.evaluate({u, v, 0.0});
            if (std::abs(fi) < 1e-14) break;
            double dfi = di.evaluate({u, v, 0.0});
            if (dfi == 0.0)
                throw BranchSingular("trace_self_intersection: i_u vanished at a sample");
            u -= fi / dfi;
        }
        if (std::abs(big_i.evaluate({u, v, 0.0})) > 1e-12)
            throw NoConvergence("trace_self_intersection: correction stalled");
        out.samples.push_back({v, u});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curvatures of even curves (the one-third-factor formulas)
// ---------------------------------------------------------------------------

struct CurvaturePair {
    double kappa_g = 0.0, kappa_n = 0.0;
};

/// Formulas at v = 0 from the 2nd and 4th derivative vectors of an even
/// curve and the unit normal at the point.
inline CurvaturePair even_curvatures_from_vectors(const Vec3& cvv, const Vec3& cvvvv,
                                                  const Vec3& nu0, int eps)
{
    double a = vnorm(cvv);
    if (a == 0.0) throw FlatCurve("even curve curvatures: c_vv(0) = 0");
    CurvaturePair out;
    out.kappa_g = eps * vdet(cvv, cvvvv, nu0) / (3.0 * a * a * a);
    out.kappa_n = vdot(cvvvv, nu0) / (3.0 * a * a);
    return out;
}

/// The same evaluated from curve jets in v; checks the 4-jet evenness and
/// the tangency of nu at the base point.
inline CurvaturePair even_curve_curvatures(const JetVec3<double>& curve, const Vec3& nu0,
                                           int eps)
{
    for (const auto& comp : curve)
        for (const auto& [e, c] : comp.terms())
            if (e[Var::v] % 2 == 1 && e[Var::v] <= 4 && c != 0.0)
                throw Error("even_curve_curvatures: curve is not even through its 4-jet");
    Vec3 cvv, cvvvv;
    for (int i = 0; i < 3; ++i) {
        cvv[i] = 2.0 * curve[i].coeff(0, 2, 0);
        cvvvv[i] = 24.0 * curve[i].coeff(0, 4, 0);
    }
    if (std::abs(vdot(cvv, nu0)) > 1e-9 * (1.0 + vnorm(cvv)))
        throw Error("even_curve_curvatures: normal is not orthogonal to the curve");
    return even_curvatures_from_vectors(cvv, cvvvv, nu0, eps);
}

// ---------------------------------------------------------------------------
// Self-intersection curvature limits (deformed side and s = 0)
// ---------------------------------------------------------------------------

struct SiLimits {
    double kappa_g_closed = 0.0; // leading term, + branch convention
    double kappa_n_closed = 0.0;
    double kappa_g_oracle = 0.0; // extrapolated traced-curve limits
    double kappa_n_oracle = 0.0;
};

namespace detail {

/// Unit normal direction at a point, from the jets of the normal field.
template <typename S>
Vec3 normal_at(const NormalField<S>& field, double u0, double v0, double s0)
{
    JetVec3<double> nu = {field.nu[0].template cast<double>(),
                          field.nu[1].template cast<double>(),
                          field.nu[2].template cast<double>()};
    Vec3 n = {nu[0].evaluate({u0, v0, s0}), nu[1].evaluate({u0, v0, s0}),
              nu[2].evaluate({u0, v0, s0})};
    return vscale(n, 1.0 / vnorm(n));
}

template <typename S>
struct GermDerivatives {
    JetVec3<double> f, fu, fv, fvv, fuu, fuvv, fvvvv;

    explicit GermDerivatives(const MapGerm<S>& g, int extend_to = 14)
    {
        for (int i = 0; i < 3; ++i) {
            f[i] = g.comp[i].template cast<double>().extended(extend_to);
            fu[i] = f[i].differentiate(Var::u);
            fv[i] = f[i].differentiate(Var::v);
            fvv[i] = fv[i].differentiate(Var::v);
            fuu[i] = fu[i].differentiate(Var::u);
            fuvv[i] = fvv[i].differentiate(Var::u);
            fvvvv[i] = fvv[i].differentiate(Var::v).differentiate(Var::v);
        }
    }

    Vec3 eval(const JetVec3<double>& j, double u0, double v0, double s0) const
    {
        return {j[0].evaluate({u0, v0, s0}), j[1].evaluate({u0, v0, s0}),
                j[2].evaluate({u0, v0, s0})};
    }
};

} // namespace detail

/// Leading curvature coefficients of the self-intersection curves for small
/// deformation, with the traced-curve limits as the independent check:
/// kappa_g and kappa_n of v -> f(u(v,s),v,s) at v=0 are extrapolated to
/// s~ -> 0 through the even-curve formulas.
template <typename S>
SiLimits si_curvature_limits(const FrontalNormalForm<S>& fnf)
{
    auto e = fnf.expand();
    if (e.degenerate()) throw DegenerateD2("si_curvature_limits: d2(0) = 0");
    double c3_0 = to_double(fnf.c3().constant_term());
    double c1uu = 2.0 * to_double(e.d2.constant_term());
    if (c3_0 == 0.0 || c1uu == 0.0)
        throw DegenerateBranch("si_curvature_limits: c3(0,0,0) or (c1)_uu(0,0) vanishes");
    double f21_0 = to_double(fnf.f21.constant_term());
    double f31_0 = to_double(fnf.f31.constant_term());

    SiLimits out;
    out.kappa_g_closed = (-2.0 * f21_0 * c3_0 + c1uu) / c3_0;
    out.kappa_n_closed = 2.0 * f31_0;

    MapGerm<S> g = assemble(fnf);
    auto field = unit_normal(g);
    detail::GermDerivatives<S> D(g);
    int sgn_s = e.d2_sign > 0 ? -1 : +1;

    std::vector<double> hs, kg, kn;
    double h = 0.04;
    for (int i = 0; i < 5; ++i, h *= 0.5) {
        double s0 = sgn_s * h * h;
        TraceResult tr = trace_self_intersection(fnf, s0, +1, 0.0, 1);
        Vec3 fu = D.eval(D.fu, tr.u0, 0.0, s0);
        Vec3 fvv = D.eval(D.fvv, tr.u0, 0.0, s0);
        Vec3 fuu = D.eval(D.fuu, tr.u0, 0.0, s0);
        Vec3 fuvv = D.eval(D.fuvv, tr.u0, 0.0, s0);
        Vec3 fvvvv = D.eval(D.fvvvv, tr.u0, 0.0, s0);
        Vec3 cvv = vadd(fvv, vscale(fu, tr.u_vv));
        Vec3 cvvvv = vadd(vadd(fvvvv, vscale(fu, tr.u_vvvv)),
                          vadd(vscale(fuvv, 6.0 * tr.u_vv), vscale(fuu, 3.0 * tr.u_vv * tr.u_vv)));
        Vec3 nu0 = detail::normal_at(field, tr.u0, 0.0, s0);
        auto cp = even_curvatures_from_vectors(cvv, cvvvv, nu0, +1);
        hs.push_back(h);
        kg.push_back(cp.kappa_g);
        kn.push_back(cp.kappa_n);
    }
    out.kappa_g_oracle = richardson_limit(hs, kg);
    out.kappa_n_oracle = richardson_limit(hs, kn);
    return out;
}

struct BranchCurvatures {
    double kappa_g = 0.0, kappa_n = 0.0;          // closed forms
    double kappa_g_oracle = 0.0, kappa_n_oracle = 0.0;
    double slope_sq = 0.0;                        // (v')^2 of the branch
};

/// Curvatures of the s = 0 self-intersection branches, which exist when
/// (c1)_uu(0,0) c3(0,0,0) < 0. The oracle path parametrizes the branch as
/// v(u), composes the germ, and reads the Frenet data at u = 0.
template <typename S>
BranchCurvatures branch_curvatures_s0(const FrontalNormalForm<S>& fnf)
{
    auto e = fnf.expand();
    double c3_0 = to_double(fnf.c3().constant_term());
    double c1uu = 2.0 * to_double(e.d2.constant_term());
    if (!(c1uu * c3_0 < 0.0))
        throw NoRealBranch("branch_curvatures_s0: (c1)_uu(0,0) c3(0,0,0) >= 0");
    double f21_0 = to_double(fnf.f21.constant_term());
    double f31_0 = to_double(fnf.f31.constant_term());

    BranchCurvatures out;
    out.kappa_g = (2.0 * f21_0 * c3_0 - c1uu) / c3_0;
    out.kappa_n = 2.0 * f31_0;
    out.slope_sq = -c1uu / (2.0 * c3_0);

    // branch series: w(u) = v(u)^2 solves c1(u,0) + w c3(u,w,0) = 0
    const int n = 10;
    JetD c1 = fnf.c1().template cast<double>().extended(n);
    JetD c3 = fnf.c3().template cast<double>().extended(n);
    JetD c1_at0 = c1.restrict_zero(Var::s);
    JetD c3_at0 = c3.restrict_zero(Var::s);
    JetD uvar = JetD::variable(Var::u, n);
    JetD w(n);
    for (int it = 0; it < n + 2; ++it) {
        JetD c3_along = JetD::compose(c3_at0, {uvar, w, JetD(n)});
        w = (JetD(n) - c1_at0) * c3_along.invert_unit();
    }
    JetD q = w.divide_by(Var::u).divide_by(Var::u); // w / u^2, unit with (v')^2 at 0
    JetD v_of_u = uvar * q.sqrt_unit();

    MapGerm<S> g = assemble(fnf);
    auto field = unit_normal(g);
    JetVec3<double> curve, nu_along;
    for (int i = 0; i < 3; ++i) {
        curve[i] = JetD::compose(g.comp[i].template cast<double>().extended(n),
                                 {uvar, v_of_u, JetD(n)});
        nu_along[i] = JetD::compose(field.nu[i].template cast<double>().extended(n),
                                    {uvar, v_of_u, JetD(n)});
    }
    JetVec3<double> cp, cpp;
    for (int i = 0; i < 3; ++i) {
        cp[i] = curve[i].differentiate(Var::u);
        cpp[i] = cp[i].differentiate(Var::u);
    }
    Vec3 c1v = {cp[0].constant_term(), cp[1].constant_term(), cp[2].constant_term()};
    Vec3 c2v = {cpp[0].constant_term(), cpp[1].constant_term(), cpp[2].constant_term()};
    Vec3 nu0 = {nu_along[0].constant_term(), nu_along[1].constant_term(),
                nu_along[2].constant_term()};
    nu0 = vscale(nu0, 1.0 / vnorm(nu0));
    double speed = vnorm(c1v);
    out.kappa_g_oracle = vdet(c1v, c2v, nu0) / (speed * speed * speed);
    out.kappa_n_oracle = vdot(c2v, nu0) / (speed * speed);
    return out;
}

// ---------------------------------------------------------------------------
// Bias and secondary cuspidal curvature
// ---------------------------------------------------------------------------

/// Jets of the field eta = (v a1 + v^2 a2) d_u + d_v applied repeatedly to
/// the germ. a1 and a2 are chosen so eta annihilates f on v=0 and the second
/// and third powers stay orthogonal to f_u there. Works over any scalar;
/// the rational instantiation makes those conditions exact identities.
template <typename T>
struct EtaCalculus {
    JetVec3<T> f, fu;
    Jet<T> a1, a2;                   // as functions of (u,s)
    std::array<JetVec3<T>, 6> eta;   // eta[k] = eta^k f, k = 1..5 used

    explicit EtaCalculus(const MapGerm<T>& g, int extend_to = 0)
    {
        for (int i = 0; i < 3; ++i) {
            f[i] = g.comp[i].extended(extend_to);
            fu[i] = f[i].differentiate(Var::u);
        }
        JetVec3<T> fv, fvv, fvvv;
        for (int i = 0; i < 3; ++i) {
            fv[i] = f[i].differentiate(Var::v);
            fvv[i] = fv[i].differentiate(Var::v);
            fvvv[i] = fvv[i].differentiate(Var::v);
        }
        Jet<T> fu2 = dot(fu, fu).restrict_zero(Var::v);
        Jet<T> inv_fu2 = fu2.invert_unit();
        Jet<T> zero(fu2.order());
        a1 = (zero - dot(fvv, fu).restrict_zero(Var::v)) * inv_fu2;
        a2 = (zero - dot(fvvv, fu).restrict_zero(Var::v)) * inv_fu2 * (T(1) / T(2));
        int n = a1.order();
        Jet<T> v = Jet<T>::variable(Var::v, n);
        Jet<T> A = v * a1 + v * v * a2;
        eta[0] = f;
        for (int k = 1; k <= 5; ++k)
            for (int i = 0; i < 3; ++i)
                eta[k][i] = A * eta[k - 1][i].differentiate(Var::u) +
                            eta[k - 1][i].differentiate(Var::v);
    }
};

/// Eta data evaluated at one second-stratum point (u0, 0) at s = sigma s~^2.
struct EtaFrame {
    double u0 = 0.0, s0 = 0.0, s_tilde = 0.0;
    Vec3 fu{}, eta2{}, eta3{}, eta4{}, eta5{};
    double ell = 0.0;          // least-squares factor in eta^3 f = ell eta^2 f
    double ell_closed = 0.0;   // displayed closed form at u = 0
    bool ell_diagnostic = false;
    JetD a1, a2;               // field coefficients along v = 0, as jets in (u,s)
    double a1_at_point = 0.0, a2_at_point = 0.0;
};

template <typename S>
EtaFrame eta_frame(const FrontalNormalForm<S>& fnf, double u0, double s_tilde)
{
    auto e = fnf.expand();
    if (e.degenerate()) throw DegenerateD2("eta_frame: d2(0) = 0");
    double s0 = (e.d2_sign > 0 ? -1.0 : 1.0) * s_tilde * s_tilde;
    JetD c1 = fnf.c1().template cast<double>();
    if (std::abs(c1.evaluate({u0, 0.0, s0})) > 1e-9)
        throw NotInS2("eta_frame: the point does not lie on the second stratum");

    MapGerm<S> g = assemble(fnf);
    EtaCalculus<double> calc(g.template cast<double>(), 14);
    EtaFrame out;
    out.u0 = u0;
    out.s0 = s0;
    out.s_tilde = s_tilde;
    auto ev = [&](const JetVec3<double>& j) -> Vec3 {
        return {j[0].evaluate({u0, 0.0, s0}), j[1].evaluate({u0, 0.0, s0}),
                j[2].evaluate({u0, 0.0, s0})};
    };
    out.fu = ev(calc.fu);
    out.eta2 = ev(calc.eta[2]);
    out.eta3 = ev(calc.eta[3]);
    out.eta4 = ev(calc.eta[4]);
    out.eta5 = ev(calc.eta[5]);
    out.a1 = calc.a1;
    out.a2 = calc.a2;
    out.a1_at_point = calc.a1.evaluate({u0, 0.0, s0});
    out.a2_at_point = calc.a2.evaluate({u0, 0.0, s0});

    double denom = vdot(out.eta2, out.eta2);
    out.ell = denom == 0.0 ? 0.0 : vdot(out.eta3, out.eta2) / denom;

    // displayed closed form, evaluated at u = 0
    auto at0 = [&](const Jet<S>& j) { return j.template cast<double>().evaluate({0.0, 0.0, s0}); };
    double st4 = s_tilde * s_tilde * s_tilde * s_tilde;
    double f24v = at0(fnf.f24), f34v = at0(fnf.f34), c0v = at0(fnf.c0());
    double den = 1.0 - st4 * f24v * c0v * f34v + st4 * f34v * f34v;
    out.ell_closed = den == 0.0 ? 0.0 : -3.0 * st4 * f24v * f34v / den;
    out.ell_diagnostic = std::abs(out.ell - out.ell_closed) > 1e-9 * (1.0 + std::abs(out.ell));
    return out;
}

struct BiasPair {
    double r_b = 0.0, r_c = 0.0;
};

/// Bias and secondary cuspidal curvature at a second-stratum point, from the
/// displayed quotients over the eta frame.
template <typename S>
BiasPair bias_secondary(const FrontalNormalForm<S>& fnf, double u0, double s_tilde)
{
    EtaFrame fr = eta_frame(fnf, u0, s_tilde);
    double fu_n = vnorm(fr.fu);
    Vec3 fxe = vcross(fr.fu, fr.eta2);
    double fxe_n = vnorm(fxe);
    if (fxe_n < 1e-12)
        throw DegenerateFrame("bias_secondary: f_u x eta^2 f vanishes at the point");
    BiasPair out;
    out.r_b = fu_n * fu_n * vdet(fr.fu, fr.eta2, fr.eta4) / (fxe_n * fxe_n * fxe_n);
    Vec3 comb = vadd(vscale(fr.eta5, 3.0), vscale(fr.eta4, -10.0 * fr.ell));
    out.r_c = std::pow(fu_n, 2.5) * vdet(fr.fu, fr.eta2, comb) / std::pow(fxe_n, 3.5);
    return out;
}

struct BiasSeries {
    double r_b0 = 0.0, r_b1 = 0.0; // r_b = r_b0 + r_b1 s~ + O(s~^2)
    double r_c0 = 0.0, r_c1 = 0.0;
};

/// Linear expansions of the bias and secondary cuspidal curvature in the
/// deformation: constant terms 6 c2(0,0,0) and 45 sqrt(2) c3(0,0,0).
template <typename S>
BiasSeries bias_secondary_series(const FrontalNormalForm<S>& fnf)
{
    auto e = fnf.expand();
    if (e.degenerate() || e.d2_sign < 0)
        throw DegenerateD2("bias_secondary_series: requires d2(0) > 0");
    double d20 = e.d20_approx();
    double c2_0 = to_double(fnf.c2().constant_term());
    double c2_u = to_double(fnf.c2().differentiate(Var::u).constant_term());
    double c3_0 = to_double(fnf.c3().constant_term());
    double c3_u = to_double(fnf.c3().differentiate(Var::u).constant_term());
    double c0_u = to_double(fnf.c0().differentiate(Var::u).constant_term());
    double f21_0 = to_double(fnf.f21.constant_term());
    const double rt2 = std::sqrt(2.0);
    BiasSeries out;
    out.r_b0 = 6.0 * c2_0;
    out.r_b1 = 6.0 * (-2.0 * f21_0 * c0_u + c2_u) / d20;
    out.r_c0 = 45.0 * rt2 * c3_0;
    out.r_c1 = 45.0 * rt2 * c3_u / d20;
    return out;
}

// ---------------------------------------------------------------------------
// Trajectory Frenet data and the printed recovery formulas
// ---------------------------------------------------------------------------

struct TrajectoryFrenet {
    double kappa_closed = 0.0;
    double kappa_oracle = 0.0;
    bool degenerate = false;        // kappa = 0: tau and kappa' suppressed
    double kappa_prime_printed = 0.0, tau_printed = 0.0;
    double kappa_prime_oracle = 0.0, tau_oracle = 0.0;
    bool printed_kappa_prime_agrees = false;
    bool printed_tau_agrees = false;
};

/// Curvature, torsion and curvature derivative of the singular-point
/// trajectory gamma(s~) = f(u(s~), 0, -s~^2) at s~ = 0. The closed form for
/// kappa and the printed combinations for kappa' and tau are evaluated
/// literally; the oracle path runs standard Frenet formulas over jets in s~.
template <typename S>
TrajectoryFrenet trajectory_frenet(const FrontalNormalForm<S>& fnf)
{
    auto e = fnf.expand();
    if (e.degenerate() || e.d2_sign < 0)
        throw DegenerateD2("trajectory_frenet: requires d2(0) > 0");
    double d20 = e.d20_approx();
    double f21_0 = to_double(fnf.f21.constant_term());
    double f31_0 = to_double(fnf.f31.constant_term());
    double f21_u = to_double(fnf.f21.differentiate(Var::u).constant_term());
    double f31_u = to_double(fnf.f31.differentiate(Var::u).constant_term());
    double f24_0 = to_double(fnf.f24.constant_term());
    double f34_0 = to_double(fnf.f34.constant_term());
    double gg = std::sqrt(f21_0 * f21_0 + f31_0 * f31_0);

    TrajectoryFrenet out;
    out.kappa_closed = 2.0 * gg;
    if (gg == 0.0) out.degenerate = true;

    if (!out.degenerate) {
        out.kappa_prime_printed = 6.0 * f21_0 * d20 * f24_0 / gg +
                                  6.0 * f31_0 * d20 * f34_0 / gg +
                                  6.0 * (f21_0 * f21_u + f31_0 * f31_u) / (d20 * gg);
        out.tau_printed = 3.0 * f31_0 * d20 * d20 * f24_0 / gg +
                          6.0 * f21_0 * d20 * d20 * f34_0 / gg +
                          3.0 * (-f31_0 * f21_u + f21_0 * f31_u) / (d20 * gg);
    }

    // Frenet oracle over jets in s~
    const int m = 6;
    Jet<S> u_series = solve_u_series(fnf, m);
    JetD u_t = u_series.template cast<double>();
    JetD t = JetD::variable(Var::u, m);
    JetD s_t = JetD(m) - t * t;
    JetVec3<double> gamma;
    MapGerm<S> g = assemble(fnf);
    for (int i = 0; i < 3; ++i)
        gamma[i] = JetD::compose(g.comp[i].template cast<double>(), {u_t, JetD(m), s_t});
    JetVec3<double> g1, g2, g3;
    for (int i = 0; i < 3; ++i) {
        g1[i] = gamma[i].differentiate(Var::u);
        g2[i] = g1[i].differentiate(Var::u);
        g3[i] = g2[i].differentiate(Var::u);
    }
    JetVec3<double> w = cross(g1, g2);
    JetD w2 = dot(w, w);
    JetD speed2 = dot(g1, g1);
    if (w2.constant_term() <= 0.0) {
        out.kappa_oracle = 0.0;
        out.degenerate = true;
        return out;
    }
    JetD kappa_jet = w2.sqrt_unit() * speed2.sqrt_unit().invert_unit() * speed2.invert_unit();
    out.kappa_oracle = kappa_jet.constant_term();
    out.kappa_prime_oracle = kappa_jet.coeff(1, 0, 0);
    out.tau_oracle = det3(g1, g2, g3).constant_term() / w2.constant_term();
    out.printed_kappa_prime_agrees =
        std::abs(out.kappa_prime_printed - out.kappa_prime_oracle) <=
        1e-8 * (1.0 + std::abs(out.kappa_prime_oracle));
    out.printed_tau_agrees = std::abs(out.tau_printed - out.tau_oracle) <=
                             1e-8 * (1.0 + std::abs(out.tau_oracle));
    return out;
}

/// The printed recovery formulas for f24(0,0) and f34(0,0) from the Frenet
/// data of the trajectory, evaluated literally as displayed.
struct RecoveredCoefficients {
    double f24 = 0.0, f34 = 0.0;
};

inline RecoveredCoefficients recover_f24_f34(double kappa, double tau, double kappa_prime,
                                             double f21_0, double f31_0, double df31du_0,
                                             double d20)
{
    if (kappa == 0.0) throw ZeroCurvature("recover_f24_f34: kappa = 0");
    RecoveredCoefficients out;
    double den = 3.0 * kappa * d20 * d20;
    out.f24 = (kappa * tau * f31_0 - f21_0 * d20 * kappa_prime + 3.0 * kappa * df31du_0) / den;
    out.f34 = -(kappa * tau * f21_0 + f31_0 * d20 * kappa_prime - 3.0 * kappa * df31du_0) / den;
    return out;
}

// ---------------------------------------------------------------------------
// Per-point invariant report
// ---------------------------------------------------------------------------

struct InvariantReport {
    double u0 = 0.0, s_tilde = 0.0;
    SingularityLabel label;
    double r_b = 0.0, r_c = 0.0;
    Method r_b_method = Method::oracle, r_c_method = Method::oracle;
    double kappa_g_abs = 0.0, kappa_n = 0.0;
    Method kappa_g_method = Method::closed_form, kappa_n_method = Method::closed_form;
};

} // namespace cuspjet
