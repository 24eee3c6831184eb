#pragma once

#include "cuspjet/germ.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace cuspjet {

/// Unit normal field along a germ, with its defining residuals kept as a
/// certificate: <f_u, nu> = <f_v, nu> = 0 and |nu|^2 = 1 through the field's
/// truncation order.
template <typename S>
struct NormalField {
    JetVec3<S> nu;
    Jet<S> unit_residual;   // |nu|^2 - 1
    Jet<S> fu_residual;     // <f_u, nu>
    Jet<S> fv_residual;     // <f_v, nu>

    bool exact() const
    {
        return unit_residual.is_zero() && fu_residual.is_zero() && fv_residual.is_zero();
    }
};

/// Attempt the unit-normal construction on a germ whose singular set is the
/// v-axis {v=0}: take f_u x f_v, strip the common factor v, and normalize.
/// Returns nothing when the cross product is not divisible by v or the
/// stripped field vanishes at the origin; for normal-shaped germs both
/// happen exactly when the obstruction coefficient f33 is present.
template <typename S>
std::optional<NormalField<S>> try_unit_normal(const MapGerm<S>& f)
{
    JetVec3<S> fu = {f.comp[0].differentiate(Var::u), f.comp[1].differentiate(Var::u),
                     f.comp[2].differentiate(Var::u)};
    JetVec3<S> fv = {f.comp[0].differentiate(Var::v), f.comp[1].differentiate(Var::v),
                     f.comp[2].differentiate(Var::v)};
    JetVec3<S> n = cross(fu, fv);
    for (const auto& c : n)
        if (!c.divisible_by(Var::v)) return std::nullopt;
    JetVec3<S> m = {n[0].divide_by(Var::v), n[1].divide_by(Var::v), n[2].divide_by(Var::v)};
    Jet<S> norm2 = dot(m, m);
    if (scalar_is_zero(norm2.constant_term())) return std::nullopt;
    if (to_double(norm2.constant_term()) < 0) return std::nullopt;
    Jet<S> inv_norm;
    try {
        inv_norm = norm2.sqrt_unit().invert_unit();
    } catch (const Error&) {
        return std::nullopt;
    } catch (const arithmetic_error&) {
        return std::nullopt; // rational mode: |m|^2(0) not a perfect square
    }
    NormalField<S> out;
    for (int i = 0; i < 3; ++i) out.nu[i] = m[i] * inv_norm;
    out.unit_residual = dot(out.nu, out.nu) - Jet<S>::constant(S(1), out.nu[0].order());
    out.fu_residual = dot(fu, out.nu);
    out.fv_residual = dot(fv, out.nu);
    if (!out.exact()) return std::nullopt;
    return out;
}

/// Unit normal of a frontal germ; throws NotFrontal when the construction
/// fails at some retained order.
template <typename S>
NormalField<S> unit_normal(const MapGerm<S>& f)
{
    auto r = try_unit_normal(f);
    if (!r)
        throw NotFrontal("unit_normal: no unit normal field exists through the truncation order");
    return *r;
}

/// Identifier of singularities: lambda = det(f_u, f_v, nu). Its zero set is
/// the singular set of f.
template <typename S>
Jet<S> identifier_lambda(const MapGerm<S>& f, const NormalField<S>& field)
{
    JetVec3<S> fu = {f.comp[0].differentiate(Var::u), f.comp[1].differentiate(Var::u),
                     f.comp[2].differentiate(Var::u)};
    JetVec3<S> fv = {f.comp[0].differentiate(Var::v), f.comp[1].differentiate(Var::v),
                     f.comp[2].differentiate(Var::v)};
    return det3(fu, fv, field.nu);
}

/// Frontality of the normal form is the vanishing of the obstruction
/// coefficient, exactly, through the truncation order.
template <typename S>
bool is_frontal(const NormalFormS1<S>& nf)
{
    return nf.f33.is_zero();
}

template <typename S>
struct Frontalization {
    FrontalNormalForm<S> frontal_part;
    Jet<S> obstruction;     // v * f33(u,s)
};

/// Split off the obstruction: the frontal part is the normal form with f33
/// deleted, and assemble(nf) = assemble(frontal part) + (0,0,obstruction).
/// Identity on frontals, hence idempotent.
template <typename S>
Frontalization<S> minimal_frontalization(const NormalFormS1<S>& nf)
{
    Frontalization<S> out;
    NormalFormS1<S> cut = nf;
    cut.f33 = Jet<S>(nf.f33.order());
    out.frontal_part = FrontalNormalForm<S>(cut);
    out.obstruction = nf.f33.mul_monomial(Expo(0, 1, 0), S(1));
    return out;
}

/// Singular data of a frontal normal form at a fixed deformation value:
/// the first stratum is always the v-axis; the second consists of the real
/// roots of c1(., s0).
struct SingularSets {
    bool s1_is_v_axis = true;
    std::vector<double> s2_roots;
};

namespace detail {

/// Safeguarded Newton for a polynomial in u: backtracking on the residual,
/// with a bracket-scan + bisection fallback near the seed.
inline double polish_root(const JetD& poly, double seed, double radius, int max_iter = 60)
{
    JetD dpoly = poly.differentiate(Var::u);
    auto eval = [&](double x) { return poly.evaluate({x, 0.0, 0.0}); };
    auto deriv = [&](double x) { return dpoly.evaluate({x, 0.0, 0.0}); };

    double x = seed, fx = eval(x);
    for (int i = 0; i < max_iter; ++i) {
        if (fx == 0.0) return x;
        double dx = deriv(x);
        if (dx == 0.0) break;
        double step = fx / dx;
        if (std::abs(step) < 4e-17 * (1.0 + std::abs(x))) return x; // converged to roundoff
        int halvings = 0;
        double next = x - step, fn = eval(next);
        while (halvings < 40 && (!std::isfinite(fn) || std::abs(fn) > std::abs(fx))) {
            step *= 0.5;
            next = x - step;
            fn = eval(next);
            ++halvings;
        }
        if (halvings == 40 || std::abs(next - seed) > radius) break;
        x = next;
        fx = fn;
    }
    if (std::abs(fx) < 1e-12) return x;

    // bracket scan around the seed, then bisect
    const int grid = 256;
    double best_lo = 0, best_hi = 0;
    bool found = false;
    double prev_x = seed - radius, prev_f = eval(prev_x);
    for (int i = 1; i <= grid; ++i) {
        double cx = seed - radius + 2.0 * radius * i / grid;
        double cf = eval(cx);
        if (prev_f == 0.0) return prev_x;
        if (prev_f * cf < 0.0) {
            if (!found || std::abs(0.5 * (prev_x + cx) - seed) <
                              std::abs(0.5 * (best_lo + best_hi) - seed)) {
                best_lo = prev_x;
                best_hi = cx;
                found = true;
            }
        }
        prev_x = cx;
        prev_f = cf;
    }
    if (found) {
        double lo = best_lo, hi = best_hi, flo = eval(lo);
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi), fm = eval(mid);
            if (fm == 0.0) return mid;
            if (flo * fm < 0.0) hi = mid;
            else {
                lo = mid;
                flo = fm;
            }
        }
        double r = 0.5 * (lo + hi);
        if (std::abs(eval(r)) < 1e-12) return r;
    }
    throw NoConvergence("polish_root: no root found near seed " + std::to_string(seed));
}

} // namespace detail

/// S2 roots of c1(u, s0) = 0 near the origin. For d2(0) > 0 roots exist for
/// s0 <= 0 and are seeded at +-sqrt(-s0)/d20; the d2(0) < 0 case mirrors to
/// s0 >= 0 with the same magnitude seeds.
template <typename S>
SingularSets singular_sets(const FrontalNormalForm<S>& fnf, double s0)
{
    SingularSets out;
    auto exp = fnf.expand();
    if (exp.degenerate())
        throw DegenerateD2("singular_sets: d2(0) = 0");
    double d20 = exp.d20_approx();
    double inside = exp.d2_sign > 0 ? -s0 : s0;
    if (inside < 0) return out; // no second-stratum points on this side
    if (inside == 0) {
        out.s2_roots.push_back(0.0);
        return out;
    }
    // c1 with s frozen at s0: recenter in s, then drop the s-slot
    JetD c1s = fnf.c1().template cast<double>();
    JetD poly = c1s.shift_var(Var::s, s0).restrict_zero(Var::s);
    double seed = std::sqrt(inside) / d20;
    double radius = 3 * seed + 1e-6;
    double r_plus = detail::polish_root(poly, seed, radius);
    double r_minus = detail::polish_root(poly, -seed, radius);
    out.s2_roots = {r_minus, r_plus};
    return out;
}

} // namespace cuspjet
