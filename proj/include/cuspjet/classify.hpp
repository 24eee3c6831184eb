#pragma once

#include "cuspjet/frontal.hpp"
#include "cuspjet/germ.hpp"

#include <string>
#include <vector>

namespace cuspjet {

enum class TwoJetClass { plane, cross };   // (u,v^2,0) vs (u,v^2,uv)

/// The 2-jet class of the normal form is decided by (f33)_u(0,0).
template <typename S>
TwoJetClass two_jet_class(const NormalFormS1<S>& nf)
{
    S d = nf.f33.differentiate(Var::u).constant_term();
    return scalar_is_zero(d) ? TwoJetClass::plane : TwoJetClass::cross;
}

inline const char* to_string(TwoJetClass c)
{
    return c == TwoJetClass::plane ? "(u,v^2,0)" : "(u,v^2,uv)";
}

enum class SingularityKind {
    RegularPoint,
    CuspidalEdge,
    CuspidalCrossCap,
    CuspidalSk,
    Unclassified,
};

struct SingularityLabel {
    SingularityKind kind = SingularityKind::Unclassified;
    int k = -1;                  // for CuspidalSk (and 0 for the cross cap)
    int sign = 0;                // +1 / -1; for even k the two signs coincide
    bool sign_equivalent = false; // set when k is even
    std::vector<double> witness; // the tested derivative values, then c3(0,0,0)

    std::string to_string() const
    {
        switch (kind) {
            case SingularityKind::RegularPoint: return "regular point";
            case SingularityKind::CuspidalEdge: return "cuspidal edge";
            case SingularityKind::CuspidalCrossCap: return "cuspidal cross cap";
            case SingularityKind::CuspidalSk: {
                std::string s = "cuspidal S_" + std::to_string(k);
                s += sign > 0 ? "^+" : "^-";
                if (sign_equivalent) s += " (signs equivalent)";
                return s;
            }
            default: return "unclassified";
        }
    }
};

/// Recognition at the origin of the s=0 slice, driven by the u-derivatives
/// of c1 against c3(0,0,0): cuspidal edge when c1(0,0,0) != 0, otherwise the
/// smallest k with a nonvanishing (k+1)-st derivative decides, the product
/// with c3(0,0,0) giving the sign. k=0 is the cuspidal cross cap.
template <typename S>
SingularityLabel classify_origin(const FrontalNormalForm<S>& fnf)
{
    SingularityLabel out;
    const Jet<S>& c1 = fnf.c1();
    S c3_0 = fnf.c3().constant_term();
    out.witness.push_back(to_double(c3_0));

    S at0 = c1.coeff(0, 0, 0);
    out.witness.push_back(to_double(at0));
    if (!scalar_is_zero(at0)) {
        out.kind = SingularityKind::CuspidalEdge;
        return out;
    }

    // u-derivative values at the origin, scanned for the first nonzero
    Jet<S> d = c1;
    for (int k = 0; k + 1 <= c1.order(); ++k) {
        d = d.differentiate(Var::u);
        S val = d.coeff(0, 0, 0);
        out.witness.push_back(to_double(val));
        if (scalar_is_zero(val)) continue;
        if (scalar_is_zero(c3_0)) {
            out.kind = SingularityKind::Unclassified;
            return out;
        }
        out.k = k;
        out.sign = scalar_sign(val) * scalar_sign(c3_0) > 0 ? +1 : -1;
        out.sign_equivalent = (k % 2 == 0) && k > 0;
        out.kind = k == 0 ? SingularityKind::CuspidalCrossCap : SingularityKind::CuspidalSk;
        return out;
    }
    out.kind = SingularityKind::Unclassified; // not witnessed at this order
    return out;
}

/// Label one singular point (u0, 0) at deformation value s.
template <typename S>
SingularityLabel label_point(const FrontalNormalForm<S>& fnf, double u0, double s,
                             double tol = 1e-9)
{
    JetD c1 = fnf.c1().template cast<double>();
    double c1_val = c1.evaluate({u0, 0.0, s});
    if (std::abs(c1_val) > tol) {
        SingularityLabel out;
        out.kind = SingularityKind::CuspidalEdge;
        out.witness = {c1_val};
        return out;
    }
    if (u0 == 0.0 && s == 0.0) return classify_origin(fnf);
    SingularityLabel out;
    out.kind = SingularityKind::CuspidalCrossCap;
    out.k = 0;
    out.witness = {c1_val};
    return out;
}

/// All labeled second-stratum points at s = -sign(d2(0)) * s_tilde^2: away
/// from the origin they are cuspidal cross caps; at s_tilde = 0 the origin
/// is labeled by the recognition at the origin.
template <typename S>
std::vector<std::pair<double, SingularityLabel>>
label_singular_points(const FrontalNormalForm<S>& fnf, double s_tilde)
{
    auto exp = fnf.expand();
    if (exp.degenerate())
        throw DegenerateD2("label_singular_points: d2(0) = 0");
    double s = (exp.d2_sign > 0 ? -1.0 : 1.0) * s_tilde * s_tilde;
    std::vector<std::pair<double, SingularityLabel>> out;
    if (s_tilde == 0.0) {
        out.push_back({0.0, classify_origin(fnf)});
        return out;
    }
    auto sets = singular_sets(fnf, s);
    for (double r : sets.s2_roots) out.push_back({r, label_point(fnf, r, s)});
    return out;
}

} // namespace cuspjet
