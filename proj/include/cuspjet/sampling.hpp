#pragma once

// Deterministic random germs, transforms and rotations for the property and
// verification suites. Everything is driven by a caller-supplied RNG so the
// suites are reproducible from a seed.

#include "cuspjet/germ.hpp"
#include "cuspjet/normalize.hpp"

#include <random>

namespace cuspjet::sampling {

using Rng = std::mt19937_64;

inline Rat small_rat(Rng& rng, int max_num = 4, int max_den = 3)
{
    std::uniform_int_distribution<long long> num(-max_num, max_num), den(1, max_den);
    return Rat(num(rng), den(rng));
}

inline Rat small_rat_nonzero(Rng& rng, int max_num = 4, int max_den = 3)
{
    Rat r;
    do {
        r = small_rat(rng, max_num, max_den);
    } while (r.is_zero());
    return r;
}

/// Sparse random jet with the allowed variables and degree window.
inline JetQ sparse_jet(Rng& rng, int order, bool u_ok, bool v_ok, bool s_ok, int deg_min,
                       int deg_max, int tries = 5)
{
    JetQ j(order);
    std::uniform_int_distribution<int> ed(0, deg_max);
    for (int t = 0; t < tries; ++t) {
        int i = u_ok ? ed(rng) : 0;
        int jj = v_ok ? ed(rng) : 0;
        int k = s_ok ? ed(rng) : 0;
        int tot = i + jj + k;
        if (tot < deg_min || tot > deg_max || tot > order) continue;
        j.set_coeff(Expo(i, jj, k), small_rat(rng));
    }
    return j;
}

/// Rational rotation from a random quaternion with rational entries.
inline Mat3<Rat> rational_rotation(Rng& rng)
{
    std::uniform_int_distribution<long long> qd(-3, 3);
    long long a = 0, b = 0, c = 0, d = 0;
    while (a == 0 && b == 0 && c == 0 && d == 0) {
        a = qd(rng);
        b = qd(rng);
        c = qd(rng);
        d = qd(rng);
    }
    Rat A(a), B(b), C(c), D(d);
    Rat nrm = A * A + B * B + C * C + D * D;
    Mat3<Rat> R;
    R.m[0][0] = (A * A + B * B - C * C - D * D) / nrm;
    R.m[0][1] = Rat(2) * (B * C - A * D) / nrm;
    R.m[0][2] = Rat(2) * (B * D + A * C) / nrm;
    R.m[1][0] = Rat(2) * (B * C + A * D) / nrm;
    R.m[1][1] = (A * A - B * B + C * C - D * D) / nrm;
    R.m[1][2] = Rat(2) * (C * D - A * B) / nrm;
    R.m[2][0] = Rat(2) * (B * D - A * C) / nrm;
    R.m[2][1] = Rat(2) * (C * D + A * B) / nrm;
    R.m[2][2] = (A * A - B * B - C * C + D * D) / nrm;
    return R;
}

/// Random source diffeomorphism of the admissible shape: components
/// (phi1, phi2, phi3(s)) with no pure-s monomials in phi1/phi2 (so the
/// deformation axis is preserved), positive u/v leading coefficients and
/// dphi3/ds(0) > 0.
inline JetVec3<Rat> admissible_source_transform(Rng& rng, int order)
{
    std::uniform_int_distribution<long long> pos(1, 3);
    Rat a(pos(rng), pos(rng)); // phi1_u(0) > 0
    Rat b(pos(rng), pos(rng)); // phi2_v(0) > 0
    Rat c(pos(rng), pos(rng)); // dphi3/ds(0) > 0
    Rat mix_uv = small_rat(rng, 2, 2);
    Rat mix_vu = small_rat(rng, 2, 2);
    if ((a * b - mix_uv * mix_vu).sign() <= 0) mix_uv = Rat(0);

    JetQ phi1 = JetQ::variable(Var::u, order) * a + JetQ::variable(Var::v, order) * mix_uv;
    JetQ phi2 = JetQ::variable(Var::v, order) * b + JetQ::variable(Var::u, order) * mix_vu;
    auto strip_pure_s = [&](JetQ j) {
        JetQ out(order);
        for (const auto& [e, coef] : j.terms())
            if (e[Var::u] != 0 || e[Var::v] != 0) out.set_coeff(e, coef);
        return out;
    };
    phi1 = phi1 + strip_pure_s(sparse_jet(rng, order, true, true, true, 2, 3, 3));
    phi2 = phi2 + strip_pure_s(sparse_jet(rng, order, true, true, true, 2, 3, 3));
    JetQ phi3 = JetQ::variable(Var::s, order) * c;
    std::uniform_int_distribution<int> kd(2, 3);
    phi3 = phi3 + JetQ::monomial(Expo(0, 0, kd(rng)), small_rat(rng, 2, 2), order);
    return {phi1, phi2, phi3};
}

/// Random normal form in the pinned gauge (c1(0,s) = s), with every
/// coefficient inside the degree window the assembled germ can represent,
/// so assemble -> normalize reproduces it exactly. d2(0) is forced to be
/// the square of a small rational so the series work stays exact; pass
/// want_frontal=false to add a nonzero obstruction. Needs order >= 6.
inline NormalFormS1<Rat> pinned_normal_form(Rng& rng, int order, bool want_frontal,
                                            bool force_positive_d2 = true)
{
    const int n = order;
    JetQ u = JetQ::variable(Var::u, n), s = JetQ::variable(Var::s, n);

    JetQ f21 = sparse_jet(rng, n, true, false, false, 0, n - 2, 3);
    JetQ f24 = sparse_jet(rng, n, true, false, true, 0, n - 2, 3);
    JetQ f31 = sparse_jet(rng, n, true, false, false, 0, n - 2, 3);
    JetQ f34 = sparse_jet(rng, n, true, false, true, 0, n - 2, 3);

    // c1 = s + u s d1 + u^2 d2 + u^3 d3 + u^4 d4 within total degree n-3
    Rat d20 = small_rat_nonzero(rng, 2, 2);
    Rat d2c = d20 * d20;
    if (!force_positive_d2 && (rng() & 1u)) d2c = -d2c;
    JetQ c1 = s;
    c1 = c1 + u * s * sparse_jet(rng, n, false, false, true, 0, 1, 2);
    c1 = c1 + u * u * (JetQ::constant(d2c, n) + s * sparse_jet(rng, n, false, false, true, 0, 1, 2));
    c1 = c1 + u * u * u * sparse_jet(rng, n, false, false, true, 0, 1, 2);
    c1 = c1 + u * u * u * u * sparse_jet(rng, n, true, false, true, 0, 1, 2);
    c1 = c1.truncated(n - 3).extended(n - 3);

    JetQ c0 = sparse_jet(rng, n, true, false, true, 1, std::max(n - 4, 1), 2).truncated(n - 2);
    JetQ c2 = sparse_jet(rng, n, true, true, true, 0, 1, 2).truncated(std::max(n - 4, 0));
    JetQ c3 = (JetQ::constant(small_rat_nonzero(rng, 3, 2), n) +
               sparse_jet(rng, n, true, true, true, 1, 1, 2))
                  .truncated(std::max(n - 5, 0));

    F32Parts<Rat> parts{c0, c1, c2, c3};
    JetQ f32 = reassemble_f32(parts, n - 2).extended(n);

    JetQ f33(n);
    if (!want_frontal) {
        f33 = sparse_jet(rng, n, true, false, true, 1, n - 1, 3);
        if (f33.is_zero()) f33 = u; // keep the obstruction honestly nonzero
    }
    return NormalFormS1<Rat>(f21, f24, f31, f32, f33, f34);
}

/// Transformed copy of an assembled normal form: random rotation and
/// admissible source change, still a valid deformation.
inline MapGerm<Rat> scramble(Rng& rng, const NormalFormS1<Rat>& nf)
{
    MapGerm<Rat> g = assemble(nf);
    auto psi = admissible_source_transform(rng, g.order());
    auto R = rational_rotation(rng);
    return apply_transform(R, psi, g);
}

} // namespace cuspjet::sampling
