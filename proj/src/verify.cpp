#include "cuspjet/verify.hpp"

#include "cuspjet/builtins.hpp"
#include "cuspjet/geometry.hpp"
#include "cuspjet/mesh.hpp"
#include "cuspjet/normalize.hpp"
#include "cuspjet/sampling.hpp"
#include "cuspjet/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace cuspjet {

namespace {

using sampling::Rng;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what)
    {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

std::string fmtg(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// a tame pinned frontal form whose trajectory series is well inside its
// validity window on s~ <= 0.1 and whose quartic series gap stays above the
// floating-point measurement floor down to s~ = 1e-3 (d20 = 1, unit-size
// tails); the remaining coefficient functions stay freely random
FrontalNormalForm<Rat> tame_series_form(Rng& rng, int n = 8)
{
    std::uniform_int_distribution<long long> pm1(-1, 1);
    JetQ u = JetQ::variable(Var::u, n), s = JetQ::variable(Var::s, n);
    JetQ c1 = s + u * s * JetQ::constant(Rat(pm1(rng)), n) +
              u * u * (JetQ::constant(Rat(1), n) + s * JetQ::constant(Rat(pm1(rng)), n)) +
              u * u * u * JetQ::constant(Rat(pm1(rng)), n) +
              u * u * u * u * JetQ::constant(Rat(pm1(rng)), n);
    c1 = c1.truncated(n - 3);
    JetQ c0 = (u * JetQ::constant(Rat(pm1(rng)), n) + u * s * JetQ::constant(Rat(pm1(rng)), n))
                  .truncated(n - 2);
    JetQ c2 = (JetQ::constant(Rat(pm1(rng)), n) + u * JetQ::constant(Rat(pm1(rng)), n))
                  .truncated(n - 4);
    long long c3c = pm1(rng);
    if (c3c == 0) c3c = 1;
    JetQ c3 = (JetQ::constant(Rat(c3c), n) + u * JetQ::constant(Rat(pm1(rng)), n))
                  .truncated(n - 5);
    F32Parts<Rat> parts{c0, c1, c2, c3};
    JetQ f32 = reassemble_f32(parts, n - 2).extended(n);
    JetQ f21 = JetQ::constant(Rat(pm1(rng)), n) + u * JetQ::constant(Rat(pm1(rng)), n);
    JetQ f24 = JetQ::constant(Rat(pm1(rng)), n);
    JetQ f31 = JetQ::constant(Rat(pm1(rng)), n) + u * JetQ::constant(Rat(pm1(rng)), n);
    JetQ f34 = JetQ::constant(Rat(pm1(rng)), n);
    return FrontalNormalForm<Rat>(NormalFormS1<Rat>(f21, f24, f31, f32, JetQ(n), f34));
}

FrontalNormalForm<Rat> model_form(int pm, int n = 8)
{
    JetQ u = JetQ::variable(Var::u, n), s = JetQ::variable(Var::s, n);
    F32Parts<Rat> parts{JetQ(n - 2), (s + u * u).truncated(n - 3), JetQ(n - 4),
                        JetQ::constant(Rat(pm), n - 5)};
    JetQ f32 = reassemble_f32(parts, n - 2).extended(n);
    return FrontalNormalForm<Rat>(
        NormalFormS1<Rat>(JetQ(n), JetQ(n), JetQ(n), f32, JetQ(n), JetQ(n)));
}

// ---------------------------------------------------------------------------
// acceptance criterion suites
// ---------------------------------------------------------------------------

Check suite_frontality(Rng& rng)
{
    Check c;
    int disagreements = 0, frontal_count = 0;
    for (int rep = 0; rep < 200; ++rep) {
        bool want_frontal = rep % 2 == 0;
        auto nf = sampling::pinned_normal_form(rng, 8, want_frontal);
        bool frontal = is_frontal(nf);
        auto field = try_unit_normal(assemble(nf));
        if (frontal != field.has_value()) ++disagreements;
        if (field) {
            if (!field->exact()) ++disagreements; // certificate must be exact
            ++frontal_count;
        }
    }
    c.require(disagreements == 0,
              "disagreements between f33==0 and the unit-normal construction: " +
                  std::to_string(disagreements));
    c.note("200 germs, " + std::to_string(frontal_count) + " frontal, 0 disagreements");
    return c;
}

Check suite_tables(Rng&)
{
    Check c;
    auto expect_row = [&](const std::string& name, const JetQ& expect_obs,
                          const JetQ& expect_z) {
        auto res = normalize(builtin_germ(name, 8));
        auto fr = minimal_frontalization(res.nf);
        bool obs_ok = fr.obstruction == expect_obs;
        bool part_ok = assemble(fr.frontal_part).z() == expect_z;
        c.require(obs_ok, name + ": obstruction mismatch");
        c.require(part_ok, name + ": frontal part mismatch");
    };
    auto mono = [&](int i, int j, int k, long long coef) {
        return JetQ::monomial(Expo(i, j, k), Rat(coef), 8);
    };
    for (int k = 1; k <= 3; ++k)
        for (int sg : {+1, -1}) {
            std::string suffix = "(" + std::to_string(k) + (sg > 0 ? ",+)" : ",-)");
            expect_row("mond:Sk" + suffix, mono(k + 1, 1, 0, sg), mono(0, 3, 0, 1));
            expect_row("mond_def:Sk" + suffix, mono(k + 1, 1, 0, sg) + mono(0, 1, 1, 1),
                       mono(0, 3, 0, 1) + mono(0, 3, 1, 1));
            expect_row("mond:Bk" + suffix, mono(2, 1, 0, 1), mono(0, 2 * k + 1, 0, sg));
            expect_row("mond_def:Bk" + suffix, mono(2, 1, 0, 1) + mono(0, 1, 1, 1),
                       mono(0, 2 * k + 1, 0, sg) + mono(0, 3, 1, 1));
            expect_row("mond:Ck" + suffix, mono(k, 1, 0, sg), mono(1, 3, 0, 1));
            expect_row("mond_def:Ck" + suffix, mono(k, 1, 0, sg) + mono(0, 1, 1, 1),
                       mono(1, 3, 0, 1) + mono(0, 3, 1, 1));
        }
    expect_row("mond:S0", mono(1, 1, 0, 1), JetQ(8));
    expect_row("mond:F4", mono(3, 1, 0, 1), mono(0, 5, 0, 1));
    expect_row("mond_def:F4_corrected", mono(3, 1, 0, 1) + mono(0, 1, 1, 1),
               mono(0, 5, 0, 1) + mono(0, 3, 1, 1));
    // the printed F4 deformation row keeps its v^6 reading and is flagged
    auto printed = minimal_frontalization(normalize(builtin_germ("mond_def:F4", 8)).nf);
    bool printed_differs = assemble(printed.frontal_part).z().coeff(0, 6, 0) == Rat(1) &&
                           assemble(printed.frontal_part).z().coeff(0, 5, 0) == Rat(0);
    c.require(printed_differs, "printed F4 variant unexpectedly matched the table");
    c.note("tables reproduced for k in {1,2,3}, both signs; printed F4 variant flagged (v^6)");
    return c;
}

Check suite_trajectory_series(Rng& rng)
{
    Check c;
    for (int pm : {+1, -1}) {
        auto fnf = model_form(pm);
        auto ts = trajectory_series(fnf);
        c.require(ts.alpha1 == Rat(1) && ts.alpha2 == Rat(0) && ts.alpha3 == Rat(0),
                  "model alphas differ from (1,0,0)");
        for (double st : {0.05, 0.1, 0.25}) {
            auto roots = solve_singular_u(fnf, st);
            c.require(std::abs(roots.back() - st) < 1e-12 && std::abs(roots.front() + st) < 1e-12,
                      "model roots not +-s~ to 1e-12");
        }
    }
    double worst = 1e9;
    for (int rep = 0; rep < 20; ++rep) {
        auto fnf = tame_series_form(rng);
        auto ts = trajectory_series(fnf);
        double a1 = to_double(ts.alpha1), a2 = to_double(ts.alpha2), a3 = to_double(ts.alpha3);
        std::vector<double> hs = {1e-1, 1e-2, 1e-3}, errs;
        for (double st : hs) {
            double root = solve_singular_u(fnf, st).back();
            errs.push_back(std::abs(root - (a1 * st + a2 * st * st + a3 * st * st * st)));
        }
        worst = std::min(worst, convergence_order(hs, errs));
    }
    c.require(worst >= 3.9, "series-vs-root order " + fmtg(worst) + " below 3.9");
    c.note("20 random germs, worst order " + fmtg(worst));
    return c;
}

Check suite_branch_curv(Rng&)
{
    Check c;
    auto bc = branch_curvatures_s0(model_form(-1));
    c.require(bc.kappa_g == 2.0, "model kappa_g formula != 2");
    c.require(bc.kappa_n == 0.0, "model kappa_n formula != 0");
    c.require(std::abs(bc.kappa_g_oracle - 2.0) < 1e-6,
              "model traced-branch kappa_g off by " + fmtg(std::abs(bc.kappa_g_oracle - 2.0)));
    c.require(std::abs(bc.kappa_n_oracle) < 1e-6, "model traced-branch kappa_n not 0");

    int n = 8;
    JetQ u = JetQ::variable(Var::u, n), s = JetQ::variable(Var::s, n);
    F32Parts<Rat> parts{JetQ(n - 2), (s + u * u).truncated(n - 3), JetQ(n - 4),
                        JetQ::constant(Rat(-1), n - 5)};
    FrontalNormalForm<Rat> varg(NormalFormS1<Rat>{JetQ::constant(Rat(1), n), JetQ(n), JetQ(n),
                                                  reassemble_f32(parts, n - 2).extended(n),
                                                  JetQ(n), JetQ(n)});
    auto bc2 = branch_curvatures_s0(varg);
    c.require(bc2.kappa_g == 4.0, "f21=1 variant kappa_g formula != 4");
    c.require(std::abs(bc2.kappa_g_oracle - 4.0) < 1e-6, "f21=1 variant oracle disagrees");
    c.note("kappa_g: model 2, f21=1 variant 4; oracle agreement within 1e-6");
    return c;
}

Check suite_limit_agreement(Rng& rng)
{
    Check c;
    double worst = 0.0;
    int done = 0, tries = 0;
    while (done < 10 && tries < 60) {
        ++tries;
        auto fnf = tame_series_form(rng);
        if (fnf.c3().constant_term().sign() >= 0) continue; // need the s=0 branch
        try {
            auto lim = si_curvature_limits(fnf);
            auto bc = branch_curvatures_s0(fnf);
            double dg = std::abs(std::abs(lim.kappa_g_oracle) - std::abs(bc.kappa_g));
            double dn = std::abs(std::abs(lim.kappa_n_oracle) - std::abs(bc.kappa_n));
            worst = std::max(worst, std::max(dg, dn));
            // the two closed forms differ by an overall sign only
            c.require(std::abs(std::abs(lim.kappa_g_closed) - std::abs(bc.kappa_g)) < 1e-14,
                      "deformed-side and s=0 closed forms disagree in absolute value");
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    c.require(done == 10, "only " + std::to_string(done) + " admissible germs sampled");
    c.require(worst < 1e-4, "worst |kappa| disagreement " + fmtg(worst));
    c.note("10 germs, worst |extrapolated - closed| = " + fmtg(worst));
    return c;
}

Check suite_bias_secondary(Rng&)
{
    Check c;
    const double rc_expect = 45.0 * std::sqrt(2.0);
    std::vector<double> hs = {0.05, 0.1, 0.2};
    for (int pm : {+1, -1}) {
        auto fnf = model_form(pm);
        std::vector<double> rb_err, rc_err;
        for (double st : hs) {
            double u0 = solve_singular_u(fnf, st).back();
            auto bp = bias_secondary(fnf, u0, st);
            rb_err.push_back(std::abs(bp.r_b));
            rc_err.push_back(std::abs(bp.r_c - pm * rc_expect));
        }
        double so_b = convergence_order(hs, rb_err);
        double so_c = convergence_order(hs, rc_err);
        c.require(so_b >= 1.9, std::string("model r_b order ") + fmtg(so_b));
        c.require(so_c >= 1.9, std::string("model r_c order ") + fmtg(so_c));
    }
    // c2 = 1: bias tends to 6 at the same rate
    int n = 8;
    JetQ u = JetQ::variable(Var::u, n), s = JetQ::variable(Var::s, n);
    F32Parts<Rat> parts{JetQ(n - 2), (s + u * u).truncated(n - 3),
                        JetQ::constant(Rat(1), n - 4), JetQ::constant(Rat(1), n - 5)};
    FrontalNormalForm<Rat> c2germ(NormalFormS1<Rat>{
        JetQ(n), JetQ(n), JetQ(n), reassemble_f32(parts, n - 2).extended(n), JetQ(n), JetQ(n)});
    std::vector<double> err6;
    for (double st : hs) {
        double u0 = solve_singular_u(c2germ, st).back();
        err6.push_back(std::abs(bias_secondary(c2germ, u0, st).r_b - 6.0));
    }
    double so6 = convergence_order(hs, err6);
    c.require(so6 >= 1.9, std::string("c2=1 germ r_b order ") + fmtg(so6));
    c.note("models: r_c -> +-45*sqrt(2), r_b -> 0; c2=1 germ: r_b -> 6; orders >= 1.9");
    return c;
}

Check suite_even_curves(Rng& rng)
{
    Check c;
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    int made = 0;
    double worst = 0.0;
    while (made < 50) {
        int n = 8;
        JetVec3<double> crv;
        for (int i = 0; i < 3; ++i) {
            crv[i] = JetD(n);
            for (int m = 1; m <= 3; ++m)
                crv[i] = crv[i] + JetD::monomial(Expo(0, 2 * m, 0), coef(rng), n);
        }
        Vec3 a = {2 * crv[0].coeff(0, 2, 0), 2 * crv[1].coeff(0, 2, 0),
                  2 * crv[2].coeff(0, 2, 0)};
        if (vnorm(a) < 0.3) continue;
        JetVec3<double> w = {crv[0].differentiate(Var::v).divide_by(Var::v),
                             crv[1].differentiate(Var::v).divide_by(Var::v),
                             crv[2].differentiate(Var::v).divide_by(Var::v)};
        Vec3 mv = {coef(rng), coef(rng), coef(rng)};
        JetVec3<double> mj = {JetD::constant(mv[0], n - 2), JetD::constant(mv[1], n - 2),
                              JetD::constant(mv[2], n - 2)};
        JetVec3<double> wm = cross(w, mj);
        JetD wm2 = dot(wm, wm);
        if (std::abs(wm2.constant_term()) < 0.1) continue;
        JetD inv_norm = wm2.sqrt_unit().invert_unit();
        JetVec3<double> nu = {wm[0] * inv_norm, wm[1] * inv_norm, wm[2] * inv_norm};
        Vec3 nu0 = {nu[0].constant_term(), nu[1].constant_term(), nu[2].constant_term()};
        auto mine = even_curve_curvatures(crv, nu0, +1);

        JetVec3<double> cv, cvv;
        for (int i = 0; i < 3; ++i) {
            cv[i] = crv[i].differentiate(Var::v);
            cvv[i] = cv[i].differentiate(Var::v);
        }
        std::vector<double> ladder, kg, kn;
        double h = 1e-2;
        for (int k = 0; k < 4; ++k, h *= 0.5) {
            auto ev = [&](const JetVec3<double>& j) -> Vec3 {
                return {j[0].evaluate({0, h, 0}), j[1].evaluate({0, h, 0}),
                        j[2].evaluate({0, h, 0})};
            };
            Vec3 d1 = ev(cv), d2 = ev(cvv), nuh = ev(nu);
            nuh = vscale(nuh, 1.0 / vnorm(nuh));
            double sp = vnorm(d1);
            ladder.push_back(h);
            kg.push_back(vdet(d1, d2, nuh) / (sp * sp * sp));
            kn.push_back(vdot(d2, nuh) / (sp * sp));
        }
        worst = std::max(worst, std::abs(richardson_limit(ladder, kg, 2) - mine.kappa_g));
        worst = std::max(worst, std::abs(richardson_limit(ladder, kn, 2) - mine.kappa_n));
        ++made;
    }
    c.require(worst < 1e-8, "worst formula-vs-extrapolation gap " + fmtg(worst));

    // the worked example (v^2, v^4, 0) has kappa_g exactly 2
    int n = 6;
    JetD v = JetD::variable(Var::v, n);
    auto ex = even_curve_curvatures({v * v, v * v * v * v, JetD(n)}, Vec3{0, 0, 1}, +1);
    c.require(ex.kappa_g == 2.0 && ex.kappa_n == 0.0, "worked example (v^2,v^4,0) not exact");
    c.note("50 random even curves, worst gap " + fmtg(worst) + "; worked example exact");
    return c;
}

Check suite_trajectory_frenet(Rng& rng)
{
    Check c;
    int done = 0, f24_hits = 0, f34_hits = 0, predicted_miss_hits = 0;
    double worst_kappa = 0.0;
    std::uniform_int_distribution<long long> pm1(-1, 1), pm2(-2, 2);
    while (done < 10) {
        int n = 8;
        JetQ u = JetQ::variable(Var::u, n), s = JetQ::variable(Var::s, n);
        Rat f21c(pm2(rng)), f31c(pm2(rng));
        if (f21c.is_zero() && f31c.is_zero()) continue;
        Rat f21u(pm1(rng)), f31u(pm1(rng));
        Rat f24c(pm2(rng), 2), f34c(pm2(rng), 2);
        F32Parts<Rat> parts{JetQ(n - 2), (s + u * u).truncated(n - 3), JetQ(n - 4),
                            JetQ::constant(Rat(1), n - 5)};
        FrontalNormalForm<Rat> fnf(NormalFormS1<Rat>{
            JetQ::constant(f21c, n) + u * f21u, JetQ::constant(f24c, n),
            JetQ::constant(f31c, n) + u * f31u, reassemble_f32(parts, n - 2).extended(n),
            JetQ(n), JetQ::constant(f34c, n)});
        auto fr = trajectory_frenet(fnf);
        if (fr.degenerate) continue;
        worst_kappa = std::max(worst_kappa, std::abs(fr.kappa_closed - fr.kappa_oracle));
        auto rec = recover_f24_f34(fr.kappa_oracle, fr.tau_oracle, fr.kappa_prime_oracle,
                                   to_double(f21c), to_double(f31c), to_double(f31u), 1.0);
        double e24 = std::abs(rec.f24 - to_double(f24c));
        double e34 = std::abs(rec.f34 - to_double(f34c));
        if (e24 < 1e-7) ++f24_hits;
        if (e34 < 1e-7) ++f34_hits;
        // the printed f24 formula misses by exactly (df31/du - df21/du)/d20^2
        double predicted = to_double(f31u) - to_double(f21u);
        if (std::abs((rec.f24 - to_double(f24c)) - predicted) < 1e-6) ++predicted_miss_hits;
        ++done;
    }
    c.require(worst_kappa < 1e-10,
              "closed-form kappa vs Frenet oracle gap " + fmtg(worst_kappa));
    c.require(f34_hits == 10, "printed f34 recovery failed on " +
                                  std::to_string(10 - f34_hits) + " germs");
    c.require(predicted_miss_hits == 10,
              "printed f24 recovery deviation does not match the df21/df31 swap");
    c.note("kappa gap " + fmtg(worst_kappa) + "; recovery round trip on 10 germs: printed f34 "
           "formula 10/10, printed f24 formula " +
           std::to_string(f24_hits) +
           "/10 as printed (misses equal the df31-df21 swap on all 10)");
    return c;
}

Check suite_uniqueness(Rng& rng)
{
    Check c;
    int exact = 0;
    for (int rep = 0; rep < 20; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 8, rep % 3 != 0);
        auto moved = sampling::scramble(rng, nf);
        auto res = normalize(moved);
        bool same = res.nf.f21.truncated(4) == nf.f21.truncated(4) &&
                    res.nf.f24.truncated(4) == nf.f24.truncated(4) &&
                    res.nf.f31.truncated(4) == nf.f31.truncated(4) &&
                    res.nf.f32.truncated(4) == nf.f32.truncated(4) &&
                    res.nf.f33.truncated(5) == nf.f33.truncated(5) &&
                    res.nf.f34.truncated(4) == nf.f34.truncated(4);
        // germ-level agreement through total degree 6
        same = same && (assemble(res.nf).x().truncated(6) == assemble(nf).x().truncated(6)) &&
               (assemble(res.nf).y().truncated(6) == assemble(nf).y().truncated(6)) &&
               (assemble(res.nf).z().truncated(6) == assemble(nf).z().truncated(6));
        if (same) ++exact;
    }
    c.require(exact == 20,
              std::to_string(20 - exact) + " of 20 round trips were not coefficient-exact");
    c.note("20 random germs scrambled by rational rotations and admissible source changes; "
           "all reproduced through order 6 exactly");
    return c;
}

Check suite_determinism(Rng&)
{
    Check c;
    auto fnf = model_form(+1);
    SweepOptions opt;
    opt.s_tilde_min = 0.01;
    opt.s_tilde_max = 0.3;
    opt.count = 30;

    std::vector<std::string> runs;
    for (int threads : {1, 8, 1, 8, 1}) {
        opt.threads = threads;
        runs.push_back(sweep_to_csv(run_sweep(fnf, opt)));
    }
    for (size_t i = 1; i < runs.size(); ++i)
        c.require(runs[i] == runs[0], "sweep output differs between runs/thread counts");

    MeshOptions mo;
    mo.s = -1.0;
    mo.grid = 24;
    mo.extent = 1.0;
    auto germ = builtin_germ("fs_plus", 8);
    std::string obj0 = mesh_to_obj(germ, mo);
    for (int i = 0; i < 2; ++i)
        c.require(mesh_to_obj(germ, mo) == obj0, "mesh output differs between runs");
    c.note("sweep identical across 5 runs at 1 and 8 threads; mesh identical across 3 runs");
    return c;
}

// ---------------------------------------------------------------------------
// module property suites
// ---------------------------------------------------------------------------

Check suite_jet_ring(Rng& rng)
{
    Check c;
    auto rnd = [&](int order) {
        JetQ j(order);
        std::uniform_int_distribution<int> ed(0, order);
        for (int t = 0; t < 7; ++t) {
            int i = ed(rng), jj = ed(rng), k = ed(rng);
            if (i + jj + k <= order) j.set_coeff(Expo(i, jj, k), sampling::small_rat(rng));
        }
        return j;
    };
    for (int rep = 0; rep < 60; ++rep) {
        JetQ a = rnd(6), b = rnd(6), d = rnd(6);
        c.require((a + b) + d == a + (b + d), "associativity of + failed");
        c.require((a * b) * d == a * (b * d), "associativity of * failed");
        c.require(a * (b + d) == a * b + a * d, "distributivity failed");
        c.require(a * b == b * a, "commutativity failed");
        for (Var var : {Var::u, Var::v, Var::s})
            c.require((a * b).differentiate(var) ==
                          a.differentiate(var) * b + a * b.differentiate(var),
                      "Leibniz rule failed");
    }
    for (int rep = 0; rep < 20; ++rep) {
        JetQ a = rnd(6);
        a.set_coeff(Expo(0, 0, 0), Rat(rep % 4 + 1, 3));
        c.require(a * a.invert_unit() == JetQ::constant(Rat(1), 6), "invert_unit failed");
        JetQ sq = (a * a).sqrt_unit();
        c.require(sq * sq == a * a, "sqrt_unit failed");
    }
    c.note("ring axioms, Leibniz rule and unit inverses exact on random rational jets");
    return c;
}

Check suite_decompose(Rng& rng)
{
    Check c;
    for (int rep = 0; rep < 60; ++rep) {
        JetQ f32 = sampling::sparse_jet(rng, 8, true, true, true, 0, 8, 10);
        auto p = decompose_f32(f32);
        c.require(reassemble_f32(p, 8) == f32, "decompose/reassemble identity failed");
    }
    c.note("decompose -> reassemble identity exact on 60 random jets");
    return c;
}

Check suite_frontalization_idempotent(Rng& rng)
{
    Check c;
    for (int rep = 0; rep < 20; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 6, rep % 2 == 0);
        auto fr = minimal_frontalization(nf);
        auto again = minimal_frontalization(fr.frontal_part.as_normal_form());
        c.require(again.obstruction.is_zero(), "second frontalization not the identity");
        c.require(assemble(again.frontal_part) == assemble(fr.frontal_part),
                  "frontal part changed under repetition");
        c.require(assemble(nf).z() ==
                      assemble(fr.frontal_part).z() +
                          fr.obstruction.truncated(assemble(fr.frontal_part).z().order()),
                  "obstruction does not account for the difference");
    }
    c.note("idempotence and exact obstruction split on 20 random germs");
    return c;
}

Check suite_eta_conditions(Rng& rng)
{
    Check c;
    for (int rep = 0; rep < 8; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 8, true);
        MapGerm<Rat> g = assemble(FrontalNormalForm<Rat>(nf));
        EtaCalculus<Rat> calc(g);
        for (int i = 0; i < 3; ++i)
            c.require(calc.eta[1][i].restrict_zero(Var::v).is_zero(),
                      "eta f does not vanish on v=0");
        c.require(dot(calc.fu, calc.eta[2]).restrict_zero(Var::v).is_zero(),
                  "<f_u, eta^2 f> != 0 on v=0");
        c.require(dot(calc.fu, calc.eta[3]).restrict_zero(Var::v).is_zero(),
                  "<f_u, eta^3 f> != 0 on v=0");
    }
    c.note("eta conditions are exact jet identities on 8 random frontal germs");
    return c;
}

Check suite_lambda(Rng& rng)
{
    Check c;
    for (int rep = 0; rep < 12; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 6, true);
        auto g = assemble(nf);
        auto field = unit_normal(g);
        auto lam = identifier_lambda(g, field);
        c.require(lam.divisible_by(Var::v), "identifier not divisible by v");
        c.require(!lam.divide_by(Var::v).constant_term().is_zero(),
                  "identifier cofactor vanishes at the origin");
    }
    c.note("identifier divisible by v with unit cofactor on 12 random frontal germs");
    return c;
}

Check suite_classify_invariance(Rng& rng)
{
    Check c;
    for (int rep = 0; rep < 6; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 8, true);
        auto base = classify_origin(FrontalNormalForm<Rat>(nf));
        auto moved = sampling::scramble(rng, nf);
        auto again = classify_origin(minimal_frontalization(normalize(moved).nf).frontal_part);
        c.require(base.kind == again.kind && base.k == again.k && base.sign == again.sign,
                  "label changed under the admissible group");
    }
    c.note("labels constant on orbits for 6 random germs");
    return c;
}

Check suite_bias_series_slope(Rng& rng)
{
    Check c;
    int done = 0;
    double worst = 1e9;
    while (done < 5) {
        auto fnf = tame_series_form(rng);
        auto bs = bias_secondary_series(fnf);
        double w = std::min(0.00025, trajectory_series(fnf).validity_radius / 64.0);
        std::vector<double> hs = {w, 2 * w, 4 * w}, rb_err, rc_err;
        bool usable = true;
        for (double st : hs) {
            try {
                double u0 = solve_singular_u(fnf, st).back();
                auto bp = bias_secondary(fnf, u0, st);
                rb_err.push_back(std::abs(bp.r_b - (bs.r_b0 + bs.r_b1 * st)));
                rc_err.push_back(std::abs(bp.r_c - (bs.r_c0 + bs.r_c1 * st)));
            } catch (const Error&) {
                usable = false;
                break;
            }
        }
        if (!usable) continue;
        worst = std::min(worst, convergence_order(hs, rb_err, 3e-12));
        worst = std::min(worst, convergence_order(hs, rc_err, 3e-12));
        ++done;
    }
    c.require(worst >= 1.9, "bias-vs-series order " + fmtg(worst));
    c.note("direct minus linear series is quadratically small; worst order " + fmtg(worst));
    return c;
}

using SuiteFn = std::function<Check(Rng&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry()
{
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"frontality", suite_frontality},
        {"mond-tables", suite_tables},
        {"trajectory-series", suite_trajectory_series},
        {"branch-curvatures", suite_branch_curv},
        {"curvature-limit-agreement", suite_limit_agreement},
        {"bias-secondary", suite_bias_secondary},
        {"even-curve-curvatures", suite_even_curves},
        {"trajectory-frenet", suite_trajectory_frenet},
        {"normal-form-uniqueness", suite_uniqueness},
        {"determinism", suite_determinism},
        {"jet-ring-axioms", suite_jet_ring},
        {"decompose-exact", suite_decompose},
        {"frontalization-idempotent", suite_frontalization_idempotent},
        {"eta-conditions", suite_eta_conditions},
        {"lambda-divisibility", suite_lambda},
        {"classify-invariance", suite_classify_invariance},
        {"bias-series-slope", suite_bias_series_slope},
    };
    return suites;
}

} // namespace

std::vector<std::string> verify_suite_names()
{
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

std::vector<std::string> acceptance_suite_names()
{
    auto all = verify_suite_names();
    return {all.begin(), all.begin() + 10};
}

SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed)
{
    for (const auto& [suite_name, fn] : registry()) {
        if (suite_name != name) continue;
        Rng rng(seed ^ std::hash<std::string>{}(name));
        auto start = std::chrono::steady_clock::now();
        SuiteResult res;
        res.name = name;
        try {
            Check c = fn(rng);
            res.passed = c.ok;
            res.detail = c.detail.str();
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        return res;
    }
    throw UnknownName("run_verify_suite: unknown suite '" + name + "'");
}

} // namespace cuspjet
