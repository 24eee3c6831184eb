#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspjet/builtins.hpp"
#include "cuspjet/classify.hpp"
#include "cuspjet/frontal.hpp"
#include "cuspjet/normalize.hpp"
#include "cuspjet/sampling.hpp"

using namespace cuspjet;

namespace {
sampling::Rng rng(5150123);

MapGerm<Rat> plane_germ(int n)
{
    return MapGerm<Rat>({JetQ::variable(Var::u, n), JetQ::monomial(Expo(0, 2, 0), Rat(1), n),
                         JetQ(n)});
}
} // namespace

TEST_CASE("unit normal of (u, v^2, 0) is the constant (0,0,1)")
{
    auto f = plane_germ(6);
    auto nu = unit_normal(f);
    CHECK(nu.nu[0].is_zero());
    CHECK(nu.nu[1].is_zero());
    CHECK(nu.nu[2] == JetQ::constant(Rat(1), nu.nu[2].order()));
    CHECK(nu.exact());

    auto lam = identifier_lambda(f, nu);
    CHECK(lam == JetQ::monomial(Expo(0, 1, 0), Rat(2), lam.order()));
}

TEST_CASE("unit normal of the model deformations")
{
    for (const char* name : {"fs_plus", "fs_minus"}) {
        auto f = builtin_germ(name, 8);
        auto nu = unit_normal(f);
        CHECK(nu.exact());
        CHECK(nu.nu[0].constant_term() == Rat(0));
        CHECK(nu.nu[1].constant_term() == Rat(0));
        CHECK(nu.nu[2].constant_term() == Rat(1));

        // the identifier vanishes exactly on {v=0} with a unit cofactor
        auto lam = identifier_lambda(f, nu);
        CHECK(lam.divisible_by(Var::v));
        auto cof = lam.divide_by(Var::v);
        CHECK(cof.constant_term() == Rat(2));

        // non-degeneracy at the origin: d(lambda)(0) != 0
        bool dlam = !lam.differentiate(Var::u).constant_term().is_zero() ||
                    !lam.differentiate(Var::v).constant_term().is_zero();
        CHECK(dlam);
    }
}

TEST_CASE("restricted normal matches the displayed formula along v=0")
{
    // nu(u,0,s) is proportional to (2 P c0 - 2 Q, -2 c0, 2) where P and Q are
    // the u-derivatives of the second and third components on v=0
    for (int rep = 0; rep < 6; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 8, true);
        auto f = assemble(nf);
        auto field = unit_normal(f);
        JetQ P = f.y().differentiate(Var::u).restrict_zero(Var::v);
        JetQ Q = f.z().differentiate(Var::u).restrict_zero(Var::v);
        JetQ c0 = decompose_f32(nf.f32).c0;
        JetQ two(P.order());
        two.set_coeff(Expo(0, 0, 0), Rat(2));
        JetQ N1 = P * c0 * Rat(2) - Q * Rat(2);
        JetQ N2 = c0 * Rat(-2);
        // cross-multiplied proportionality, restricted to v = 0
        JetQ nu1 = field.nu[0].restrict_zero(Var::v);
        JetQ nu2 = field.nu[1].restrict_zero(Var::v);
        JetQ nu3 = field.nu[2].restrict_zero(Var::v);
        CHECK(nu1 * two == nu3 * N1);
        CHECK(nu2 * two == nu3 * N2);
    }

    // worked case: c0 = 0 forces the second normal component to vanish on v=0
    auto ex = normalize(builtin_germ("example32", 8));
    auto fr = minimal_frontalization(ex.nf);
    auto field = unit_normal(assemble(fr.frontal_part));
    CHECK(field.nu[1].restrict_zero(Var::v).is_zero());
}

TEST_CASE("frontality agrees with the unit-normal construction")
{
    auto fsp = normalize(builtin_germ("fs_plus", 8));
    CHECK(is_frontal(fsp.nf));

    auto s0 = normalize(builtin_germ("mond:S0", 6));
    CHECK(!is_frontal(s0.nf));
    CHECK(s0.nf.f33 == JetQ::variable(Var::u, s0.nf.f33.order()));

    auto ex = normalize(builtin_germ("example32", 8));
    CHECK(!is_frontal(ex.nf));
    CHECK(ex.nf.f33 ==
          JetQ::variable(Var::s, ex.nf.f33.order()) +
              JetQ::monomial(Expo(2, 0, 0), Rat(1), ex.nf.f33.order()));

    for (int rep = 0; rep < 40; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 6, rep % 2 == 0);
        bool frontal = is_frontal(nf);
        bool constructed = try_unit_normal(assemble(nf)).has_value();
        CHECK(frontal == constructed);
    }
}

TEST_CASE("minimal frontalization reproduces both Mond tables")
{
    struct Row {
        std::string name;
        Expo obstruction_mono;  // the u-power part of the obstruction
        bool has_vs;            // deformed rows carry + v s
    };
    for (int k = 1; k <= 3; ++k) {
        for (int sign : {+1, -1}) {
            std::string sg = sign > 0 ? "+" : "-";
            // S_k rows: obstruction u^{k+1} v (+ v s), frontal part v^3 (+ v^3 s)
            for (bool deformed : {false, true}) {
                std::string name = (deformed ? "mond_def:Sk(" : "mond:Sk(") +
                                   std::to_string(k) + "," + sg + ")";
                auto res = normalize(builtin_germ(name, 8));
                auto fr = minimal_frontalization(res.nf);
                JetQ expect_obs =
                    JetQ::monomial(Expo(k + 1, 1, 0), Rat(sign), fr.obstruction.order());
                if (deformed)
                    expect_obs = expect_obs +
                                 JetQ::monomial(Expo(0, 1, 1), Rat(1), fr.obstruction.order());
                CHECK(fr.obstruction == expect_obs);
                auto fp = assemble(fr.frontal_part);
                JetQ expect_z = JetQ::monomial(Expo(0, 3, 0), Rat(1), fp.z().order());
                if (deformed)
                    expect_z = expect_z + JetQ::monomial(Expo(0, 3, 1), Rat(1), fp.z().order());
                CHECK(fp.z() == expect_z);
            }
            // B_k rows: obstruction u^2 v (+ v s), frontal part +-v^{2k+1} (+ v^3 s)
            for (bool deformed : {false, true}) {
                std::string name = (deformed ? "mond_def:Bk(" : "mond:Bk(") +
                                   std::to_string(k) + "," + sg + ")";
                auto res = normalize(builtin_germ(name, 8));
                auto fr = minimal_frontalization(res.nf);
                JetQ expect_obs = JetQ::monomial(Expo(2, 1, 0), Rat(1), fr.obstruction.order());
                if (deformed)
                    expect_obs = expect_obs +
                                 JetQ::monomial(Expo(0, 1, 1), Rat(1), fr.obstruction.order());
                CHECK(fr.obstruction == expect_obs);
                auto fp = assemble(fr.frontal_part);
                JetQ expect_z =
                    JetQ::monomial(Expo(0, 2 * k + 1, 0), Rat(sign), fp.z().order());
                if (deformed)
                    expect_z = expect_z + JetQ::monomial(Expo(0, 3, 1), Rat(1), fp.z().order());
                CHECK(fp.z() == expect_z);
            }
        }
    }

    // S_0 row
    auto s0 = normalize(builtin_germ("mond:S0", 6));
    auto fr0 = minimal_frontalization(s0.nf);
    CHECK(fr0.obstruction == JetQ::monomial(Expo(1, 1, 0), Rat(1), fr0.obstruction.order()));
    CHECK(assemble(fr0.frontal_part).z().is_zero());

    // F_4 rows: the corrected variant matches the table; the printed variant
    // leaves a v^6 term in the frontal part instead of v^5
    auto f4c = normalize(builtin_germ("mond_def:F4_corrected", 8));
    auto frc = minimal_frontalization(f4c.nf);
    CHECK(frc.obstruction ==
          JetQ::monomial(Expo(3, 1, 0), Rat(1), frc.obstruction.order()) +
              JetQ::monomial(Expo(0, 1, 1), Rat(1), frc.obstruction.order()));
    CHECK(assemble(frc.frontal_part).z() ==
          JetQ::monomial(Expo(0, 5, 0), Rat(1), 8) + JetQ::monomial(Expo(0, 3, 1), Rat(1), 8));

    auto f4p = normalize(builtin_germ("mond_def:F4", 8));
    auto frp = minimal_frontalization(f4p.nf);
    CHECK(frp.obstruction == frc.obstruction);
    CHECK(assemble(frp.frontal_part).z().coeff(0, 6, 0) == Rat(1));
    CHECK(assemble(frp.frontal_part).z().coeff(0, 5, 0) == Rat(0));
}

TEST_CASE("minimal frontalization is idempotent and identity on frontals")
{
    for (int rep = 0; rep < 10; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 6, rep % 2 == 0);
        auto fr = minimal_frontalization(nf);
        // assemble(nf) = assemble(frontal part) + (0,0,obstruction)
        auto lhs = assemble(nf);
        auto fp = assemble(fr.frontal_part);
        CHECK(lhs.z() == fp.z() + fr.obstruction.truncated(fp.z().order()));
        CHECK(lhs.y() == fp.y());
        // idempotence
        auto again = minimal_frontalization(fr.frontal_part.as_normal_form());
        CHECK(again.obstruction.is_zero());
        CHECK(assemble(again.frontal_part) == fp);
        if (is_frontal(nf)) CHECK(fp == lhs);
    }
}

TEST_CASE("singular sets of the model deformations")
{
    auto fs = normalize(builtin_germ("fs_minus", 8));
    auto fr = minimal_frontalization(fs.nf);
    auto sets = singular_sets(fr.frontal_part, -0.04);
    REQUIRE(sets.s2_roots.size() == 2);
    CHECK(sets.s2_roots[0] == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(sets.s2_roots[1] == doctest::Approx(0.2).epsilon(1e-12));

    auto fsp = minimal_frontalization(normalize(builtin_germ("fs_plus", 8)).nf);
    CHECK(singular_sets(fsp.frontal_part, 0.01).s2_roots.empty());
    auto at0 = singular_sets(fsp.frontal_part, 0.0);
    REQUIRE(at0.s2_roots.size() == 1);
    CHECK(at0.s2_roots[0] == 0.0);
}

TEST_CASE("two-jet classes")
{
    CHECK(two_jet_class(normalize(builtin_germ("mond:S0", 6)).nf) == TwoJetClass::cross);
    CHECK(two_jet_class(normalize(builtin_germ("fs_plus", 8)).nf) == TwoJetClass::plane);
    CHECK(two_jet_class(normalize(builtin_germ("fs_minus", 8)).nf) == TwoJetClass::plane);
    CHECK(two_jet_class(normalize(builtin_germ("example32", 8)).nf) == TwoJetClass::plane);

    // table conventions: (f33)_u(0,0) is nonzero exactly where the family's
    // obstruction has a u-linear term (S_0 and C_1)
    for (int k = 1; k <= 3; ++k) {
        std::string suf = "(" + std::to_string(k) + ",+)";
        CHECK(two_jet_class(normalize(builtin_germ("mond:Sk" + suf, 8)).nf) ==
              TwoJetClass::plane);
        CHECK(two_jet_class(normalize(builtin_germ("mond:Bk" + suf, 8)).nf) ==
              TwoJetClass::plane);
        CHECK(two_jet_class(normalize(builtin_germ("mond:Ck" + suf, 8)).nf) ==
              (k == 1 ? TwoJetClass::cross : TwoJetClass::plane));
    }
    CHECK(two_jet_class(normalize(builtin_germ("mond:F4", 8)).nf) == TwoJetClass::plane);
}

TEST_CASE("classification at the origin")
{
    // the model family (u, v^2, v^3(u^{k+1} +- v^2)) for k = 0..3
    for (int k = 0; k <= 3; ++k) {
        for (int sign : {+1, -1}) {
            int n = 8;
            JetQ z = JetQ::monomial(Expo(k + 1, 3, 0), Rat(1), n) +
                     JetQ::monomial(Expo(0, 5, 0), Rat(sign), n);
            MapGerm<Rat> g({JetQ::variable(Var::u, n), JetQ::monomial(Expo(0, 2, 0), Rat(1), n),
                            z});
            auto fr = minimal_frontalization(normalize(g).nf);
            auto label = classify_origin(fr.frontal_part);
            if (k == 0) {
                CHECK(label.kind == SingularityKind::CuspidalCrossCap);
            } else {
                CHECK(label.kind == SingularityKind::CuspidalSk);
                CHECK(label.k == k);
                CHECK(label.sign == sign);
                CHECK(label.sign_equivalent == (k % 2 == 0));
            }
        }
    }

    // deformations of the models restrict to s=0 as cuspidal S_1^+/-
    auto fsp = minimal_frontalization(normalize(builtin_germ("fs_plus", 8)).nf);
    auto lp = classify_origin(fsp.frontal_part);
    CHECK(lp.kind == SingularityKind::CuspidalSk);
    CHECK(lp.k == 1);
    CHECK(lp.sign == +1);
    auto fsm = minimal_frontalization(normalize(builtin_germ("fs_minus", 8)).nf);
    CHECK(classify_origin(fsm.frontal_part).sign == -1);

    // c1 constant 1: a cuspidal edge along v=0
    {
        int n = 6;
        MapGerm<Rat> cusp({JetQ::variable(Var::u, n), JetQ::monomial(Expo(0, 2, 0), Rat(1), n),
                           JetQ::monomial(Expo(0, 3, 0), Rat(1), n)});
        auto fr = minimal_frontalization(normalize(cusp).nf);
        CHECK(classify_origin(fr.frontal_part).kind == SingularityKind::CuspidalEdge);
    }

    // the worked deformation example is a cuspidal S_1^+ at the origin
    auto ex = minimal_frontalization(normalize(builtin_germ("example32", 8)).nf);
    auto le = classify_origin(ex.frontal_part);
    CHECK(le.kind == SingularityKind::CuspidalSk);
    CHECK(le.k == 1);
    CHECK(le.sign == +1);
}

TEST_CASE("labels along the deformation")
{
    auto fsp = minimal_frontalization(normalize(builtin_germ("fs_plus", 8)).nf);
    auto pts = label_singular_points(fsp.frontal_part, 0.3);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].first == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(pts[1].first == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(pts[0].second.kind == SingularityKind::CuspidalCrossCap);
    CHECK(pts[1].second.kind == SingularityKind::CuspidalCrossCap);

    auto at0 = label_singular_points(fsp.frontal_part, 0.0);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0].second.kind == SingularityKind::CuspidalSk);
    CHECK(at0[0].second.k == 1);

    // an S1 point off the second stratum is a cuspidal edge
    auto lbl = label_point(fsp.frontal_part, 0.5, -0.01);
    CHECK(lbl.kind == SingularityKind::CuspidalEdge);
}

TEST_CASE("classification is invariant under the admissible group")
{
    for (int rep = 0; rep < 6; ++rep) {
        auto nf = sampling::pinned_normal_form(rng, 8, true);
        auto base = classify_origin(FrontalNormalForm<Rat>(nf));
        auto moved = sampling::scramble(rng, nf);
        auto back = minimal_frontalization(normalize(moved).nf);
        auto again = classify_origin(back.frontal_part);
        CHECK(base.kind == again.kind);
        CHECK(base.k == again.k);
        CHECK(base.sign == again.sign);
    }
}
