#include "cuspjet/sweep.hpp"

#include <cstdio>
#include <thread>

namespace cuspjet {

namespace {

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string label_token(const SingularityLabel& l)
{
    switch (l.kind) {
        case SingularityKind::RegularPoint: return "regular";
        case SingularityKind::CuspidalEdge: return "cuspidal_edge";
        case SingularityKind::CuspidalCrossCap: return "cuspidal_cross_cap";
        case SingularityKind::CuspidalSk: {
            std::string t = "cuspidal_S" + std::to_string(l.k);
            t += l.sign > 0 ? "_plus" : "_minus";
            return t;
        }
        default: return "unclassified";
    }
}

} // namespace

std::vector<InvariantReport> run_sweep(const FrontalNormalForm<Rat>& fnf,
                                       const SweepOptions& opt)
{
    auto exp = fnf.expand();
    if (exp.degenerate() || exp.d2_sign < 0)
        throw DegenerateD2("run_sweep: requires d2(0) > 0");

    // per-germ closed-form curvature data shared by every row
    double c3_0 = to_double(fnf.c3().constant_term());
    double c1uu = 2.0 * to_double(exp.d2.constant_term());
    double kappa_g_abs =
        c3_0 != 0.0 ? std::abs((2.0 * to_double(fnf.f21.constant_term()) * c3_0 - c1uu) / c3_0)
                    : 0.0;
    double kappa_n = 2.0 * to_double(fnf.f31.constant_term());

    std::vector<double> ladder(opt.count);
    for (int i = 0; i < opt.count; ++i)
        ladder[i] = opt.count == 1 ? opt.s_tilde_min
                                   : opt.s_tilde_min + (opt.s_tilde_max - opt.s_tilde_min) * i /
                                                           (opt.count - 1);

    std::vector<std::vector<InvariantReport>> per_sample(opt.count);
    std::vector<std::string> failures(opt.count);

    auto work = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            double st = ladder[i];
            try {
                auto roots = solve_singular_u(fnf, st);
                for (double u0 : roots) {
                    InvariantReport row;
                    row.u0 = u0;
                    row.s_tilde = st;
                    double s0 = (exp.d2_sign > 0 ? -1.0 : 1.0) * st * st;
                    row.label = st == 0.0 && u0 == 0.0 ? classify_origin(fnf)
                                                       : label_point(fnf, u0, s0);
                    auto bp = bias_secondary(fnf, u0, st);
                    row.r_b = bp.r_b;
                    row.r_c = bp.r_c;
                    row.r_b_method = Method::oracle;
                    row.r_c_method = Method::oracle;
                    row.kappa_g_abs = kappa_g_abs;
                    row.kappa_n = kappa_n;
                    row.kappa_g_method = Method::closed_form;
                    row.kappa_n_method = Method::closed_form;
                    per_sample[i].push_back(row);
                }
            } catch (const Error& e) {
                failures[i] = e.what();
            }
        }
    };

    int threads = std::max(1, opt.threads);
    if (threads == 1 || opt.count <= 1) {
        work(0, opt.count);
    } else {
        std::vector<std::thread> pool;
        int chunk = (opt.count + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int b = t * chunk, e = std::min(opt.count, b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < opt.count; ++i)
        if (!failures[i].empty())
            throw NoConvergence("run_sweep: sample s~=" + fmt(ladder[i]) + ": " + failures[i]);

    std::vector<InvariantReport> rows;
    for (auto& block : per_sample)
        for (auto& r : block) rows.push_back(std::move(r));
    return rows;
}

std::string sweep_to_csv(const std::vector<InvariantReport>& rows)
{
    std::string out =
        "s_tilde,u_root,label,r_b,r_c,kappa_g_abs,kappa_n,method_rb,method_rc\n";
    for (const auto& r : rows) {
        out += fmt(r.s_tilde) + "," + fmt(r.u0) + "," + label_token(r.label) + "," +
               fmt(r.r_b) + "," + fmt(r.r_c) + "," + fmt(r.kappa_g_abs) + "," +
               fmt(r.kappa_n) + "," + to_string(r.r_b_method) + "," + to_string(r.r_c_method) +
               "\n";
    }
    return out;
}

} // namespace cuspjet
