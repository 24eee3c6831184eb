#include "cuspjet/builtins.hpp"
#include "cuspjet/classify.hpp"
#include "cuspjet/germ_io.hpp"
#include "cuspjet/mesh.hpp"
#include "cuspjet/normalize.hpp"
#include "cuspjet/sweep.hpp"
#include "cuspjet/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace cuspjet;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

struct GermSource {
    std::string path;
    std::string builtin;
    int order = 8;

    MapGerm<Rat> load() const
    {
        if (!builtin.empty()) return builtin_germ(builtin, order);
        if (path.empty()) throw ParseError("no germ given: pass a germ-spec file or --builtin");
        return load_germ_spec(path);
    }
    std::string describe() const { return builtin.empty() ? path : builtin; }
};

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open output file " + out_path);
    out << text;
}

template <typename S>
int run_classify(const MapGerm<S>& germ, const std::string& label)
{
    auto res = normalize(germ);
    auto fr = minimal_frontalization(res.nf);
    bool frontal = is_frontal(res.nf);
    auto origin = classify_origin(fr.frontal_part);

    std::printf("germ:            %s\n", label.c_str());
    std::printf("two-jet class:   %s\n", to_string(two_jet_class(res.nf)));
    std::printf("frontal:         %s\n", frontal ? "yes" : "no");
    std::printf("obstruction:     %s\n", fr.obstruction.to_string().c_str());
    std::printf("origin (s=0):    %s\n", origin.to_string().c_str());
    if (res.log.s_gauge_pinned)
        std::printf("s-gauge:         c1(0,s) = %ss\n", res.log.c1_s_sign > 0 ? "" : "-");
    else
        std::printf("s-gauge:         not pinned ((c1)_s(0,0) = 0)\n");
    std::string summary = frontal ? "frontal" : "not frontal; obstruction " +
                                                    fr.obstruction.to_string();
    std::printf("summary:         %s; %s at origin\n", summary.c_str(),
                origin.to_string().c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"jet-exact invariants of deformed cuspidal surface singularities"};
    app.require_subcommand(1);

    GermSource src;
    std::string out_path;
    bool use_float = false;

    auto add_germ_options = [&](CLI::App* cmd, bool with_float = true) {
        cmd->add_option("spec", src.path, "germ-spec JSON file");
        cmd->add_option("--builtin", src.builtin, "built-in germ name (see list-builtins)");
        cmd->add_option("--order", src.order, "jet truncation order")->default_val(8);
        if (with_float) {
            cmd->add_flag("--float", use_float,
                          "floating-point scalar mode");
            cmd->add_flag("--exact", "exact rational scalar mode (the default)");
        }
    };

    auto* cmd_classify = app.add_subcommand("classify", "normal form, frontality, obstruction "
                                                        "and origin classification");
    add_germ_options(cmd_classify);

    auto* cmd_sweep = app.add_subcommand("sweep", "invariant table over a deformation ladder");
    add_germ_options(cmd_sweep, false);
    SweepOptions sweep_opt;
    cmd_sweep->add_option("--smin", sweep_opt.s_tilde_min, "smallest s~")->default_val(0.01);
    cmd_sweep->add_option("--smax", sweep_opt.s_tilde_max, "largest s~")->default_val(0.3);
    cmd_sweep->add_option("--count", sweep_opt.count, "number of samples")->default_val(30);
    cmd_sweep->add_option("--threads", sweep_opt.threads, "worker threads")->default_val(1);
    cmd_sweep->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_mesh = app.add_subcommand("mesh", "sample the surface into a Wavefront OBJ");
    add_germ_options(cmd_mesh, false);
    MeshOptions mesh_opt;
    bool mesh_frontalized = false;
    cmd_mesh->add_option("--s", mesh_opt.s, "deformation value")->required();
    cmd_mesh->add_option("--grid", mesh_opt.grid, "vertices per side")->default_val(64);
    cmd_mesh->add_option("--extent", mesh_opt.extent, "half-width of the (u,v) box")
        ->default_val(1.0);
    cmd_mesh->add_flag("--frontalized", mesh_frontalized,
                       "mesh the minimal frontalization (in normalized coordinates)");
    cmd_mesh->add_option("--out", out_path, "output .obj path (sidecar written next to it)");

    auto* cmd_export = app.add_subcommand("export-builtin", "write a built-in germ as a "
                                                            "germ-spec JSON file");
    std::string export_name;
    cmd_export->add_option("name", export_name, "built-in germ name")->required();
    cmd_export->add_option("--order", src.order, "jet truncation order")->default_val(8);
    cmd_export->add_option("--out", out_path, "output path (default stdout)");

    auto* cmd_list = app.add_subcommand("list-builtins", "list built-in germ names");

    auto* cmd_verify = app.add_subcommand("verify", "run the verification suites");
    std::string suite_filter;
    std::uint64_t seed = 20240817u;
    bool acceptance_only = false;
    cmd_verify->add_option("--suite", suite_filter, "run only the named suite");
    cmd_verify->add_option("--seed", seed, "seed for randomized suites")->default_val(20240817u);
    cmd_verify->add_flag("--acceptance", acceptance_only, "run only the acceptance suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_classify->parsed()) {
            auto germ = src.load();
            if (use_float) return run_classify(germ.cast<double>(), src.describe());
            return run_classify(germ, src.describe());
        }
        if (cmd_sweep->parsed()) {
            auto res = normalize(src.load());
            auto fr = minimal_frontalization(res.nf);
            auto rows = run_sweep(fr.frontal_part, sweep_opt);
            write_output(sweep_to_csv(rows), out_path);
            return kExitOk;
        }
        if (cmd_mesh->parsed()) {
            auto germ = src.load();
            if (mesh_frontalized) {
                auto res = normalize(germ);
                auto fr = minimal_frontalization(res.nf);
                germ = assemble(fr.frontal_part);
            }
            write_output(mesh_to_obj(germ, mesh_opt), out_path);
            std::string sidecar = mesh_sidecar_json(germ, mesh_opt);
            if (!out_path.empty() && out_path != "-")
                write_output(sidecar, out_path + ".s2.json");
            return kExitOk;
        }
        if (cmd_export->parsed()) {
            auto germ = builtin_germ(export_name, src.order);
            write_output(germ_spec_to_json(germ), out_path);
            return kExitOk;
        }
        if (cmd_list->parsed()) {
            for (const auto& name : builtin_names()) std::printf("%s\n", name.c_str());
            return kExitOk;
        }
        if (cmd_verify->parsed()) {
            std::vector<std::string> names =
                acceptance_only ? acceptance_suite_names() : verify_suite_names();
            if (!suite_filter.empty()) names = {suite_filter};
            bool all_ok = true;
            for (const auto& name : names) {
                auto res = run_verify_suite(name, seed);
                std::printf("[%s] %-24s (%.2fs) %s\n", res.passed ? "PASS" : "FAIL",
                            res.name.c_str(), res.seconds, res.detail.c_str());
                std::fflush(stdout);
                all_ok = all_ok && res.passed;
            }
            return all_ok ? kExitOk : kExitVerifyFailed;
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInputError;
    } catch (const UnknownName& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInputError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const arithmetic_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitOk;
}
