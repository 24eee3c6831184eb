#include "cuspjet/mesh.hpp"

#include "cuspjet/frontal.hpp"
#include "cuspjet/normalize.hpp"

#include <json.hpp>

#include <cstdio>

namespace cuspjet {

namespace {
std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
} // namespace

std::string mesh_to_obj(const MapGerm<Rat>& germ, const MeshOptions& opt)
{
    if (opt.grid < 2) throw Error("mesh_to_obj: grid must be at least 2");
    JetVec3<double> f = {germ.comp[0].cast<double>(), germ.comp[1].cast<double>(),
                         germ.comp[2].cast<double>()};
    std::string out;
    out.reserve(static_cast<size_t>(opt.grid) * opt.grid * 48);
    for (int i = 0; i < opt.grid; ++i) {
        double u = -opt.extent + 2.0 * opt.extent * i / (opt.grid - 1);
        for (int j = 0; j < opt.grid; ++j) {
            double v = -opt.extent + 2.0 * opt.extent * j / (opt.grid - 1);
            out += "v " + fmt(f[0].evaluate({u, v, opt.s})) + " " +
                   fmt(f[1].evaluate({u, v, opt.s})) + " " + fmt(f[2].evaluate({u, v, opt.s})) +
                   "\n";
        }
    }
    for (int i = 0; i + 1 < opt.grid; ++i)
        for (int j = 0; j + 1 < opt.grid; ++j) {
            int a = i * opt.grid + j + 1;
            int b = (i + 1) * opt.grid + j + 1;
            int c = (i + 1) * opt.grid + j + 2;
            int d = i * opt.grid + j + 2;
            out += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
                   std::to_string(c) + " " + std::to_string(d) + "\n";
        }
    return out;
}

std::string mesh_sidecar_json(const MapGerm<Rat>& germ, const MeshOptions& opt)
{
    nlohmann::json doc;
    doc["s"] = opt.s;
    doc["s2_roots"] = nlohmann::json::array();
    try {
        auto res = normalize(germ);
        auto fr = minimal_frontalization(res.nf);
        auto sets = singular_sets(fr.frontal_part, opt.s);
        for (double r : sets.s2_roots) doc["s2_roots"].push_back(r);
        doc["frontal"] = is_frontal(res.nf);
    } catch (const Error& e) {
        doc["note"] = e.what();
    } catch (const arithmetic_error& e) {
        doc["note"] = e.what();
    }
    return doc.dump(2) + "\n";
}

} // namespace cuspjet
