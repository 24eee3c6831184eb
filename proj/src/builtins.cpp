#include "cuspjet/builtins.hpp"

namespace cuspjet {

namespace {

struct Name {
    std::string base;
    int k = 0;
    int sign = +1;
};

Name parse_name(const std::string& s)
{
    Name n;
    auto open = s.find('(');
    if (open == std::string::npos) {
        n.base = s;
        return n;
    }
    if (s.back() != ')') throw UnknownName("builtin_germ: malformed name '" + s + "'");
    n.base = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    auto comma = args.find(',');
    std::string kstr = comma == std::string::npos ? args : args.substr(0, comma);
    try {
        n.k = std::stoi(kstr);
    } catch (...) {
        throw UnknownName("builtin_germ: bad parameter in '" + s + "'");
    }
    if (comma != std::string::npos) {
        std::string sg = args.substr(comma + 1);
        if (sg == "+") n.sign = +1;
        else if (sg == "-") n.sign = -1;
        else throw UnknownName("builtin_germ: bad sign in '" + s + "'");
    }
    return n;
}

JetQ mono(int i, int j, int k, long long num, int order, long long den = 1)
{
    return JetQ::monomial(Expo(i, j, k), Rat(num, den), order);
}

MapGerm<Rat> make(int order, JetQ z)
{
    JetQ u = JetQ::variable(Var::u, order);
    JetQ v2 = mono(0, 2, 0, 1, order);
    return MapGerm<Rat>({u, v2, std::move(z)});
}

} // namespace

MapGerm<Rat> builtin_germ(const std::string& name, int order)
{
    Name n = parse_name(name);
    const int N = order;
    const int sg = n.sign;

    if (n.base == "fs_plus" || n.base == "fs_minus") {
        int pm = n.base == "fs_plus" ? +1 : -1;
        // (u, v^2, v^3(u^2 +- v^2) + s v^3)
        return make(N, mono(2, 3, 0, 1, N) + mono(0, 5, 0, pm, N) + mono(0, 3, 1, 1, N));
    }
    if (n.base == "mond:S0") return make(N, mono(1, 1, 0, 1, N));
    if (n.base == "mond:Sk") {
        if (n.k < 1) throw UnknownName("builtin_germ: mond:Sk needs k >= 1");
        return make(N, mono(0, 3, 0, 1, N) + mono(n.k + 1, 1, 0, sg, N));
    }
    if (n.base == "mond:Bk") {
        if (n.k < 1) throw UnknownName("builtin_germ: mond:Bk needs k >= 1");
        return make(N, mono(2, 1, 0, 1, N) + mono(0, 2 * n.k + 1, 0, sg, N));
    }
    if (n.base == "mond:Ck") {
        if (n.k < 1) throw UnknownName("builtin_germ: mond:Ck needs k >= 1");
        return make(N, mono(1, 3, 0, 1, N) + mono(n.k, 1, 0, sg, N));
    }
    if (n.base == "mond:F4") return make(N, mono(3, 1, 0, 1, N) + mono(0, 5, 0, 1, N));

    if (n.base == "mond_def:Sk") {
        if (n.k < 1) throw UnknownName("builtin_germ: mond_def:Sk needs k >= 1");
        return make(N, mono(0, 3, 0, 1, N) + mono(n.k + 1, 1, 0, sg, N) + mono(0, 1, 1, 1, N) +
                           mono(0, 3, 1, 1, N));
    }
    if (n.base == "mond_def:Bk") {
        if (n.k < 1) throw UnknownName("builtin_germ: mond_def:Bk needs k >= 1");
        return make(N, mono(2, 1, 0, 1, N) + mono(0, 2 * n.k + 1, 0, sg, N) +
                           mono(0, 1, 1, 1, N) + mono(0, 3, 1, 1, N));
    }
    if (n.base == "mond_def:Ck") {
        if (n.k < 1) throw UnknownName("builtin_germ: mond_def:Ck needs k >= 1");
        return make(N, mono(1, 3, 0, 1, N) + mono(n.k, 1, 0, sg, N) + mono(0, 1, 1, 1, N) +
                           mono(0, 3, 1, 1, N));
    }
    if (n.base == "mond_def:F4") {
        // stored exactly as printed; the v^5*v term reads as v^6
        return make(N, mono(3, 1, 0, 1, N) + mono(0, 6, 0, 1, N) + mono(0, 1, 1, 1, N) +
                           mono(0, 3, 1, 1, N));
    }
    if (n.base == "mond_def:F4_corrected") {
        return make(N, mono(3, 1, 0, 1, N) + mono(0, 5, 0, 1, N) + mono(0, 1, 1, 1, N) +
                           mono(0, 3, 1, 1, N));
    }
    if (n.base == "example32") {
        // (u, u^2+v^2, u^2 + v^3 s + u^2 v^3 + v^5 + v^7 + v s + u^2 v)
        JetQ u = JetQ::variable(Var::u, N);
        JetQ y = mono(2, 0, 0, 1, N) + mono(0, 2, 0, 1, N);
        JetQ z = mono(2, 0, 0, 1, N) + mono(0, 3, 1, 1, N) + mono(2, 3, 0, 1, N) +
                 mono(0, 5, 0, 1, N) + mono(0, 7, 0, 1, N) + mono(0, 1, 1, 1, N) +
                 mono(2, 1, 0, 1, N);
        return MapGerm<Rat>({u, y, z});
    }
    throw UnknownName("builtin_germ: unknown name '" + name + "'");
}

std::vector<std::string> builtin_names()
{
    std::vector<std::string> out = {"fs_plus", "fs_minus", "mond:S0", "mond:F4",
                                    "mond_def:F4", "mond_def:F4_corrected", "example32"};
    for (int k = 1; k <= 3; ++k)
        for (const char* sg : {"+", "-"}) {
            out.push_back("mond:Sk(" + std::to_string(k) + "," + sg + ")");
            out.push_back("mond_def:Sk(" + std::to_string(k) + "," + sg + ")");
        }
    for (int k = 1; k <= 3; ++k)
        for (const char* sg : {"+", "-"}) {
            out.push_back("mond:Bk(" + std::to_string(k) + "," + sg + ")");
            out.push_back("mond_def:Bk(" + std::to_string(k) + "," + sg + ")");
        }
    for (int k = 1; k <= 3; ++k)
        for (const char* sg : {"+", "-"}) {
            out.push_back("mond:Ck(" + std::to_string(k) + "," + sg + ")");
            out.push_back("mond_def:Ck(" + std::to_string(k) + "," + sg + ")");
        }
    return out;
}

} // namespace cuspjet
