#include "cuspjet/germ_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace cuspjet {

namespace {

using nlohmann::json;

/// nlohmann reports byte offsets; map one back to line/column for messages.
std::string at_line_col(const std::string& text, size_t byte)
{
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

long long require_int(const json& j, const char* what, const std::string& origin)
{
    if (!j.is_number_integer())
        throw ParseError(origin + ": " + what + " must be an integer");
    return j.get<long long>();
}

} // namespace

MapGerm<Rat> parse_germ_spec(const std::string& text, const std::string& origin)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": JSON parse error at " + at_line_col(text, e.byte) + ": " +
                         e.what());
    }
    if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
    if (!doc.contains("vars") || doc["vars"] != json::array({"u", "v", "s"}))
        throw ParseError(origin + ": \"vars\" must be [\"u\",\"v\",\"s\"]");
    if (!doc.contains("order")) throw ParseError(origin + ": missing \"order\"");
    long long order = require_int(doc["order"], "order", origin);
    if (order < 0 || order > 64) throw ParseError(origin + ": order out of range [0,64]");
    if (!doc.contains("components") || !doc["components"].is_array() ||
        doc["components"].size() != 3)
        throw ParseError(origin + ": \"components\" must be an array of three term lists");

    JetVec3<Rat> comp = {JetQ(static_cast<int>(order)), JetQ(static_cast<int>(order)),
                         JetQ(static_cast<int>(order))};
    for (int c = 0; c < 3; ++c) {
        const json& terms = doc["components"][c];
        if (!terms.is_array())
            throw ParseError(origin + ": component " + std::to_string(c) + " must be an array");
        std::set<std::array<int, 3>> seen;
        for (const json& t : terms) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_array() || t[0].size() != 3)
                throw ParseError(origin + ": component " + std::to_string(c) +
                                 ": each term must be [[i,j,k], num, den]");
            int i = static_cast<int>(require_int(t[0][0], "exponent", origin));
            int j = static_cast<int>(require_int(t[0][1], "exponent", origin));
            int k = static_cast<int>(require_int(t[0][2], "exponent", origin));
            if (i < 0 || j < 0 || k < 0)
                throw ParseError(origin + ": negative exponent in component " + std::to_string(c));
            if (i + j + k > order)
                throw ParseError(origin + ": exponent (" + std::to_string(i) + "," +
                                 std::to_string(j) + "," + std::to_string(k) +
                                 ") exceeds order " + std::to_string(order));
            if (!seen.insert({i, j, k}).second)
                throw ParseError(origin + ": duplicate exponent triple in component " +
                                 std::to_string(c));
            long long num = require_int(t[1], "numerator", origin);
            long long den = require_int(t[2], "denominator", origin);
            if (den == 0) throw ParseError(origin + ": zero denominator");
            comp[c].set_coeff(Expo(i, j, k), Rat(num, den));
        }
    }
    try {
        return MapGerm<Rat>(std::move(comp));
    } catch (const InvariantViolation& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

MapGerm<Rat> load_germ_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_germ_spec(buf.str(), path);
}

std::string germ_spec_to_json(const MapGerm<Rat>& germ)
{
    json doc;
    doc["vars"] = {"u", "v", "s"};
    doc["order"] = germ.order();
    json comps = json::array();
    for (const auto& c : germ.comp) {
        json terms = json::array();
        for (const auto& [e, coef] : c.terms()) {
            if (!coef.num().fits_int64() || !coef.den().fits_int64())
                throw Error("germ_spec_to_json: coefficient exceeds int64 range");
            terms.push_back(json::array(
                {json::array({e[Var::u], e[Var::v], e[Var::s]}), coef.num().to_int64(),
                 coef.den().to_int64()}));
        }
        comps.push_back(terms);
    }
    doc["components"] = comps;
    return doc.dump(2) + "\n";
}

void save_germ_spec(const MapGerm<Rat>& germ, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("save_germ_spec: cannot open " + path);
    out << germ_spec_to_json(germ);
}

} // namespace cuspjet
