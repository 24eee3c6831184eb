#pragma once

#include "cuspjet/germ.hpp"

#include <string>

namespace cuspjet {

/// Germ-spec file format (UTF-8 JSON):
///   { "vars": ["u","v","s"], "order": N,
///     "components": [ [ [[i,j,k], num, den], ... ], ... x3 ] }
/// Coefficients are exact rationals; exponent triples must be unique per
/// component and must not exceed the stated order.
MapGerm<Rat> load_germ_spec(const std::string& path);
MapGerm<Rat> parse_germ_spec(const std::string& text, const std::string& origin = "<string>");

std::string germ_spec_to_json(const MapGerm<Rat>& germ);
void save_germ_spec(const MapGerm<Rat>& germ, const std::string& path);

} // namespace cuspjet
