#pragma once

#include "cuspjet/germ.hpp"

#include <string>
#include <vector>

namespace cuspjet {

/// Exact built-in germs addressed by name:
///   fs_plus, fs_minus                      the model deformations
///   mond:S0                                (u, v^2, uv)
///   mond:Sk(k[,sign])                      (u, v^2, v^3 +- u^{k+1} v)
///   mond:Bk(k[,sign])  mond:Ck(k[,sign])  mond:F4
///   mond_def:Sk(k[,sign]) ...              the one-parameter deformed rows
///   mond_def:F4                            as printed (contains v^6)
///   mond_def:F4_corrected                  v^5 variant
///   example32                              the worked deformation example
/// sign defaults to '+'. Throws UnknownName for anything else.
MapGerm<Rat> builtin_germ(const std::string& name, int order = 8);

/// Names accepted by builtin_germ, with parametrized families listed for
/// k = 1..3 and both signs.
std::vector<std::string> builtin_names();

} // namespace cuspjet
