#pragma once

#include "cuspjet/geometry.hpp"

#include <string>
#include <vector>

namespace cuspjet {

struct SweepOptions {
    double s_tilde_min = 0.01;
    double s_tilde_max = 0.3;
    int count = 30;
    int threads = 1;
};

/// Invariant table over a ladder of deformation values: two rows per sample
/// (one per second-stratum root), bias and secondary cuspidal curvature from
/// the direct eta-frame evaluation, curvature limits from the closed forms.
/// Samples are evaluated concurrently but assembled in input order.
std::vector<InvariantReport> run_sweep(const FrontalNormalForm<Rat>& fnf,
                                       const SweepOptions& opt);

/// Fixed-column CSV: s_tilde,u_root,label,r_b,r_c,kappa_g_abs,kappa_n,
/// method_rb,method_rc. Header always present; 17 significant digits;
/// byte-deterministic for identical inputs.
std::string sweep_to_csv(const std::vector<InvariantReport>& rows);

} // namespace cuspjet
