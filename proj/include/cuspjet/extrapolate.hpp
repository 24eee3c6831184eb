#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cuspjet {

/// Neville tableau evaluated at x = 0: polynomial extrapolation of
/// (x_i, y_i) samples to the limit x -> 0.
inline double neville_at_zero(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("neville_at_zero: bad sample set");
    std::vector<double> t = ys;
    size_t n = xs.size();
    for (size_t j = 1; j < n; ++j)
        for (size_t i = 0; i + j < n; ++i)
            t[i] = (xs[i + j] * t[i] - xs[i] * t[i + 1]) / (xs[i + j] - xs[i]);
    return t[0];
}

/// Richardson limit h -> 0 for samples on a geometric ladder, assuming an
/// error expansion in powers of h^stride (stride 2 for even functions).
inline double richardson_limit(const std::vector<double>& hs, const std::vector<double>& ys,
                               int stride = 1)
{
    std::vector<double> xs(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
        double x = 1.0;
        for (int k = 0; k < stride; ++k) x *= hs[i];
        xs[i] = x;
    }
    return neville_at_zero(xs, ys);
}

/// Least-squares slope of log|err| against log h, ignoring samples at the
/// noise floor. Returns a large slope when everything is at the floor (the
/// quantity is exactly zero to working precision).
inline double loglog_slope(const std::vector<double>& hs, const std::vector<double>& errs,
                           double floor = 1e-13)
{
    std::vector<double> xs, ys;
    for (size_t i = 0; i < hs.size(); ++i) {
        if (errs[i] > floor) {
            xs.push_back(std::log(hs[i]));
            ys.push_back(std::log(errs[i]));
        }
    }
    if (xs.size() < 2) return 1e9;
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

/// Convergence-order estimate over a descending h-ladder: the least-squares
/// slope, or the slope of the finest pair when that is larger. The largest-h
/// samples can sit outside the asymptotic window and only ever bias the fit
/// by decaying *faster* than the modeled power there; the finest pair cannot
/// be fooled in the other direction, so the max never hides a deficient
/// order.
inline double convergence_order(const std::vector<double>& hs, const std::vector<double>& errs,
                                double floor = 1e-13)
{
    double ls = loglog_slope(hs, errs, floor);
    if (hs.size() >= 2) {
        // locate the two smallest step sizes regardless of ladder direction
        size_t i1 = 0;
        for (size_t i = 1; i < hs.size(); ++i)
            if (hs[i] < hs[i1]) i1 = i;
        size_t i2 = i1 == 0 ? 1 : 0;
        for (size_t i = 0; i < hs.size(); ++i)
            if (i != i1 && hs[i] < hs[i2]) i2 = i;
        double e1 = errs[i2], e2 = errs[i1]; // coarser, finer
        if (e1 > floor && e2 > floor) {
            double pair = (std::log(e1) - std::log(e2)) / (std::log(hs[i2]) - std::log(hs[i1]));
            return std::max(ls, pair);
        }
        if (e1 <= floor && e2 <= floor) return 1e9;
    }
    return ls;
}

} // namespace cuspjet
