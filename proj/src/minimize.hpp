// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace aqr::detail {

/// Golden-section minimization on [a, b] down to an interval of width tol.
/// Returns the best sampled (x, f(x)).
template <class F>
std::pair<double, double> golden_section(F&& f, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

/// Bracketed scalar minimization: a uniform grid seed picks the best cell,
/// golden-section refines inside it. Robust to the piecewise-smooth
/// objectives the MAP rule produces.
template <class F>
std::pair<double, double> grid_golden(F&& f, double lo, double hi, int grid_points, double tol) {
    if (!(hi > lo)) return {lo, f(lo)};
    double best_f = f(lo);
    double best_x = lo;
    for (int i = 1; i <= grid_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / grid_points;
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double cell = (hi - lo) / grid_points;
    const double a = std::max(lo, best_x - cell);
    const double b = std::min(hi, best_x + cell);
    auto [gx, gf] = golden_section(f, a, b, tol);
    return gf < best_f ? std::make_pair(gx, gf) : std::make_pair(best_x, best_f);
}

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int evals = 0;
    bool converged = false;
};

/// Nelder-Mead simplex minimization with a [lo, hi] box (points are clamped
/// coordinate-wise). Stops when the simplex f-spread falls below ftol.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step, double lo, double hi,
                             double ftol, int max_evals);

}  // namespace aqr::detail
