// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace aqr {

namespace {

/// Recursive adaptive Simpson quadrature to absolute tolerance eps.
template <class F>
double adaptive_simpson_impl(const F& f, double a, double m, double b, double fa, double fm,
                             double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson_impl(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_impl(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double eps) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, m, b, fa, fm, fb, whole, eps, 48);
}

}  // namespace

double qnl_heterodyne(std::size_t m, double mean_photon, double efficiency) {
    if (m < 3)
        throw std::invalid_argument("the heterodyne noise limit applies to 3 or more phases");
    if (!std::isfinite(mean_photon) || mean_photon < 0.0)
        throw std::invalid_argument("mean_photon must be finite and non-negative");
    if (!(efficiency > 0.0) || efficiency > 1.0)
        throw std::invalid_argument("efficiency must lie in (0, 1]");

    // Q-function outcome density (unit total variance) around amplitude a,
    // integrated in polar form over the decision wedge |theta| < pi/M. The
    // radial tail beyond a + 9 is below 1e-30 and is dropped.
    const double a = std::sqrt(efficiency * mean_photon);
    const double half_wedge = std::numbers::pi / static_cast<double>(m);
    const double r_hi = a + 9.0;

    auto radial = [a, r_hi](double theta) {
        const double c = a * std::cos(theta);
        auto integrand = [a, c](double r) {
            return r * std::numbers::inv_pi * std::exp(-(r * r - 2.0 * c * r + a * a));
        };
        return adaptive_simpson(integrand, 0.0, r_hi, 5e-13);
    };

    const double p_correct = 2.0 * adaptive_simpson(radial, 0.0, half_wedge, 5e-10);
    return std::clamp(1.0 - p_correct, 0.0, 1.0);
}

double helstrom_mpsk(std::size_t m, double mean_photon) {
    if (m < 2) throw std::invalid_argument("an ensemble needs at least 2 states");
    if (!std::isfinite(mean_photon) || mean_photon < 0.0)
        throw std::invalid_argument("mean_photon must be finite and non-negative");

    // Circulant Gram matrix: eigenvalues are the DFT of its first row.
    using complexd = std::complex<double>;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
    std::vector<complexd> first_row(m);
    for (std::size_t t = 0; t < m; ++t)
        first_row[t] = std::exp(-mean_photon * (1.0 - std::polar(1.0, step * static_cast<double>(t))));

    std::vector<double> eigenvalues(m);
    double largest = 0.0;
    for (std::size_t mode = 0; mode < m; ++mode) {
        complexd lambda = 0.0;
        for (std::size_t t = 0; t < m; ++t)
            lambda += first_row[t] * std::polar(1.0, -step * static_cast<double>(mode * t));
        if (lambda.real() < -1e-12)
            throw std::runtime_error("Gram matrix produced a negative eigenvalue");
        eigenvalues[mode] = lambda.real();
        largest = std::max(largest, eigenvalues[mode]);
    }
    double sqrt_sum = 0.0;
    for (double value : eigenvalues) {
        // exact zeros (orthogonal modes at <n> = 0) come out as DFT noise;
        // drop anything below the relative round-off floor
        if (value < 1e-14 * largest) value = 0.0;
        sqrt_sum += std::sqrt(value);
    }
    const double p_correct = (sqrt_sum / static_cast<double>(m)) * (sqrt_sum / static_cast<double>(m));
    return std::clamp(1.0 - p_correct, 0.0, 1.0);
}

double holevo_bound(double mean_photon) {
    if (!std::isfinite(mean_photon) || mean_photon < 0.0)
        throw std::invalid_argument("mean_photon must be finite and non-negative");
    if (mean_photon == 0.0) return 0.0;
    return (mean_photon + 1.0) * std::log2(mean_photon + 1.0) -
           mean_photon * std::log2(mean_photon);
}

double heterodyne_capacity(double mean_photon) {
    if (!std::isfinite(mean_photon) || mean_photon < 0.0)
        throw std::invalid_argument("mean_photon must be finite and non-negative");
    return std::log1p(mean_photon) / std::numbers::ln2;
}

BoundCurve bound_curve(const std::string& kind, std::size_t m,
                       const std::vector<double>& mean_photon_grid, double efficiency) {
    BoundCurve curve;
    curve.kind = kind;
    curve.points.reserve(mean_photon_grid.size());
    for (double nbar : mean_photon_grid) {
        double value = 0.0;
        if (kind == "qnl") value = qnl_heterodyne(m, nbar, 1.0);
        else if (kind == "qnl-scaled") value = qnl_heterodyne(m, nbar, efficiency);
        else if (kind == "helstrom") value = helstrom_mpsk(m, nbar);
        else if (kind == "holevo") value = holevo_bound(nbar);
        else if (kind == "heterodyne-capacity") value = heterodyne_capacity(nbar);
        else throw std::invalid_argument("unknown bound kind: " + kind);
        curve.points.emplace_back(nbar, value);
    }
    return curve;
}

}  // namespace aqr
