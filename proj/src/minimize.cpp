// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "minimize.hpp"

#include <numeric>

namespace aqr::detail {

namespace {

void clamp_into_box(std::vector<double>& x, double lo, double hi) {
    for (double& v : x) v = std::clamp(v, lo, hi);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step, double lo, double hi,
                             double ftol, int max_evals) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    result.x = x0;
    clamp_into_box(result.x, lo, hi);

    std::vector<std::vector<double>> simplex;
    simplex.reserve(n + 1);
    simplex.push_back(result.x);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = result.x;
        v[i] = std::clamp(v[i] + (v[i] + step <= hi ? step : -step), lo, hi);
        simplex.push_back(std::move(v));
    }

    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(simplex[i]);
        ++result.evals;
    }

    std::vector<std::size_t> order(n + 1);
    while (result.evals < max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return fv[a] < fv[b] || (fv[a] == fv[b] && a < b);
        });
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        if (fv[worst] - fv[best] < ftol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto move_point = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + coeff * (centroid[d] - simplex[worst][d]);
            clamp_into_box(p, lo, hi);
            return p;
        };

        auto reflected = move_point(1.0);
        const double f_reflected = f(reflected);
        ++result.evals;
        if (f_reflected < fv[best]) {
            auto expanded = move_point(2.0);
            const double f_expanded = f(expanded);
            ++result.evals;
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                fv[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                fv[worst] = f_reflected;
            }
        } else if (f_reflected < fv[second_worst]) {
            simplex[worst] = std::move(reflected);
            fv[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fv[worst];
            auto contracted = move_point(outside ? 0.5 : -0.5);
            const double f_contracted = f(contracted);
            ++result.evals;
            if (f_contracted < std::min(f_reflected, fv[worst])) {
                simplex[worst] = std::move(contracted);
                fv[worst] = f_contracted;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
                    fv[i] = f(simplex[i]);
                    ++result.evals;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    result.x = simplex[best];
    result.fx = fv[best];
    return result;
}

}  // namespace aqr::detail
