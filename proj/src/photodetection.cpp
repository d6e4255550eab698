// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/photodetection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aqr {

BeliefState BeliefState::uniform(std::size_t m) {
    return BeliefState{std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

void BeliefState::validate() const {
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("belief entries must be finite and non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("belief must sum to 1");
}

double displaced_mean(Amplitude alpha_k, Amplitude beta, double visibility) {
    if (!std::isfinite(visibility) || visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("visibility must lie in [0, 1]");
    const double a = std::abs(alpha_k);
    const double b = std::abs(beta);
    const double nbar =
        a * a + b * b - 2.0 * visibility * a * b * std::cos(std::arg(alpha_k) - std::arg(beta));
    return std::max(nbar, 0.0);
}

double click_probability(double nbar, const SystemModel& model) {
    model.validate();
    if (!std::isfinite(nbar) || nbar < 0.0)
        throw std::invalid_argument("nbar must be finite and non-negative");
    return -std::expm1(-(model.efficiency * nbar + model.dark_per_slice()));
}

double photon_count_pmf(double nbar, unsigned n) {
    if (!std::isfinite(nbar) || nbar < 0.0)
        throw std::invalid_argument("nbar must be finite and non-negative");
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-nbar + n * std::log(nbar) - std::lgamma(static_cast<double>(n) + 1.0));
}

BeliefState bayes_update(const BeliefState& prior, Amplitude beta, SliceOutcome outcome,
                         const StateEnsemble& ensemble, const SystemModel& model) {
    prior.validate();
    model.validate();
    const std::size_t m = ensemble.size();
    if (prior.size() != m)
        throw std::invalid_argument("belief length does not match the ensemble");

    // Per-hypothesis detector exponent for this slice: eta * nbar/N + nu/N.
    std::vector<double> exponent(m);
    double max_exponent = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double nbar = displaced_mean(ensemble.amplitudes[k], beta, model.visibility);
        exponent[k] = model.efficiency * nbar / model.slices + model.dark_per_slice();
        max_exponent = std::max(max_exponent, exponent[k]);
    }

    BeliefState posterior{std::vector<double>(m, 0.0)};
    double total = 0.0;
    if (!outcome.clicked && max_exponent > 30.0) {
        // Log-space path: a no-click likelihood e^{-x} never truly vanishes,
        // so shift by the smallest exponent instead of underflowing.
        double min_active = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m; ++k)
            if (prior.probs[k] > 0.0) min_active = std::min(min_active, exponent[k]);
        for (std::size_t k = 0; k < m; ++k) {
            posterior.probs[k] = prior.probs[k] * std::exp(-(exponent[k] - min_active));
            total += posterior.probs[k];
        }
    } else {
        for (std::size_t k = 0; k < m; ++k) {
            const double likelihood =
                outcome.clicked ? -std::expm1(-exponent[k]) : std::exp(-exponent[k]);
            posterior.probs[k] = prior.probs[k] * likelihood;
            total += posterior.probs[k];
        }
    }
    if (total <= 0.0)
        throw degenerate_evidence_error("outcome has zero likelihood under every hypothesis");
    for (double& p : posterior.probs) p /= total;
    return posterior;
}

}  // namespace aqr
