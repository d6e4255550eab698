// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <vector>

#include "aqr/ensemble.hpp"

namespace aqr {

/// On/off detector outcome for one slice: clicked is true iff at least one
/// photocount occurred. Multiple counts within a slice collapse to "click".
struct SliceOutcome {
    bool clicked = false;
};

/// Probability vector over the M hypotheses, carried through the adaptive
/// measurement. Entries are non-negative and sum to 1.
struct BeliefState {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }

    /// Uniform belief over m hypotheses.
    static BeliefState uniform(std::size_t m);

    /// Throws std::invalid_argument if entries are negative or the sum
    /// deviates from 1 by more than 1e-9.
    void validate() const;
};

/// Thrown when an observed outcome has zero likelihood under every
/// hypothesis, which would otherwise divide by zero in the Bayes rule.
class degenerate_evidence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mean photon number of the displaced state D(-beta)|alpha_k> over the
/// whole pulse:
///
///   nbar = |alpha|^2 + |beta|^2 - 2 V |alpha| |beta| cos(arg alpha - arg beta)
///
/// Tiny negative round-off is clamped to 0. Throws std::invalid_argument
/// for visibility outside [0, 1].
double displaced_mean(Amplitude alpha_k, Amplitude beta, double visibility);

/// Probability that the on/off detector clicks in one slice whose displaced
/// mean photon number is nbar (already the per-slice share, e.g. nbar_full/N):
///
///   p_click = 1 - exp(-(eta * nbar + nu/N))
double click_probability(double nbar, const SystemModel& model);

/// Poisson photon-count pmf nbar^n e^{-nbar} / n!.
double photon_count_pmf(double nbar, unsigned n);

/// Single-slice Bayesian update: posterior(k) ~ P(outcome | alpha_k, beta) *
/// prior(k), renormalized. The per-hypothesis slice mean is
/// displaced_mean(alpha_k, beta, V) / N with N = model.slices.
///
/// Likelihoods switch to log space when the largest exponent exceeds 30, so
/// a long run of no-clicks at high power cannot underflow the posterior.
/// Throws degenerate_evidence_error when every likelihood vanishes.
BeliefState bayes_update(const BeliefState& prior, Amplitude beta, SliceOutcome outcome,
                         const StateEnsemble& ensemble, const SystemModel& model);

}  // namespace aqr
