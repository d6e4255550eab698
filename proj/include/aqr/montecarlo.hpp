// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "aqr/receiver.hpp"

namespace aqr {

/// Outcome statistics of a batch of independent discrimination trials.
struct TrialBatchResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double p_hat = 0.0;      ///< errors / trials
    double std_error = 0.0;  ///< binomial standard error sqrt(p(1-p)/trials)
    std::uint64_t seed = 0;
    /// confusion[sent][decided]; row sums equal the per-input trial counts.
    std::vector<std::vector<std::uint64_t>> confusion;
};

/// Runs seeded stochastic trials of the receiver: each trial draws a true
/// state from the priors, samples the N slice outcomes under the true state
/// with the strategy's MAP-phase, scheduled-amplitude displacement, updates
/// the belief by bayes_update, and decides with map_phase at the end.
///
/// Trial t uses its own generator seeded from (seed, t) by a splitmix64
/// mix, so results are identical for identical inputs and seed regardless
/// of how trials are partitioned across threads.
TrialBatchResult simulate_trials(const Strategy& strategy, const StateEnsemble& ensemble,
                                 const SystemModel& model, std::uint64_t trials,
                                 std::uint64_t seed, int threads = 1);

}  // namespace aqr
