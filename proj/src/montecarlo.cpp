// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace aqr {

namespace {

// splitmix64: mixes (seed, counter) into an independent per-trial stream.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 mix{seed};
    (void)mix.next();
    mix.state ^= 0x94D049BB133111EBULL * (trial + 1);
    (void)mix.next();
    return mix;
}

struct Tally {
    std::uint64_t errors = 0;
    std::vector<std::uint64_t> confusion;  // row-major M x M
};

void run_block(const Strategy& strategy, const StateEnsemble& ensemble, const SystemModel& model,
               std::uint64_t seed, std::uint64_t begin, std::uint64_t end, Tally& tally) {
    const std::size_t m = ensemble.size();
    tally.confusion.assign(m * m, 0);

    for (std::uint64_t t = begin; t < end; ++t) {
        SplitMix64 rng = trial_stream(seed, t);

        // draw the true state from the priors
        double u = rng.uniform();
        std::size_t sent = m - 1;
        double cdf = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            cdf += ensemble.priors[k];
            if (u < cdf) {
                sent = k;
                break;
            }
        }

        BeliefState belief = BeliefState{ensemble.priors};
        std::uint32_t node = 0;
        for (int slice = 1; slice <= model.slices; ++slice) {
            const int nulled = map_phase(belief, ensemble);
            const double ratio = strategy.ratio_at(slice, node);
            const Amplitude beta = ratio * ensemble.amplitudes[static_cast<std::size_t>(nulled)];
            const double nbar = displaced_mean(ensemble.amplitudes[sent], beta, model.visibility);
            const double p_click = click_probability(nbar / model.slices, model);
            const SliceOutcome outcome{rng.uniform() < p_click};
            belief = bayes_update(belief, beta, outcome, ensemble, model);
            node = 2 * node + 1 + (outcome.clicked ? 1u : 0u);
        }

        const auto decided = static_cast<std::size_t>(map_phase(belief, ensemble));
        if (decided != sent) ++tally.errors;
        ++tally.confusion[sent * m + decided];
    }
}

}  // namespace

TrialBatchResult simulate_trials(const Strategy& strategy, const StateEnsemble& ensemble,
                                 const SystemModel& model, std::uint64_t trials,
                                 std::uint64_t seed, int threads) {
    model.validate();
    strategy.validate(std::numeric_limits<double>::infinity());
    if (strategy.slices != model.slices)
        throw std::invalid_argument("strategy and model disagree on the slice count");
    if (trials < 1) throw std::invalid_argument("at least one trial is required");

    const std::size_t m = ensemble.size();
    const int workers = std::max(1, threads);
    std::vector<Tally> tallies(static_cast<std::size_t>(workers));

    if (workers == 1) {
        run_block(strategy, ensemble, model, seed, 0, trials, tallies[0]);
    } else {
        // Per-trial streams make the partition irrelevant to the result.
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + static_cast<std::uint64_t>(workers) - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, w, begin, end] {
                run_block(strategy, ensemble, model, seed, begin, end,
                          tallies[static_cast<std::size_t>(w)]);
            });
        }
        for (auto& th : pool) th.join();
    }

    TrialBatchResult result;
    result.trials = trials;
    result.seed = seed;
    result.confusion.assign(m, std::vector<std::uint64_t>(m, 0));
    for (const Tally& tally : tallies) {
        if (tally.confusion.empty()) continue;
        result.errors += tally.errors;
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < m; ++j) result.confusion[k][j] += tally.confusion[k * m + j];
    }
    result.p_hat = static_cast<double>(result.errors) / static_cast<double>(trials);
    result.std_error =
        std::sqrt(result.p_hat * (1.0 - result.p_hat) / static_cast<double>(trials));
    return result;
}

}  // namespace aqr
