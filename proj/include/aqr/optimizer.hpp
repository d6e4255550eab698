// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aqr/receiver.hpp"

namespace aqr {

/// Knobs shared by the schedule optimizers. Defaults give reproducible
/// runs: random restarts draw from a fixed-seed generator.
struct OptimizeOptions {
    double r_max = 5.0;            ///< upper bound on |beta|/|alpha|
    int restarts = 4;              ///< random restarts on top of the seeded run
    std::uint64_t rng_seed = 42;   ///< restart draw seed
    double improvement_tol = 1e-9; ///< stop when a full pass gains less
    int max_passes = 200;          ///< cap on coordinate cycles / tree sweeps
    int slice_cap = 10;            ///< historical refuses N above this
    int threads = 1;               ///< parallel restarts
};

struct OptimizationResult {
    Strategy strategy;
    double p_error = 1.0;
    int iterations = 0;    ///< outer passes (cycles or sweeps) of the best run
    bool converged = false;
    std::vector<double> objective_history;  ///< accepted objective values, non-increasing
};

/// Minimizes P_e over a single ratio shared by all slices: 64-point grid
/// seed refined by golden-section to |dr| < 1e-5. Never returns a result
/// worse than the non-optimized ratio r = 1.
OptimizationResult optimize_flat(const StateEnsemble& ensemble, const SystemModel& model,
                                 double r_max = 5.0);

/// Jointly minimizes P_e over the N per-slice ratios: seeded from the flat
/// optimum (or the given strategy), refined by cyclic coordinate descent
/// with a golden-section line search, polished by Nelder-Mead, best of the
/// seeded run plus random restarts.
OptimizationResult optimize_sequential(const StateEnsemble& ensemble, const SystemModel& model,
                                       double r_max = 5.0,
                                       const std::optional<Strategy>& seed = {},
                                       const OptimizeOptions& options = {});

/// Minimizes P_e over all 2^N - 1 history-tree node ratios, seeded by
/// broadcasting the sequential optimum along depths. Breadth-first
/// coordinate sweeps optimize each node against only its own subtree (the
/// rest of the tree is unaffected by that node's ratio), iterated until a
/// full sweep improves by less than the tolerance.
///
/// Throws std::invalid_argument when N exceeds options.slice_cap.
OptimizationResult optimize_historical(const StateEnsemble& ensemble, const SystemModel& model,
                                       double r_max = 5.0,
                                       const std::optional<Strategy>& seed = {},
                                       const OptimizeOptions& options = {});

}  // namespace aqr
