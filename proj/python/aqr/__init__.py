# Copyright 2026 the aqr developers
# SPDX-License-Identifier: Apache-2.0
"""Adaptive coherent-state receiver simulator and schedule optimizer."""

from aqr._core import (  # noqa: F401
    BeliefState,
    DegenerateEvidenceError,
    ErrorReport,
    HistoryEntry,
    OptimizationResult,
    ScheduleRecord,
    SliceOutcome,
    StateEnsemble,
    Strategy,
    StrategyKind,
    SystemModel,
    TrialBatchResult,
    __version__,
    bayes_update,
    click_probability,
    displaced_mean,
    ensemble_from_amplitudes,
    evaluate_strategy,
    flat_strategy,
    helstrom_mpsk,
    heterodyne_capacity,
    historical_strategy,
    holevo_bound,
    induced_channel,
    load_schedule,
    make_mpsk_ensemble,
    map_phase,
    mutual_information,
    non_optimized_strategy,
    optimize_flat,
    optimize_historical,
    optimize_sequential,
    photon_count_pmf,
    qnl_heterodyne,
    save_schedule,
    sequential_strategy,
    simulate_trials,
)
