// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "aqr/ensemble.hpp"
#include "aqr/photodetection.hpp"

namespace aqr {

enum class StrategyKind {
    non_optimized,  ///< constant |beta| = |alpha| (ratio fixed to 1)
    flat,           ///< one ratio shared by all slices
    sequential,     ///< one ratio per slice, shared across histories
    historical      ///< one ratio per history-tree node (2^N - 1 of them)
};

const char* to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(const std::string& name);

/// Displacement schedule. Ratios are |beta|/|alpha| relative to the nulled
/// hypothesis; the phase of beta is always chosen at run time by the MAP
/// rule, so only magnitudes are scheduled.
///
/// Historical schedules index tree nodes heap-style: the node that sets the
/// displacement for slice j after prefix outcomes (d_1 .. d_{j-1}) sits at
/// index (2^{j-1} - 1) + prefix, with d_1 the most significant prefix bit
/// and click encoded as 1. The root (slice 1) is index 0 and children of
/// node q are 2q+1 (no-click) and 2q+2 (click).
struct Strategy {
    StrategyKind kind = StrategyKind::non_optimized;
    int slices = 1;              ///< N; must match SystemModel::slices
    std::vector<double> ratios;  ///< size 1, N, or 2^N - 1 depending on kind

    /// Schedule lookup for the given slice (1-based) and tree node index.
    double ratio_at(int slice, std::uint32_t node) const;

    /// Throws std::invalid_argument on shape mismatch or ratios outside
    /// [0, r_max].
    void validate(double r_max = 5.0) const;
};

Strategy non_optimized_strategy(int slices);
Strategy flat_strategy(int slices, double ratio);
Strategy sequential_strategy(std::vector<double> ratios);
Strategy historical_strategy(int slices, std::vector<double> ratios);

/// Number of nodes in the depth-N binary history tree, 2^N - 1.
std::uint32_t history_tree_size(int slices);

/// One row of the exact per-history breakdown. history packs the outcomes
/// as bits with d_1 most significant, so histories enumerate in the order
/// the depth-first evaluation visits the leaves.
struct HistoryEntry {
    std::uint32_t history = 0;
    double probability = 0.0;    ///< P_{D_H}
    int decided = 0;             ///< MAP decision at the leaf (0-based)
    double correct_prob = 0.0;   ///< joint P(history and correct decision)
};

/// Exact evaluation result. channel[k][j] = P(decide j | sent k).
struct ErrorReport {
    double p_error = 0.0;
    std::vector<std::vector<double>> channel;
    std::vector<HistoryEntry> per_history;  ///< filled only on request
};

/// Index of the maximum-posterior hypothesis; ties break to the lowest
/// index, so a uniform belief always selects hypothesis 0.
int map_phase(const BeliefState& belief, const StateEnsemble& ensemble);

/// Exact error probability of an adaptive strategy by depth-first
/// enumeration of all 2^N detection histories.
///
/// Each tree node carries the joint weights w(k) = P(sent k, prefix); the
/// displacement nulls the maximum-weight hypothesis with the scheduled
/// ratio, both branch probabilities come from click_probability under each
/// hypothesis with per-slice mean nbar/N, and a leaf decides by the
/// maximum terminal weight. Branches of exactly zero probability are
/// pruned unless the per-history table is requested.
ErrorReport evaluate_strategy(const Strategy& strategy, const StateEnsemble& ensemble,
                              const SystemModel& model, bool with_history_table = false);

/// The M x M channel induced by the receiver; rows sum to 1.
std::vector<std::vector<double>> induced_channel(const Strategy& strategy,
                                                 const StateEnsemble& ensemble,
                                                 const SystemModel& model);

namespace detail {

/// Precomputed per-scenario lookups for the hot tree walks: displacements
/// always null a constellation point, so the per-slice exponent reduces to
/// a quadratic in the schedule ratio with fixed coefficients.
struct ScenarioTables {
    std::size_t m = 0;
    int slices = 1;
    double eta_per_slice = 1.0;  ///< efficiency / N
    double dark_per_slice = 0.0; ///< nu / N
    std::vector<double> photon;  ///< |alpha_k|^2
    std::vector<double> cross;   ///< [k*m + j] = 2 V |alpha_k| |alpha_j| cos(phi_k - phi_j)
    std::vector<double> priors;
};

ScenarioTables build_tables(const StateEnsemble& ensemble, const SystemModel& model);

/// Detector exponent (eta * nbar/N + nu/N) for hypothesis k when the slice
/// nulls hypothesis j with ratio r.
double slice_exponent(const ScenarioTables& tables, std::size_t k, std::size_t j, double r);

/// MAP hypothesis given conditionals cond(k) = P(prefix | sent k); ties to
/// the lowest index.
int argmax_posterior(const ScenarioTables& tables, const double* cond);

/// Splits cond into the no-click and click branches for a slice nulling
/// hypothesis `nulled` with the given ratio.
void slice_branch(const ScenarioTables& tables, const double* cond, int nulled, double ratio,
                  double* cond_no, double* cond_yes);

/// Schedule lookup shared with the optimizers, which mutate raw ratio
/// arrays in place instead of rebuilding Strategy values.
double schedule_ratio(StrategyKind kind, const std::vector<double>& ratios, int slice,
                      std::uint32_t node);

/// Scratch size for correct_mass: two child buffers per remaining depth.
std::size_t arena_size(const ScenarioTables& tables);

/// Correct-decision probability mass of the subtree rooted at `node`,
/// where cond(k) = P(prefix | sent k) after slices_done slices. The full
/// tree mass is 1 - P_e.
double correct_mass(const ScenarioTables& tables, StrategyKind kind,
                    const std::vector<double>& ratios, std::vector<double>& arena,
                    const double* cond, int slices_done, std::uint32_t node);

}  // namespace detail

}  // namespace aqr
