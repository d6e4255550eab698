// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/receiver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aqr {

const char* to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::non_optimized: return "non-optimized";
        case StrategyKind::flat: return "flat";
        case StrategyKind::sequential: return "sequential";
        case StrategyKind::historical: return "historical";
    }
    throw std::invalid_argument("unknown strategy kind");
}

StrategyKind strategy_kind_from_string(const std::string& name) {
    if (name == "non-optimized") return StrategyKind::non_optimized;
    if (name == "flat") return StrategyKind::flat;
    if (name == "sequential") return StrategyKind::sequential;
    if (name == "historical") return StrategyKind::historical;
    throw std::invalid_argument("unknown strategy kind: " + name);
}

std::uint32_t history_tree_size(int slices) {
    if (slices < 1 || slices > 30) throw std::invalid_argument("slices must lie in [1, 30]");
    return (std::uint32_t{1} << slices) - 1;
}

double Strategy::ratio_at(int slice, std::uint32_t node) const {
    return detail::schedule_ratio(kind, ratios, slice, node);
}

void Strategy::validate(double r_max) const {
    if (slices < 1) throw std::invalid_argument("strategy needs at least 1 slice");
    std::size_t expected = 0;
    switch (kind) {
        case StrategyKind::non_optimized:
        case StrategyKind::flat: expected = 1; break;
        case StrategyKind::sequential: expected = static_cast<std::size_t>(slices); break;
        case StrategyKind::historical: expected = history_tree_size(slices); break;
    }
    if (ratios.size() != expected)
        throw std::invalid_argument("schedule shape does not match the strategy kind and N");
    for (double r : ratios)
        if (!std::isfinite(r) || r < 0.0 || r > r_max)
            throw std::invalid_argument("ratios must lie in [0, r_max]");
    if (kind == StrategyKind::non_optimized && ratios[0] != 1.0)
        throw std::invalid_argument("the non-optimized strategy fixes the ratio to 1");
}

Strategy non_optimized_strategy(int slices) {
    Strategy s{StrategyKind::non_optimized, slices, {1.0}};
    s.validate();
    return s;
}

Strategy flat_strategy(int slices, double ratio) {
    Strategy s{StrategyKind::flat, slices, {ratio}};
    s.validate(std::numeric_limits<double>::infinity());
    return s;
}

Strategy sequential_strategy(std::vector<double> ratios) {
    Strategy s{StrategyKind::sequential, static_cast<int>(ratios.size()), std::move(ratios)};
    s.validate(std::numeric_limits<double>::infinity());
    return s;
}

Strategy historical_strategy(int slices, std::vector<double> ratios) {
    Strategy s{StrategyKind::historical, slices, std::move(ratios)};
    s.validate(std::numeric_limits<double>::infinity());
    return s;
}

int map_phase(const BeliefState& belief, const StateEnsemble& ensemble) {
    if (belief.size() != ensemble.size())
        throw std::invalid_argument("belief length does not match the ensemble");
    if (belief.size() == 0) throw std::invalid_argument("empty belief");
    int best = 0;
    for (std::size_t k = 1; k < belief.size(); ++k)
        if (belief.probs[k] > belief.probs[static_cast<std::size_t>(best)])
            best = static_cast<int>(k);
    return best;
}

namespace detail {

ScenarioTables build_tables(const StateEnsemble& ensemble, const SystemModel& model) {
    model.validate();
    const std::size_t m = ensemble.size();
    if (m == 0) throw std::invalid_argument("empty ensemble");

    ScenarioTables tables;
    tables.m = m;
    tables.slices = model.slices;
    tables.eta_per_slice = model.efficiency / model.slices;
    tables.dark_per_slice = model.dark_per_slice();
    tables.priors = ensemble.priors;
    tables.photon.resize(m);
    tables.cross.resize(m * m);
    for (std::size_t k = 0; k < m; ++k) tables.photon[k] = std::norm(ensemble.amplitudes[k]);
    for (std::size_t k = 0; k < m; ++k) {
        const double ak = std::abs(ensemble.amplitudes[k]);
        const double phik = std::arg(ensemble.amplitudes[k]);
        for (std::size_t j = 0; j < m; ++j) {
            const double aj = std::abs(ensemble.amplitudes[j]);
            const double phij = std::arg(ensemble.amplitudes[j]);
            tables.cross[k * m + j] =
                2.0 * model.visibility * ak * aj * std::cos(phik - phij);
        }
    }
    return tables;
}

double slice_exponent(const ScenarioTables& tables, std::size_t k, std::size_t j, double r) {
    const double nbar =
        tables.photon[k] + r * r * tables.photon[j] - r * tables.cross[k * tables.m + j];
    return tables.eta_per_slice * std::max(nbar, 0.0) + tables.dark_per_slice;
}

int argmax_posterior(const ScenarioTables& tables, const double* cond) {
    int best = 0;
    double best_w = tables.priors[0] * cond[0];
    for (std::size_t k = 1; k < tables.m; ++k) {
        const double w = tables.priors[k] * cond[k];
        if (w > best_w) {
            best = static_cast<int>(k);
            best_w = w;
        }
    }
    return best;
}

void slice_branch(const ScenarioTables& tables, const double* cond, int nulled, double ratio,
                  double* cond_no, double* cond_yes) {
    for (std::size_t k = 0; k < tables.m; ++k) {
        const double exponent = slice_exponent(tables, k, static_cast<std::size_t>(nulled), ratio);
        cond_no[k] = cond[k] * std::exp(-exponent);
        cond_yes[k] = cond[k] * -std::expm1(-exponent);
    }
}

double schedule_ratio(StrategyKind kind, const std::vector<double>& ratios, int slice,
                      std::uint32_t node) {
    switch (kind) {
        case StrategyKind::non_optimized:
        case StrategyKind::flat: return ratios[0];
        case StrategyKind::sequential: return ratios[static_cast<std::size_t>(slice - 1)];
        case StrategyKind::historical: return ratios[node];
    }
    throw std::invalid_argument("unknown strategy kind");
}

std::size_t arena_size(const ScenarioTables& tables) {
    return 2 * static_cast<std::size_t>(tables.slices) * tables.m;
}

double correct_mass(const ScenarioTables& tables, StrategyKind kind,
                    const std::vector<double>& ratios, std::vector<double>& arena,
                    const double* cond, int slices_done, std::uint32_t node) {
    const std::size_t m = tables.m;
    const int nulled = argmax_posterior(tables, cond);
    if (slices_done == tables.slices)
        return tables.priors[static_cast<std::size_t>(nulled)] *
               cond[static_cast<std::size_t>(nulled)];

    if (arena.size() < arena_size(tables)) arena.resize(arena_size(tables));
    double* cond_no = arena.data() + 2 * static_cast<std::size_t>(slices_done) * m;
    double* cond_yes = cond_no + m;
    const double ratio = schedule_ratio(kind, ratios, slices_done + 1, node);
    slice_branch(tables, cond, nulled, ratio, cond_no, cond_yes);

    double total_no = 0.0, total_yes = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        total_no += cond_no[k];
        total_yes += cond_yes[k];
    }
    double mass = 0.0;
    if (total_no > 0.0)
        mass += correct_mass(tables, kind, ratios, arena, cond_no, slices_done + 1, 2 * node + 1);
    // the no-branch recursion only touches deeper arena levels, so cond_yes
    // is still intact here
    if (total_yes > 0.0)
        mass += correct_mass(tables, kind, ratios, arena, cond_yes, slices_done + 1, 2 * node + 2);
    return mass;
}

}  // namespace detail

namespace {

struct TreeEvaluator {
    const detail::ScenarioTables& tables;
    const Strategy& strategy;
    bool keep_history;

    double p_correct = 0.0;
    std::vector<std::vector<double>> channel;  // [sent][decided], conditional on sent
    std::vector<HistoryEntry> history;
    std::vector<double> arena;

    TreeEvaluator(const detail::ScenarioTables& t, const Strategy& s, bool keep)
        : tables(t), strategy(s), keep_history(keep) {
        channel.assign(t.m, std::vector<double>(t.m, 0.0));
        arena.resize(detail::arena_size(t));
        if (keep_history) history.reserve(std::size_t{1} << t.slices);
    }

    // cond(k) = P(observed prefix | sent k). Leaves are visited in history
    // order (d_1 most significant, no-click first), which fixes the
    // summation order of every accumulator.
    void descend(const double* cond, int depth, std::uint32_t node, std::uint32_t bits) {
        const std::size_t m = tables.m;
        const int map_index = detail::argmax_posterior(tables, cond);
        if (depth == tables.slices) {
            double leaf_p = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                leaf_p += tables.priors[k] * cond[k];
                channel[k][static_cast<std::size_t>(map_index)] += cond[k];
            }
            const double correct = tables.priors[static_cast<std::size_t>(map_index)] *
                                   cond[static_cast<std::size_t>(map_index)];
            p_correct += correct;
            if (keep_history) history.push_back(HistoryEntry{bits, leaf_p, map_index, correct});
            return;
        }

        double* cond_no = arena.data() + 2 * static_cast<std::size_t>(depth) * m;
        double* cond_yes = cond_no + m;
        const double ratio = strategy.ratio_at(depth + 1, node);
        detail::slice_branch(tables, cond, map_index, ratio, cond_no, cond_yes);

        double total_no = 0.0, total_yes = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            total_no += cond_no[k];
            total_yes += cond_yes[k];
        }

        // A branch that is impossible under every hypothesis carries
        // nothing; walk it only when the complete 2^N-row table is wanted.
        if (total_no > 0.0 || keep_history)
            descend(cond_no, depth + 1, 2 * node + 1, bits << 1);
        if (total_yes > 0.0 || keep_history)
            descend(cond_yes, depth + 1, 2 * node + 2, (bits << 1) | 1u);
    }
};

}  // namespace

ErrorReport evaluate_strategy(const Strategy& strategy, const StateEnsemble& ensemble,
                              const SystemModel& model, bool with_history_table) {
    strategy.validate(std::numeric_limits<double>::infinity());
    if (strategy.slices != model.slices)
        throw std::invalid_argument("strategy and model disagree on the slice count");

    const auto tables = detail::build_tables(ensemble, model);
    TreeEvaluator eval(tables, strategy, with_history_table);
    const std::vector<double> ones(ensemble.size(), 1.0);
    eval.descend(ones.data(), 0, 0, 0);

    ErrorReport report;
    report.p_error = 1.0 - eval.p_correct;
    report.channel = std::move(eval.channel);
    report.per_history = std::move(eval.history);
    return report;
}

std::vector<std::vector<double>> induced_channel(const Strategy& strategy,
                                                 const StateEnsemble& ensemble,
                                                 const SystemModel& model) {
    return evaluate_strategy(strategy, ensemble, model).channel;
}

}  // namespace aqr
