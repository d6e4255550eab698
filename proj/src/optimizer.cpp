// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/optimizer.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "minimize.hpp"

namespace aqr {

namespace {

constexpr int kFlatGridPoints = 64;
constexpr int kLineGridPoints = 12;
constexpr double kScalarTol = 1e-5;  // golden-section interval width on ratios

double splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

/// Full-tree P_e for the given schedule, reusing the caller's scratch.
struct Objective {
    const detail::ScenarioTables& tables;
    StrategyKind kind;
    std::vector<double> ones;
    std::vector<double> arena;

    Objective(const detail::ScenarioTables& t, StrategyKind k)
        : tables(t), kind(k), ones(t.m, 1.0), arena(detail::arena_size(t)) {}

    double operator()(const std::vector<double>& ratios) {
        return 1.0 - detail::correct_mass(tables, kind, ratios, arena, ones.data(), 0, 0);
    }
};

struct LocalSearchOutcome {
    std::vector<double> ratios;
    double p_error = 1.0;
    int passes = 0;
    bool converged = false;
    std::vector<double> history;
};

/// Cyclic coordinate descent with a grid-seeded golden-section line search
/// per coordinate, followed by a Nelder-Mead polish. Never returns a worse
/// objective than the starting point.
LocalSearchOutcome coordinate_descent_polish(const detail::ScenarioTables& tables,
                                             StrategyKind kind, std::vector<double> ratios,
                                             const OptimizeOptions& options) {
    Objective objective(tables, kind);
    LocalSearchOutcome outcome;
    const int n = static_cast<int>(ratios.size());
    double current = objective(ratios);
    outcome.history.push_back(current);

    for (int pass = 0; pass < options.max_passes; ++pass) {
        double gain = 0.0;
        for (int j = 0; j < n; ++j) {
            auto line = [&](double r) {
                ratios[static_cast<std::size_t>(j)] = r;
                return objective(ratios);
            };
            const double old_r = ratios[static_cast<std::size_t>(j)];
            auto [best_r, best_f] =
                detail::grid_golden(line, 0.0, options.r_max, kLineGridPoints, kScalarTol);
            if (best_f < current) {
                ratios[static_cast<std::size_t>(j)] = best_r;
                gain += current - best_f;
                current = best_f;
            } else {
                ratios[static_cast<std::size_t>(j)] = old_r;
            }
        }
        ++outcome.passes;
        outcome.history.push_back(current);
        if (gain < options.improvement_tol) {
            outcome.converged = true;
            break;
        }
    }

    const double step = std::max(1e-3, 0.02 * options.r_max);
    auto polished = detail::nelder_mead([&objective](const std::vector<double>& x) { return objective(x); },
                                        ratios, step, 0.0, options.r_max, 1e-12,
                                        400 * std::max(n, 2));
    if (polished.fx < current) {
        ratios = polished.x;
        current = polished.fx;
        outcome.history.push_back(current);
    }

    outcome.ratios = std::move(ratios);
    outcome.p_error = current;
    return outcome;
}

/// Runs one deterministic local search per start (index 0 is the seeded
/// start, the rest are random draws) and keeps the best, ties to the lowest
/// start index. Starts may run on worker threads; the pick is unaffected.
LocalSearchOutcome best_of_starts(const detail::ScenarioTables& tables, StrategyKind kind,
                                  const std::vector<double>& seeded,
                                  const OptimizeOptions& options) {
    std::vector<std::vector<double>> starts{seeded};
    for (int i = 0; i < options.restarts; ++i) {
        std::uint64_t state = options.rng_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1));
        (void)splitmix64(state);
        std::vector<double> draw(seeded.size());
        for (double& r : draw) r = options.r_max * splitmix64(state);
        starts.push_back(std::move(draw));
    }

    std::vector<LocalSearchOutcome> outcomes(starts.size());
    const int threads =
        std::max(1, std::min<int>(options.threads, static_cast<int>(starts.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < starts.size(); ++i)
            outcomes[i] = coordinate_descent_polish(tables, kind, starts[i], options);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < starts.size(); i = next.fetch_add(1))
                    outcomes[i] = coordinate_descent_polish(tables, kind, starts[i], options);
            });
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        if (outcomes[i].p_error < outcomes[best].p_error) best = i;
    return std::move(outcomes[best]);
}

int node_depth(std::uint32_t node) { return std::bit_width(node + 1) - 1; }

}  // namespace

OptimizationResult optimize_flat(const StateEnsemble& ensemble, const SystemModel& model,
                                 double r_max) {
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    const auto tables = detail::build_tables(ensemble, model);
    Objective objective(tables, StrategyKind::flat);
    std::vector<double> ratios{0.0};
    auto line = [&](double r) {
        ratios[0] = r;
        return objective(ratios);
    };

    OptimizationResult result;
    auto [best_r, best_f] = detail::grid_golden(line, 0.0, r_max, kFlatGridPoints, kScalarTol);
    if (r_max >= 1.0) {
        // never worse than the non-optimized ratio
        const double f1 = line(1.0);
        result.objective_history.push_back(f1);
        if (f1 < best_f) {
            best_r = 1.0;
            best_f = f1;
        }
    }
    result.objective_history.push_back(best_f);

    result.strategy = flat_strategy(model.slices, best_r);
    result.p_error = evaluate_strategy(result.strategy, ensemble, model).p_error;
    result.iterations = 1;
    result.converged = true;
    return result;
}

OptimizationResult optimize_sequential(const StateEnsemble& ensemble, const SystemModel& model,
                                       double r_max, const std::optional<Strategy>& seed,
                                       const OptimizeOptions& options_in) {
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    OptimizeOptions options = options_in;
    options.r_max = r_max;

    const auto n = static_cast<std::size_t>(model.slices);
    std::vector<double> seeded;
    if (seed) {
        seed->validate(r_max);
        if (seed->slices != model.slices)
            throw std::invalid_argument("seed strategy has the wrong slice count");
        switch (seed->kind) {
            case StrategyKind::sequential: seeded = seed->ratios; break;
            case StrategyKind::historical:
                throw std::invalid_argument(
                    "cannot seed a sequential schedule from a historical one");
            default: seeded.assign(n, seed->ratios[0]); break;
        }
    } else {
        seeded.assign(n, optimize_flat(ensemble, model, r_max).strategy.ratios[0]);
    }

    const auto tables = detail::build_tables(ensemble, model);
    auto best = best_of_starts(tables, StrategyKind::sequential, seeded, options);

    OptimizationResult result;
    result.strategy = sequential_strategy(std::move(best.ratios));
    result.p_error = evaluate_strategy(result.strategy, ensemble, model).p_error;
    result.iterations = best.passes;
    result.converged = best.converged;
    result.objective_history = std::move(best.history);
    return result;
}

OptimizationResult optimize_historical(const StateEnsemble& ensemble, const SystemModel& model,
                                       double r_max, const std::optional<Strategy>& seed,
                                       const OptimizeOptions& options_in) {
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    if (model.slices > options_in.slice_cap)
        throw std::invalid_argument("slice count exceeds the historical dimension cap");
    OptimizeOptions options = options_in;
    options.r_max = r_max;

    const std::uint32_t tree_size = history_tree_size(model.slices);

    // Seed by broadcasting a per-depth schedule along the tree.
    std::vector<double> ratios(tree_size);
    std::vector<double> per_depth;
    if (seed) {
        seed->validate(r_max);
        if (seed->slices != model.slices)
            throw std::invalid_argument("seed strategy has the wrong slice count");
        if (seed->kind == StrategyKind::historical) {
            ratios = seed->ratios;
        } else if (seed->kind == StrategyKind::sequential) {
            per_depth = seed->ratios;
        } else {
            per_depth.assign(static_cast<std::size_t>(model.slices), seed->ratios[0]);
        }
    } else {
        per_depth = optimize_sequential(ensemble, model, r_max, {}, options).strategy.ratios;
    }
    if (!per_depth.empty())
        for (std::uint32_t q = 0; q < tree_size; ++q)
            ratios[q] = per_depth[static_cast<std::size_t>(node_depth(q))];

    const auto tables = detail::build_tables(ensemble, model);
    const std::size_t m = tables.m;
    Objective objective(tables, StrategyKind::historical);
    double current = objective(ratios);

    OptimizationResult result;
    result.objective_history.push_back(current);

    // Breadth-first sweeps: node q is visited after its ancestors, so its
    // incoming conditionals already reflect this sweep's upstream updates,
    // and its ratio only moves probability mass inside its own subtree.
    std::vector<std::vector<double>> cond(tree_size);
    std::vector<double> arena(detail::arena_size(tables));
    int pass = 0;
    bool converged = false;
    while (pass < options.max_passes && !converged) {
        double gain = 0.0;
        for (std::uint32_t q = 0; q < tree_size; ++q) {
            const int depth = node_depth(q);
            if (q == 0) {
                cond[0].assign(m, 1.0);
            } else {
                const std::uint32_t parent = (q - 1) / 2;
                if (cond[q].size() != m) cond[q].resize(m);
                const int nulled = detail::argmax_posterior(tables, cond[parent].data());
                if ((q - 1) % 2 == 0) {
                    std::vector<double> dropped(m);
                    detail::slice_branch(tables, cond[parent].data(), nulled, ratios[parent],
                                         cond[q].data(), dropped.data());
                } else {
                    std::vector<double> dropped(m);
                    detail::slice_branch(tables, cond[parent].data(), nulled, ratios[parent],
                                         dropped.data(), cond[q].data());
                }
            }

            double reach = 0.0;  // probability of reaching this node
            for (std::size_t k = 0; k < m; ++k) reach += tables.priors[k] * cond[q][k];
            if (reach == 0.0) continue;

            auto line = [&](double r) {
                ratios[q] = r;
                return -detail::correct_mass(tables, StrategyKind::historical, ratios, arena,
                                             cond[q].data(), depth, q);
            };
            const double old_r = ratios[q];
            const double old_mass = -line(old_r);
            auto [best_r, best_neg] =
                detail::grid_golden(line, 0.0, options.r_max, kLineGridPoints, kScalarTol);
            if (-best_neg > old_mass) {
                ratios[q] = best_r;
                gain += -best_neg - old_mass;
            } else {
                ratios[q] = old_r;
            }
        }
        ++pass;
        current = objective(ratios);
        result.objective_history.push_back(current);
        converged = gain < options.improvement_tol;
    }

    result.strategy = historical_strategy(model.slices, std::move(ratios));
    result.p_error = evaluate_strategy(result.strategy, ensemble, model).p_error;
    result.iterations = pass;
    result.converged = converged;
    return result;
}

}  // namespace aqr
