// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: optimize displacement schedules over a mean-photon
// grid, tabulate reference bounds, run Monte Carlo batches against saved
// schedules, and compute mutual-information datasets. Every output is a CSV
// with a JSON provenance sidecar so a plot can be regenerated from its
// inputs.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aqr/bounds.hpp"
#include "aqr/dataset.hpp"
#include "aqr/infotheory.hpp"
#include "aqr/montecarlo.hpp"
#include "aqr/optimizer.hpp"
#include "aqr/schedule_io.hpp"
#include "aqr/version.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kMaxHistorySlices = 12;

struct SweepConfig {
    std::size_t m = 4;
    int slices = 10;
    std::vector<std::string> kinds;
    std::vector<double> grid;
    aqr::SystemModel model;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    double r_max = 5.0;
    int threads = 1;
    std::string schedule_dir;
    nlohmann::json raw;
};

std::vector<double> build_grid(double min, double max, int count, const std::string& scale) {
    if (count < 1) throw std::invalid_argument("grid count must be at least 1");
    if (!(min <= max)) throw std::invalid_argument("grid min must not exceed max");
    if (scale != "log" && scale != "linear")
        throw std::invalid_argument("grid scale must be 'log' or 'linear'");
    if (scale == "log" && !(min > 0.0))
        throw std::invalid_argument("log grids need a positive minimum");

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        grid.push_back(min);
        return grid;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        grid.push_back(scale == "log" ? min * std::pow(max / min, t)
                                      : min + t * (max - min));
    }
    return grid;
}

SweepConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed config file: " + std::string(e.what()));
    }

    SweepConfig config;
    config.raw = j;
    config.m = j.at("M").get<std::size_t>();
    config.slices = j.at("slices").get<int>();
    if (j.contains("kinds")) config.kinds = j.at("kinds").get<std::vector<std::string>>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        config.grid = build_grid(g.at("min").get<double>(), g.at("max").get<double>(),
                                 g.at("count").get<int>(),
                                 g.value("scale", std::string("linear")));
    }
    if (j.contains("model")) {
        const auto& model = j.at("model");
        config.model.efficiency = model.value("efficiency", 1.0);
        config.model.visibility = model.value("visibility", 1.0);
        config.model.dark_per_pulse = model.value("dark_per_pulse", 0.0);
    }
    config.model.slices = config.slices;
    config.model.validate();
    if (j.contains("trials")) config.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("r_max")) config.r_max = j.at("r_max").get<double>();
    if (!(config.r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    if (j.contains("threads")) config.threads = j.at("threads").get<int>();
    if (config.threads < 1) config.threads = 1;
    if (j.contains("schedule_dir")) config.schedule_dir = j.at("schedule_dir").get<std::string>();
    for (const auto& kind : config.kinds) (void)aqr::strategy_kind_from_string(kind);
    return config;
}

/// Runs fn(i) for i in [0, count) on `threads` workers; any exception is
/// rethrown on the caller thread.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string schedule_filename(const std::string& kind, std::size_t grid_index) {
    std::ostringstream name;
    name << "schedule_" << kind << "_g" << std::setw(3) << std::setfill('0') << grid_index
         << ".json";
    return name.str();
}

nlohmann::json history_table_json(const aqr::ErrorReport& report, int slices) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& entry : report.per_history) {
        std::string bits(static_cast<std::size_t>(slices), '0');
        for (int b = 0; b < slices; ++b)
            if (entry.history >> (slices - 1 - b) & 1u) bits[static_cast<std::size_t>(b)] = '1';
        rows.push_back({{"history", bits},
                        {"probability", entry.probability},
                        {"decided", entry.decided + 1},
                        {"correct_prob", entry.correct_prob}});
    }
    return rows;
}

int cmd_optimize(const SweepConfig& config, const fs::path& out, bool emit_histories) {
    if (config.kinds.empty())
        throw std::invalid_argument("optimize needs a non-empty 'kinds' list");
    if (config.grid.empty()) throw std::invalid_argument("optimize needs a 'grid'");
    if (emit_histories && config.slices > kMaxHistorySlices)
        throw std::invalid_argument("--emit-histories supports at most 12 slices");

    fs::path schedule_dir = config.schedule_dir.empty()
                                ? out.parent_path() / (out.stem().string() + "_schedules")
                                : fs::path(config.schedule_dir);
    fs::create_directories(schedule_dir);

    struct Row {
        double mean_photon;
        std::string kind;
        double p_error;
        std::string file;
    };
    std::vector<std::vector<Row>> rows(config.grid.size());

    aqr::OptimizeOptions options;
    options.r_max = config.r_max;
    options.threads = 1;  // the grid is already parallel

    parallel_for(config.grid.size(), config.threads, [&](std::size_t g) {
        const double mean_photon = config.grid[g];
        const auto ensemble = aqr::make_mpsk_ensemble(config.m, mean_photon);

        // Optimized kinds chain their seeds: flat -> sequential -> historical.
        std::optional<aqr::Strategy> flat_seed, sequential_seed;
        auto optimized = [&](const std::string& kind) -> std::pair<aqr::Strategy, double> {
            const auto parsed = aqr::strategy_kind_from_string(kind);
            switch (parsed) {
                case aqr::StrategyKind::non_optimized: {
                    auto strategy = aqr::non_optimized_strategy(config.slices);
                    const double pe =
                        aqr::evaluate_strategy(strategy, ensemble, config.model).p_error;
                    return {std::move(strategy), pe};
                }
                case aqr::StrategyKind::flat: {
                    auto result = aqr::optimize_flat(ensemble, config.model, config.r_max);
                    flat_seed = result.strategy;
                    return {std::move(result.strategy), result.p_error};
                }
                case aqr::StrategyKind::sequential: {
                    auto result = aqr::optimize_sequential(ensemble, config.model, config.r_max,
                                                           flat_seed, options);
                    sequential_seed = result.strategy;
                    return {std::move(result.strategy), result.p_error};
                }
                case aqr::StrategyKind::historical: {
                    auto result = aqr::optimize_historical(ensemble, config.model, config.r_max,
                                                           sequential_seed, options);
                    return {std::move(result.strategy), result.p_error};
                }
            }
            throw std::invalid_argument("unknown strategy kind: " + kind);
        };

        for (const auto& kind : config.kinds) {
            auto [strategy, p_error] = optimized(kind);
            const std::string file = schedule_filename(kind, g);
            aqr::save_schedule(schedule_dir / file,
                               aqr::ScheduleRecord{strategy, ensemble, config.model, p_error});
            if (emit_histories) {
                const auto report =
                    aqr::evaluate_strategy(strategy, ensemble, config.model, true);
                std::ofstream hist(schedule_dir / (file + ".histories.json"));
                hist << history_table_json(report, config.slices).dump(2) << '\n';
            }
            rows[g].push_back(Row{mean_photon, kind, p_error, file});
        }
    });

    aqr::DatasetWriter writer(out, {"mean_photon", "kind", "p_error", "schedule_file"});
    for (const auto& point : rows)
        for (const auto& row : point)
            writer.append_row({aqr::format_double(row.mean_photon), row.kind,
                               aqr::format_double(row.p_error), row.file});
    writer.finalize("optimize", config.raw);
    return kExitOk;
}

int cmd_bounds(const SweepConfig& config, const fs::path& out) {
    if (config.grid.empty()) throw std::invalid_argument("bounds needs a 'grid'");

    struct Row {
        double qnl, qnl_scaled, helstrom, holevo, capacity;
    };
    std::vector<Row> rows(config.grid.size());
    parallel_for(config.grid.size(), config.threads, [&](std::size_t g) {
        const double nbar = config.grid[g];
        rows[g] = Row{aqr::qnl_heterodyne(config.m, nbar, 1.0),
                      aqr::qnl_heterodyne(config.m, nbar, config.model.efficiency),
                      aqr::helstrom_mpsk(config.m, nbar), aqr::holevo_bound(nbar),
                      aqr::heterodyne_capacity(nbar)};
    });

    aqr::DatasetWriter writer(out, {"mean_photon", "qnl", "qnl_scaled", "helstrom", "holevo",
                                    "heterodyne_capacity"});
    for (std::size_t g = 0; g < config.grid.size(); ++g)
        writer.append_row({aqr::format_double(config.grid[g]), aqr::format_double(rows[g].qnl),
                           aqr::format_double(rows[g].qnl_scaled),
                           aqr::format_double(rows[g].helstrom),
                           aqr::format_double(rows[g].holevo),
                           aqr::format_double(rows[g].capacity)});
    writer.finalize("bounds", config.raw);
    return kExitOk;
}

int cmd_simulate(const SweepConfig& config, const std::vector<fs::path>& schedule_paths,
                 const fs::path& out) {
    if (config.trials < 1)
        throw std::invalid_argument("simulate needs a positive 'trials' count");
    if (schedule_paths.empty()) throw std::invalid_argument("simulate needs schedule files");

    std::vector<aqr::ScheduleRecord> records(schedule_paths.size());
    for (std::size_t i = 0; i < schedule_paths.size(); ++i) {
        records[i] = aqr::load_schedule(schedule_paths[i]);
        if (records[i].model.slices != config.slices ||
            records[i].ensemble.size() != config.m)
            throw std::invalid_argument("schedule " + schedule_paths[i].string() +
                                        " does not match the config scenario");
    }

    std::vector<aqr::TrialBatchResult> results(records.size());
    // One seed stream per schedule; trials inside a batch parallelize.
    for (std::size_t i = 0; i < records.size(); ++i)
        results[i] = aqr::simulate_trials(records[i].strategy, records[i].ensemble,
                                          records[i].model, config.trials,
                                          config.seed + i, config.threads);

    aqr::DatasetWriter writer(out, {"kind", "M", "N", "mean_photon", "efficiency", "visibility",
                                    "dark_per_pulse", "trials", "p_hat", "std_error", "seed"});
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& record = records[i];
        const auto& mc = results[i];
        writer.append_row({to_string(record.strategy.kind), std::to_string(record.ensemble.size()),
                           std::to_string(record.model.slices),
                           aqr::format_double(record.ensemble.mean_photon),
                           aqr::format_double(record.model.efficiency),
                           aqr::format_double(record.model.visibility),
                           aqr::format_double(record.model.dark_per_pulse),
                           std::to_string(mc.trials), aqr::format_double(mc.p_hat),
                           aqr::format_double(mc.std_error), std::to_string(mc.seed)});
    }
    writer.finalize("simulate", config.raw);
    return kExitOk;
}

int cmd_info(const std::vector<fs::path>& schedule_paths, const fs::path& out, int threads,
             const nlohmann::json& provenance) {
    if (schedule_paths.empty()) throw std::invalid_argument("info needs schedule files");

    struct Row {
        std::string kind;
        double mean_photon, bits, capacity, holevo;
    };
    std::vector<Row> rows(schedule_paths.size());
    parallel_for(schedule_paths.size(), threads, [&](std::size_t i) {
        const auto record = aqr::load_schedule(schedule_paths[i]);
        const auto channel =
            aqr::induced_channel(record.strategy, record.ensemble, record.model);
        const std::vector<double> uniform(record.ensemble.size(),
                                          1.0 / static_cast<double>(record.ensemble.size()));
        rows[i] = Row{to_string(record.strategy.kind), record.ensemble.mean_photon,
                      aqr::mutual_information(channel, uniform),
                      aqr::heterodyne_capacity(record.ensemble.mean_photon),
                      aqr::holevo_bound(record.ensemble.mean_photon)};
    });

    aqr::DatasetWriter writer(out, {"kind", "mean_photon", "bits", "heterodyne_capacity",
                                    "holevo"});
    for (const auto& row : rows)
        writer.append_row({row.kind, aqr::format_double(row.mean_photon),
                           aqr::format_double(row.bits), aqr::format_double(row.capacity),
                           aqr::format_double(row.holevo)});
    writer.finalize("info", provenance);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive coherent-state receiver simulator and schedule optimizer"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::vector<std::string> schedule_args;
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> threads_flag;
    bool emit_histories = false;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config_opt = cmd->add_option("--config", config_path, "JSON sweep config");
        if (needs_config) config_opt->required();
        cmd->add_option("--out", out_path, "output CSV path")->required();
        cmd->add_option("--seed", seed_flag, "override the config RNG seed");
        cmd->add_option("--threads", threads_flag, "worker thread count");
    };

    auto* optimize = app.add_subcommand("optimize", "optimize schedules over the grid");
    add_common(optimize, true);
    optimize->add_flag("--emit-histories", emit_histories,
                       "also write per-history tables (N <= 12)");

    auto* bounds = app.add_subcommand("bounds", "tabulate reference bound curves");
    add_common(bounds, true);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials of saved schedules");
    add_common(simulate, true);
    simulate->add_option("schedules", schedule_args, "schedule files")->required();

    auto* info = app.add_subcommand("info", "mutual information of saved schedules");
    add_common(info, false);
    info->add_option("schedules", schedule_args, "schedule files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        SweepConfig config;
        if (!config_path.empty()) config = load_config(config_path);
        if (seed_flag) config.seed = *seed_flag;
        if (threads_flag) config.threads = std::max(1, *threads_flag);

        std::vector<fs::path> schedules(schedule_args.begin(), schedule_args.end());
        if (app.got_subcommand(optimize)) return cmd_optimize(config, out_path, emit_histories);
        if (app.got_subcommand(bounds)) return cmd_bounds(config, out_path);
        if (app.got_subcommand(simulate)) return cmd_simulate(config, schedules, out_path);
        if (app.got_subcommand(info))
            return cmd_info(schedules, out_path, config.threads,
                            config_path.empty() ? nlohmann::json::object() : config.raw);
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
