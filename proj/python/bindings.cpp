// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aqr/bounds.hpp"
#include "aqr/infotheory.hpp"
#include "aqr/montecarlo.hpp"
#include "aqr/optimizer.hpp"
#include "aqr/schedule_io.hpp"
#include "aqr/version.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive coherent-state receiver simulator and schedule optimizer";
    m.attr("__version__") = aqr::kVersion;

    py::register_exception<aqr::degenerate_evidence_error>(m, "DegenerateEvidenceError",
                                                           PyExc_RuntimeError);

    py::class_<aqr::StateEnsemble>(m, "StateEnsemble")
        .def_readonly("mean_photon", &aqr::StateEnsemble::mean_photon)
        .def_readonly("amplitudes", &aqr::StateEnsemble::amplitudes)
        .def_readonly("priors", &aqr::StateEnsemble::priors)
        .def("__len__", &aqr::StateEnsemble::size);

    py::class_<aqr::SystemModel>(m, "SystemModel")
        .def(py::init([](double efficiency, double visibility, double dark_per_pulse,
                         int slices) {
                 aqr::SystemModel model{efficiency, visibility, dark_per_pulse, slices};
                 model.validate();
                 return model;
             }),
             py::arg("efficiency") = 1.0, py::arg("visibility") = 1.0,
             py::arg("dark_per_pulse") = 0.0, py::arg("slices") = 1)
        .def_readonly("efficiency", &aqr::SystemModel::efficiency)
        .def_readonly("visibility", &aqr::SystemModel::visibility)
        .def_readonly("dark_per_pulse", &aqr::SystemModel::dark_per_pulse)
        .def_readonly("slices", &aqr::SystemModel::slices)
        .def_static("ideal", &aqr::SystemModel::ideal, py::arg("slices"));

    py::enum_<aqr::StrategyKind>(m, "StrategyKind")
        .value("NON_OPTIMIZED", aqr::StrategyKind::non_optimized)
        .value("FLAT", aqr::StrategyKind::flat)
        .value("SEQUENTIAL", aqr::StrategyKind::sequential)
        .value("HISTORICAL", aqr::StrategyKind::historical);

    py::class_<aqr::Strategy>(m, "Strategy")
        .def_readonly("kind", &aqr::Strategy::kind)
        .def_readonly("slices", &aqr::Strategy::slices)
        .def_readonly("ratios", &aqr::Strategy::ratios)
        .def("ratio_at", &aqr::Strategy::ratio_at, py::arg("slice"), py::arg("node"));

    py::class_<aqr::BeliefState>(m, "BeliefState")
        .def(py::init([](std::vector<double> probs) {
                 aqr::BeliefState belief{std::move(probs)};
                 belief.validate();
                 return belief;
             }),
             py::arg("probs"))
        .def_readonly("probs", &aqr::BeliefState::probs)
        .def_static("uniform", &aqr::BeliefState::uniform, py::arg("m"));

    py::class_<aqr::HistoryEntry>(m, "HistoryEntry")
        .def_readonly("history", &aqr::HistoryEntry::history)
        .def_readonly("probability", &aqr::HistoryEntry::probability)
        .def_readonly("decided", &aqr::HistoryEntry::decided)
        .def_readonly("correct_prob", &aqr::HistoryEntry::correct_prob);

    py::class_<aqr::ErrorReport>(m, "ErrorReport")
        .def_readonly("p_error", &aqr::ErrorReport::p_error)
        .def_readonly("channel", &aqr::ErrorReport::channel)
        .def_readonly("per_history", &aqr::ErrorReport::per_history);

    py::class_<aqr::OptimizationResult>(m, "OptimizationResult")
        .def_readonly("strategy", &aqr::OptimizationResult::strategy)
        .def_readonly("p_error", &aqr::OptimizationResult::p_error)
        .def_readonly("iterations", &aqr::OptimizationResult::iterations)
        .def_readonly("converged", &aqr::OptimizationResult::converged)
        .def_readonly("objective_history", &aqr::OptimizationResult::objective_history);

    py::class_<aqr::TrialBatchResult>(m, "TrialBatchResult")
        .def_readonly("trials", &aqr::TrialBatchResult::trials)
        .def_readonly("errors", &aqr::TrialBatchResult::errors)
        .def_readonly("p_hat", &aqr::TrialBatchResult::p_hat)
        .def_readonly("std_error", &aqr::TrialBatchResult::std_error)
        .def_readonly("seed", &aqr::TrialBatchResult::seed)
        .def_readonly("confusion", &aqr::TrialBatchResult::confusion);

    m.def("make_mpsk_ensemble", &aqr::make_mpsk_ensemble, py::arg("m"), py::arg("mean_photon"),
          py::arg("priors") = std::nullopt);
    m.def("ensemble_from_amplitudes", &aqr::ensemble_from_amplitudes, py::arg("amplitudes"),
          py::arg("priors"));

    m.def("displaced_mean", &aqr::displaced_mean, py::arg("alpha_k"), py::arg("beta"),
          py::arg("visibility"));
    m.def("click_probability", &aqr::click_probability, py::arg("nbar"), py::arg("model"));
    m.def("photon_count_pmf", &aqr::photon_count_pmf, py::arg("nbar"), py::arg("n"));
    m.def("bayes_update", &aqr::bayes_update, py::arg("prior"), py::arg("beta"),
          py::arg("clicked"), py::arg("ensemble"), py::arg("model"));

    py::class_<aqr::SliceOutcome>(m, "SliceOutcome")
        .def(py::init<bool>(), py::arg("clicked"))
        .def_readonly("clicked", &aqr::SliceOutcome::clicked);
    py::implicitly_convertible<py::bool_, aqr::SliceOutcome>();

    m.def("non_optimized_strategy", &aqr::non_optimized_strategy, py::arg("slices"));
    m.def("flat_strategy", &aqr::flat_strategy, py::arg("slices"), py::arg("ratio"));
    m.def("sequential_strategy", &aqr::sequential_strategy, py::arg("ratios"));
    m.def("historical_strategy", &aqr::historical_strategy, py::arg("slices"), py::arg("ratios"));

    m.def("map_phase", &aqr::map_phase, py::arg("belief"), py::arg("ensemble"));
    m.def("evaluate_strategy", &aqr::evaluate_strategy, py::arg("strategy"), py::arg("ensemble"),
          py::arg("model"), py::arg("with_history_table") = false);
    m.def("induced_channel", &aqr::induced_channel, py::arg("strategy"), py::arg("ensemble"),
          py::arg("model"));

    m.def(
        "optimize_flat",
        [](const aqr::StateEnsemble& ensemble, const aqr::SystemModel& model, double r_max) {
            return aqr::optimize_flat(ensemble, model, r_max);
        },
        py::arg("ensemble"), py::arg("model"), py::arg("r_max") = 5.0);
    m.def(
        "optimize_sequential",
        [](const aqr::StateEnsemble& ensemble, const aqr::SystemModel& model, double r_max,
           const std::optional<aqr::Strategy>& seed, int restarts, std::uint64_t rng_seed,
           int threads) {
            aqr::OptimizeOptions options;
            options.restarts = restarts;
            options.rng_seed = rng_seed;
            options.threads = threads;
            return aqr::optimize_sequential(ensemble, model, r_max, seed, options);
        },
        py::arg("ensemble"), py::arg("model"), py::arg("r_max") = 5.0,
        py::arg("seed") = std::nullopt, py::arg("restarts") = 4, py::arg("rng_seed") = 42,
        py::arg("threads") = 1);
    m.def(
        "optimize_historical",
        [](const aqr::StateEnsemble& ensemble, const aqr::SystemModel& model, double r_max,
           const std::optional<aqr::Strategy>& seed, int restarts, std::uint64_t rng_seed,
           int threads) {
            aqr::OptimizeOptions options;
            options.restarts = restarts;
            options.rng_seed = rng_seed;
            options.threads = threads;
            return aqr::optimize_historical(ensemble, model, r_max, seed, options);
        },
        py::arg("ensemble"), py::arg("model"), py::arg("r_max") = 5.0,
        py::arg("seed") = std::nullopt, py::arg("restarts") = 4, py::arg("rng_seed") = 42,
        py::arg("threads") = 1);

    m.def("qnl_heterodyne", &aqr::qnl_heterodyne, py::arg("m"), py::arg("mean_photon"),
          py::arg("efficiency") = 1.0);
    m.def("helstrom_mpsk", &aqr::helstrom_mpsk, py::arg("m"), py::arg("mean_photon"));
    m.def("holevo_bound", &aqr::holevo_bound, py::arg("mean_photon"));
    m.def("heterodyne_capacity", &aqr::heterodyne_capacity, py::arg("mean_photon"));

    m.def("simulate_trials", &aqr::simulate_trials, py::arg("strategy"), py::arg("ensemble"),
          py::arg("model"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("mutual_information", &aqr::mutual_information, py::arg("channel"),
          py::arg("input_dist"));

    py::class_<aqr::ScheduleRecord>(m, "ScheduleRecord")
        .def(py::init([](aqr::Strategy strategy, aqr::StateEnsemble ensemble,
                         aqr::SystemModel model, double p_error) {
                 return aqr::ScheduleRecord{std::move(strategy), std::move(ensemble), model,
                                            p_error};
             }),
             py::arg("strategy"), py::arg("ensemble"), py::arg("model"), py::arg("p_error"))
        .def_readonly("strategy", &aqr::ScheduleRecord::strategy)
        .def_readonly("ensemble", &aqr::ScheduleRecord::ensemble)
        .def_readonly("model", &aqr::ScheduleRecord::model)
        .def_readonly("p_error", &aqr::ScheduleRecord::p_error);

    m.def("save_schedule",
          [](const std::string& path, const aqr::ScheduleRecord& record) {
              aqr::save_schedule(path, record);
          },
          py::arg("path"), py::arg("record"));
    m.def("load_schedule",
          [](const std::string& path) { return aqr::load_schedule(path); }, py::arg("path"));
}
