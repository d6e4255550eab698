// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace aqr {

namespace {

std::vector<double> checked_priors(std::size_t m, const std::vector<double>& priors) {
    if (priors.size() != m)
        throw std::invalid_argument("priors length does not match the number of states");
    double sum = 0.0;
    for (double p : priors) {
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("priors must be finite and non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("priors must sum to 1");
    std::vector<double> normalized = priors;
    for (double& p : normalized) p /= sum;
    return normalized;
}

}  // namespace

StateEnsemble make_mpsk_ensemble(std::size_t m, double mean_photon,
                                 const std::optional<std::vector<double>>& priors) {
    if (m < 2) throw std::invalid_argument("an ensemble needs at least 2 states");
    if (!std::isfinite(mean_photon) || mean_photon < 0.0)
        throw std::invalid_argument("mean_photon must be finite and non-negative");

    StateEnsemble ensemble;
    ensemble.mean_photon = mean_photon;
    const double modulus = std::sqrt(mean_photon);
    ensemble.amplitudes.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        // index i is the state labelled k = i + 1 with phase 2*pi*k/M
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(i + 1) / static_cast<double>(m);
        ensemble.amplitudes.emplace_back(std::polar(modulus, phase));
    }
    ensemble.priors = priors ? checked_priors(m, *priors)
                             : std::vector<double>(m, 1.0 / static_cast<double>(m));
    return ensemble;
}

StateEnsemble ensemble_from_amplitudes(std::vector<Amplitude> amplitudes,
                                       std::vector<double> priors) {
    if (amplitudes.size() < 2) throw std::invalid_argument("an ensemble needs at least 2 states");
    for (const Amplitude& a : amplitudes)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("amplitudes must be finite");
    StateEnsemble ensemble;
    ensemble.priors = checked_priors(amplitudes.size(), priors);
    ensemble.amplitudes = std::move(amplitudes);
    double mean = 0.0;
    for (std::size_t i = 0; i < ensemble.amplitudes.size(); ++i)
        mean += ensemble.priors[i] * std::norm(ensemble.amplitudes[i]);
    ensemble.mean_photon = mean;
    return ensemble;
}

void SystemModel::validate() const {
    if (!std::isfinite(efficiency) || efficiency < 0.0 || efficiency > 1.0)
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    if (!std::isfinite(visibility) || visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("visibility must lie in [0, 1]");
    if (!std::isfinite(dark_per_pulse) || dark_per_pulse < 0.0)
        throw std::invalid_argument("dark_per_pulse must be non-negative");
    if (slices < 1) throw std::invalid_argument("slices must be at least 1");
}

void to_json(nlohmann::json& j, const SystemModel& model) {
    j = nlohmann::json{{"efficiency", model.efficiency},
                       {"visibility", model.visibility},
                       {"dark_per_pulse", model.dark_per_pulse},
                       {"slices", model.slices}};
}

void from_json(const nlohmann::json& j, SystemModel& model) {
    model.efficiency = j.at("efficiency").get<double>();
    model.visibility = j.at("visibility").get<double>();
    model.dark_per_pulse = j.at("dark_per_pulse").get<double>();
    model.slices = j.at("slices").get<int>();
    model.validate();
}

nlohmann::json scenario_to_json(const StateEnsemble& ensemble, const SystemModel& model) {
    nlohmann::json j;
    to_json(j, model);
    j["M"] = ensemble.size();
    j["mean_photon"] = ensemble.mean_photon;
    j["priors"] = ensemble.priors;
    return j;
}

void scenario_from_json(const nlohmann::json& j, StateEnsemble& ensemble, SystemModel& model) {
    from_json(j, model);
    const auto m = j.at("M").get<std::size_t>();
    const auto mean_photon = j.at("mean_photon").get<double>();
    std::optional<std::vector<double>> priors;
    if (j.contains("priors")) priors = j.at("priors").get<std::vector<double>>();
    ensemble = make_mpsk_ensemble(m, mean_photon, priors);
}

}  // namespace aqr
