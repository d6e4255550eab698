// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace aqr {

/// Complex field amplitude of a coherent state; |amplitude|^2 is the mean
/// photon number of that state over the whole pulse.
using Amplitude = std::complex<double>;

/// Constellation of M coherent states with prior probabilities.
///
/// States are indexed internally from 0; index i corresponds to the state
/// labelled k = i + 1 with phase 2*pi*k/M, so a 4-state ensemble at unit
/// mean photon number has amplitudes {i, -1, -i, 1}.
struct StateEnsemble {
    double mean_photon = 0.0;            ///< prior-weighted mean |alpha_k|^2
    std::vector<Amplitude> amplitudes;   ///< one amplitude per hypothesis
    std::vector<double> priors;          ///< non-negative, sums to 1

    std::size_t size() const { return amplitudes.size(); }
};

/// Builds the symmetric M-PSK ensemble with |alpha| = sqrt(mean_photon).
/// Priors default to uniform; when given they are validated and then
/// renormalized to sum exactly to 1.
///
/// Throws std::invalid_argument for m < 2, negative mean_photon, or
/// malformed priors (wrong length, negative entry, sum far from 1).
StateEnsemble make_mpsk_ensemble(std::size_t m, double mean_photon,
                                 const std::optional<std::vector<double>>& priors = {});

/// General constructor for ensembles with arbitrary (possibly unequal)
/// amplitudes. mean_photon is set to the prior-weighted average.
StateEnsemble ensemble_from_amplitudes(std::vector<Amplitude> amplitudes,
                                       std::vector<double> priors);

/// Detector and displacement imperfections plus the time discretization.
///
/// Dark counts are a Poisson mean per pulse, spread uniformly over the N
/// slices (nu/N per slice). Detection efficiency acts as a pre-detector
/// loss scaling the displaced mean photon number. efficiency = 1,
/// visibility = 1, dark_per_pulse = 0 is the ideal model.
struct SystemModel {
    double efficiency = 1.0;     ///< eta in [0, 1]
    double visibility = 1.0;     ///< V in [0, 1]
    double dark_per_pulse = 0.0; ///< nu >= 0, mean dark counts per pulse
    int slices = 1;              ///< N >= 1 adaptive measurements per pulse

    double dark_per_slice() const { return dark_per_pulse / slices; }

    /// Throws std::invalid_argument if any parameter is out of range.
    void validate() const;

    static SystemModel ideal(int slices) { return SystemModel{1.0, 1.0, 0.0, slices}; }
};

// Human-readable config record {M, mean_photon, priors, efficiency,
// visibility, dark_per_pulse, slices}. Only M-PSK ensembles round-trip.
nlohmann::json scenario_to_json(const StateEnsemble& ensemble, const SystemModel& model);
void scenario_from_json(const nlohmann::json& j, StateEnsemble& ensemble, SystemModel& model);

void to_json(nlohmann::json& j, const SystemModel& model);
void from_json(const nlohmann::json& j, SystemModel& model);

}  // namespace aqr
