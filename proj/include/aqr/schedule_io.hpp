// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include <nlohmann/json_fwd.hpp>

#include "aqr/optimizer.hpp"

namespace aqr {

/// A displacement schedule together with the scenario it was optimized for
/// and the error probability it achieved. This is the offline product a
/// feedback controller would load.
struct ScheduleRecord {
    Strategy strategy;
    StateEnsemble ensemble;
    SystemModel model;
    double p_error = 1.0;
};

inline constexpr int kScheduleFormatVersion = 1;

nlohmann::json schedule_to_json(const ScheduleRecord& record);

/// Rejects records whose schema name or version is unknown rather than
/// guessing. Throws std::invalid_argument on any validation failure.
ScheduleRecord schedule_from_json(const nlohmann::json& j);

void save_schedule(const std::filesystem::path& path, const ScheduleRecord& record);
ScheduleRecord load_schedule(const std::filesystem::path& path);

}  // namespace aqr
