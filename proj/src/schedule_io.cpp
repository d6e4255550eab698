// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/schedule_io.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace aqr {

namespace {
constexpr const char* kSchemaName = "aqr-schedule";
}

nlohmann::json schedule_to_json(const ScheduleRecord& record) {
    nlohmann::json j;
    j["schema"] = kSchemaName;
    j["version"] = kScheduleFormatVersion;
    j["kind"] = to_string(record.strategy.kind);
    j["ratios"] = record.strategy.ratios;
    j["scenario"] = scenario_to_json(record.ensemble, record.model);
    j["p_error"] = record.p_error;
    return j;
}

ScheduleRecord schedule_from_json(const nlohmann::json& j) {
    if (!j.contains("schema") || j.at("schema").get<std::string>() != kSchemaName)
        throw std::invalid_argument("not a schedule record");
    if (j.at("version").get<int>() != kScheduleFormatVersion)
        throw std::invalid_argument("unsupported schedule record version");

    ScheduleRecord record;
    scenario_from_json(j.at("scenario"), record.ensemble, record.model);
    record.strategy.kind = strategy_kind_from_string(j.at("kind").get<std::string>());
    record.strategy.slices = record.model.slices;
    record.strategy.ratios = j.at("ratios").get<std::vector<double>>();
    record.strategy.validate(std::numeric_limits<double>::infinity());
    record.p_error = j.at("p_error").get<double>();
    if (!(record.p_error >= 0.0 && record.p_error <= 1.0))
        throw std::invalid_argument("p_error must lie in [0, 1]");
    return record;
}

void save_schedule(const std::filesystem::path& path, const ScheduleRecord& record) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << schedule_to_json(record).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

ScheduleRecord load_schedule(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open schedule file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed schedule file " + path.string() + ": " + e.what());
    }
    return schedule_from_json(j);
}

}  // namespace aqr
