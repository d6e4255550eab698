// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace aqr {

inline constexpr int kDatasetFormatVersion = 1;

/// Hex SHA-256 of the content framed git-style ("blob <size>\0" + bytes),
/// used to content-address emitted datasets.
std::string content_hash(std::string_view bytes);

/// Shortest round-trip decimal form of a double, for stable CSV cells.
std::string format_double(double value);

/// Accumulates CSV rows and writes them with a JSON provenance sidecar
/// (<out>.meta.json) carrying the generating config, tool version, and the
/// content hash of the CSV bytes.
class DatasetWriter {
public:
    DatasetWriter(std::filesystem::path out_path, std::vector<std::string> columns);

    void append_row(const std::vector<std::string>& cells);

    /// Writes the CSV and sidecar; returns the content hash.
    std::string finalize(const std::string& command, const nlohmann::json& config);

private:
    std::filesystem::path out_path_;
    std::size_t columns_;
    std::string csv_;
};

}  // namespace aqr
