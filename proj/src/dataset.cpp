// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/dataset.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "aqr/version.hpp"

namespace aqr {

std::string content_hash(std::string_view bytes) {
    const std::string framed =
        "blob " + std::to_string(bytes.size()) + '\0' + std::string(bytes);

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    if (EVP_Digest(framed.data(), framed.size(), digest, &digest_len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * digest_len);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string format_double(double value) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buffer, end);
}

DatasetWriter::DatasetWriter(std::filesystem::path out_path, std::vector<std::string> columns)
    : out_path_(std::move(out_path)), columns_(columns.size()) {
    if (columns.empty()) throw std::invalid_argument("a dataset needs at least one column");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) csv_.push_back(',');
        csv_ += columns[i];
    }
    csv_.push_back('\n');
}

void DatasetWriter::append_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw std::invalid_argument("row width does not match the dataset columns");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) csv_.push_back(',');
        csv_ += cells[i];
    }
    csv_.push_back('\n');
}

std::string DatasetWriter::finalize(const std::string& command, const nlohmann::json& config) {
    const std::string hash = content_hash(csv_);

    std::ofstream out(out_path_, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path_.string() + " for writing");
    out << csv_;
    if (!out) throw std::runtime_error("failed writing " + out_path_.string());
    out.close();

    nlohmann::json sidecar;
    sidecar["schema"] = "aqr-dataset";
    sidecar["version"] = kDatasetFormatVersion;
    sidecar["command"] = command;
    sidecar["generator"] = std::string("aqr ") + kVersion;
    sidecar["config"] = config;
    sidecar["output"] = out_path_.filename().string();
    sidecar["content_sha256"] = hash;

    std::filesystem::path sidecar_path = out_path_;
    sidecar_path += ".meta.json";
    std::ofstream meta(sidecar_path);
    if (!meta) throw std::runtime_error("cannot open " + sidecar_path.string() + " for writing");
    meta << sidecar.dump(2) << '\n';
    if (!meta) throw std::runtime_error("failed writing " + sidecar_path.string());
    return hash;
}

}  // namespace aqr
