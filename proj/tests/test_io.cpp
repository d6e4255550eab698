// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "aqr/dataset.hpp"
#include "aqr/schedule_io.hpp"

using namespace aqr;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "aqr_io_tests";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("schedule files round trip and re-evaluate to the recorded error") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> photon(0.1, 3.0), ratio(0.0, 5.0);
    const auto path = temp_dir() / "roundtrip.json";

    for (int rep = 0; rep < 50; ++rep) {
        const auto ensemble = make_mpsk_ensemble(4, photon(rng));
        const SystemModel model{0.7, 0.996, 0.001, 6};
        std::vector<double> ratios(6);
        for (double& r : ratios) r = ratio(rng);
        const auto strategy = sequential_strategy(std::move(ratios));
        const double p_error = evaluate_strategy(strategy, ensemble, model).p_error;

        save_schedule(path, ScheduleRecord{strategy, ensemble, model, p_error});
        const auto loaded = load_schedule(path);
        CHECK(loaded.strategy.kind == strategy.kind);
        CHECK(loaded.strategy.ratios == strategy.ratios);
        const double reevaluated =
            evaluate_strategy(loaded.strategy, loaded.ensemble, loaded.model).p_error;
        CHECK(std::abs(reevaluated - loaded.p_error) < 1e-10);
    }
}

TEST_CASE("unknown schedule schemas and versions are rejected") {
    const auto ensemble = make_mpsk_ensemble(4, 1.0);
    const SystemModel model{1.0, 1.0, 0.0, 3};
    const ScheduleRecord record{flat_strategy(3, 1.2), ensemble, model, 0.3};

    auto j = schedule_to_json(record);
    CHECK(schedule_from_json(j).strategy.ratios == record.strategy.ratios);

    auto wrong_version = j;
    wrong_version["version"] = 99;
    CHECK_THROWS_AS(schedule_from_json(wrong_version), std::invalid_argument);

    auto wrong_schema = j;
    wrong_schema["schema"] = "something-else";
    CHECK_THROWS_AS(schedule_from_json(wrong_schema), std::invalid_argument);

    auto bad_shape = j;
    bad_shape["ratios"] = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS(schedule_from_json(bad_shape), std::invalid_argument);

    const auto path = temp_dir() / "malformed.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_schedule(path), std::invalid_argument);
    CHECK_THROWS_AS(load_schedule(temp_dir() / "does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("dataset writer emits CSV plus a hashed sidecar") {
    const auto out = temp_dir() / "dataset.csv";
    DatasetWriter writer(out, {"a", "b"});
    writer.append_row({"1", "2"});
    writer.append_row({format_double(0.1), format_double(1e-9)});
    CHECK_THROWS_AS(writer.append_row({"only-one"}), std::invalid_argument);
    const auto hash = writer.finalize("test", nlohmann::json{{"key", "value"}});

    std::ifstream csv(out);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "a,b");
    std::getline(csv, line);
    CHECK(line == "1,2");
    std::getline(csv, line);
    CHECK(line == "0.1,1e-09");

    std::ifstream meta_file(out.string() + ".meta.json");
    REQUIRE(meta_file.good());
    nlohmann::json meta;
    meta_file >> meta;
    CHECK(meta.at("schema") == "aqr-dataset");
    CHECK(meta.at("command") == "test");
    CHECK(meta.at("config").at("key") == "value");
    CHECK(meta.at("content_sha256") == hash);

    // recompute the hash from the written bytes
    std::ifstream raw(out, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(raw)), std::istreambuf_iterator<char>());
    CHECK(content_hash(bytes) == hash);
}

TEST_CASE("format_double round trips") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> draw(-10.0, 10.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const double value = std::pow(10.0, draw(rng));
        CHECK(std::stod(format_double(value)) == value);
    }
}
