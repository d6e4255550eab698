// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "aqr/montecarlo.hpp"

using namespace aqr;

TEST_CASE("vacuum trials reproduce the chance level") {
    const auto ensemble = make_mpsk_ensemble(4, 0.0);
    const auto model = SystemModel::ideal(10);
    const auto batch =
        simulate_trials(non_optimized_strategy(10), ensemble, model, 100'000, 7);
    CHECK(std::abs(batch.p_hat - 0.75) < 4.0 * batch.std_error);
}

TEST_CASE("estimator statistics are internally consistent") {
    const auto ensemble = make_mpsk_ensemble(4, 0.8);
    const SystemModel model{0.7, 0.996, 0.001, 6};
    const auto batch = simulate_trials(flat_strategy(6, 1.1), ensemble, model, 50'000, 21, 2);

    CHECK(batch.trials == 50'000);
    CHECK(batch.p_hat ==
          doctest::Approx(static_cast<double>(batch.errors) / batch.trials).epsilon(1e-15));
    CHECK(batch.std_error ==
          doctest::Approx(std::sqrt(batch.p_hat * (1.0 - batch.p_hat) / batch.trials))
              .epsilon(1e-12));

    std::uint64_t total = 0, off_diag = 0;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < 4; ++j) {
            total += batch.confusion[k][j];
            if (j != k) off_diag += batch.confusion[k][j];
        }
    CHECK(total == batch.trials);
    CHECK(off_diag == batch.errors);
}

TEST_CASE("sampled error rate agrees with the exact evaluation") {
    const auto ensemble = make_mpsk_ensemble(4, 1.0);
    const auto model = SystemModel::ideal(10);
    const auto strategy = flat_strategy(10, 1.2881);
    const double exact = evaluate_strategy(strategy, ensemble, model).p_error;
    const auto batch = simulate_trials(strategy, ensemble, model, 200'000, 33, 2);
    CHECK(std::abs(batch.p_hat - exact) < 4.0 * batch.std_error);
}

TEST_CASE("identical seeds give identical batches regardless of threading") {
    const auto ensemble = make_mpsk_ensemble(4, 0.6);
    const SystemModel model{0.8, 0.99, 0.002, 5};
    const auto strategy = flat_strategy(5, 1.4);
    const auto a = simulate_trials(strategy, ensemble, model, 30'000, 99, 1);
    const auto b = simulate_trials(strategy, ensemble, model, 30'000, 99, 3);
    CHECK(a.errors == b.errors);
    CHECK(a.confusion == b.confusion);

    const auto c = simulate_trials(strategy, ensemble, model, 30'000, 100, 1);
    CHECK(a.confusion != c.confusion);  // different stream
}

TEST_CASE("four seeded runs pool to the exact value") {
    const auto ensemble = make_mpsk_ensemble(4, 1.0);
    const SystemModel model{0.70, 0.996, 0.001, 10};
    const auto strategy = non_optimized_strategy(10);
    const double exact = evaluate_strategy(strategy, ensemble, model).p_error;

    std::uint64_t errors = 0, trials = 0;
    for (std::uint64_t run = 0; run < 4; ++run) {
        const auto batch = simulate_trials(strategy, ensemble, model, 100'000, 1000 + run, 2);
        errors += batch.errors;
        trials += batch.trials;
    }
    const double pooled = static_cast<double>(errors) / static_cast<double>(trials);
    const double sigma = std::sqrt(pooled * (1.0 - pooled) / static_cast<double>(trials));
    CHECK(std::abs(pooled - exact) < 4.0 * sigma);
}

TEST_CASE("degenerate batches are rejected") {
    const auto ensemble = make_mpsk_ensemble(4, 1.0);
    CHECK_THROWS_AS(
        simulate_trials(non_optimized_strategy(10), ensemble, SystemModel::ideal(10), 0, 1),
        std::invalid_argument);
}
