// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#include "aqr/infotheory.hpp"

#include <cmath>
#include <stdexcept>

namespace aqr {

void validate_channel(const ChannelMatrix& channel) {
    const std::size_t m = channel.size();
    if (m == 0) throw std::invalid_argument("empty channel matrix");
    for (const auto& row : channel) {
        if (row.size() != m) throw std::invalid_argument("channel matrix must be square");
        double sum = 0.0;
        for (double p : row) {
            if (!std::isfinite(p) || p < 0.0 || p > 1.0 + 1e-12)
                throw std::invalid_argument("channel entries must lie in [0, 1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("channel rows must sum to 1");
    }
}

double mutual_information(const ChannelMatrix& channel, const std::vector<double>& input_dist) {
    validate_channel(channel);
    const std::size_t m = channel.size();
    if (input_dist.size() != m)
        throw std::invalid_argument("input distribution length does not match the channel");
    double total = 0.0;
    for (double p : input_dist) {
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("input distribution must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("input distribution must sum to 1");

    std::vector<double> output(m, 0.0);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) output[j] += input_dist[k] * channel[k][j];

    double bits = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (input_dist[k] == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            const double joint = input_dist[k] * channel[k][j];
            if (joint > 0.0) bits += joint * std::log2(channel[k][j] / output[j]);
        }
    }
    return bits;
}

}  // namespace aqr
