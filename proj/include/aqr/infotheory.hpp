// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace aqr {

/// Row-stochastic matrix P(decide j | sent k), rows indexed by the sent
/// state.
using ChannelMatrix = std::vector<std::vector<double>>;

/// Throws std::invalid_argument unless the matrix is square-shaped M x M
/// with entries in [0, 1] and rows summing to 1 within 1e-9.
void validate_channel(const ChannelMatrix& channel);

/// Mutual information I(X;Y) of the channel in bits per use,
/// sum_{k,j} p(k) P(j|k) log2(P(j|k) / q(j)) with 0 log 0 = 0.
double mutual_information(const ChannelMatrix& channel, const std::vector<double>& input_dist);

}  // namespace aqr
