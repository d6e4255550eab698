// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace aqr {

/// Error probability of the ideal heterodyne receiver for M-PSK with
/// nearest-phase (wedge) decisions.
///
/// Convention: the heterodyne outcome is distributed as the Husimi
/// Q-function of the detected state, an isotropic complex Gaussian of unit
/// total variance (1/2 per quadrature) centered on sqrt(eta * mean_photon).
/// Detection efficiency enters as that amplitude scaling only. The wedge
/// integral is evaluated by nested adaptive quadrature to an absolute
/// tolerance of 1e-9.
///
/// Throws std::invalid_argument for M < 3 (two states would call for
/// homodyne, not heterodyne) or efficiency outside (0, 1].
double qnl_heterodyne(std::size_t m, double mean_photon, double efficiency = 1.0);

/// Minimum error probability for the equiprobable symmetric coherent-state
/// ensemble, via the square-root measurement (optimal for this ensemble).
/// The circulant Gram matrix G_{jk} = exp(-<n>(1 - e^{i 2 pi (k-j)/M})) has
/// the DFT of its first row as eigenvalues lambda_m, and
///
///   P_e = 1 - (sum_m sqrt(lambda_m) / M)^2.
///
/// Throws std::runtime_error if an eigenvalue falls below -1e-12, which
/// would indicate a Gram construction bug.
double helstrom_mpsk(std::size_t m, double mean_photon);

/// Holevo capacity g(<n>) = (<n>+1) log2(<n>+1) - <n> log2 <n> in bits per
/// use, with g(0) = 0 by continuity.
double holevo_bound(double mean_photon);

/// Shannon capacity log2(1 + <n>) of the ideal heterodyne channel with
/// Gaussian-distributed coherent inputs, bits per use.
double heterodyne_capacity(double mean_photon);

/// A reference curve sampled on a mean-photon grid.
struct BoundCurve {
    std::string kind;  ///< qnl | qnl-scaled | helstrom | holevo | heterodyne-capacity
    std::vector<std::pair<double, double>> points;  ///< (mean_photon, value)
};

/// Samples one named bound over the given grid. "qnl-scaled" applies the
/// efficiency; the other kinds ignore it.
BoundCurve bound_curve(const std::string& kind, std::size_t m,
                       const std::vector<double>& mean_photon_grid, double efficiency = 1.0);

}  // namespace aqr
