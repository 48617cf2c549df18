/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/mbvd.hpp"
#include "core/touchstone.hpp"

namespace xfl {

struct FitOptions {
    int restarts = 8;
    std::uint64_t seed = 1;
    double residual_ceiling = 0.05;
    std::optional<std::pair<double, double>> window_ghz; // mask, e.g. around EM artifacts
    K2Convention convention = K2Convention::capacitance_ratio;
    int max_iter = 600;
};

struct FitResult {
    MbvdParams params;
    ResonatorSpec spec; // derived from params
    double residual = 0.0;
    bool converged = false;
    std::vector<std::string> flags;
    std::vector<double> trace; // winning restart's best-so-far residuals
};

// Peak-reading starting point: fs at the |Y| maximum, fp at the minimum
// above it, C0 from the low-frequency Im(Y)/w floor, Q from the 3-dB
// width of the |Y| peak (coarse at low Q; the fit refines it).
ResonatorSpec initial_guess(const AdmittanceRecord& data, int n_spurs);

// Log-magnitude complex-channel least squares via restarted Nelder-Mead
// in log-parameter space. Deterministic for a fixed options.seed.
FitResult fit_mbvd(const AdmittanceRecord& data, const ResonatorSpec& init,
                   const FitOptions& options = {});

// RMS of |log10 Y_model - log10 Y_data| over the (optionally windowed)
// record; the quantity fit_mbvd minimizes.
double fit_residual(const AdmittanceRecord& data, const MbvdParams& params,
                    std::optional<std::pair<double, double>> window_ghz = std::nullopt);

} // namespace xfl
