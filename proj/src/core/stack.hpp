/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace xfl {

// Acoustic velocities of the piezoelectric film, m/s. v_thickness drives
// the thickness overtone term, v_lateral the lateral standing wave.
struct AcousticConstants {
    double v_thickness = 0.0;
    double v_lateral = 0.0;
};

struct Layer {
    double thickness_nm = 0.0;
    int orientation = +1; // poling sign, +1 or -1
};

struct LayerStack {
    std::vector<Layer> layers;
    AcousticConstants material;

    double total_thickness_nm() const;
    // Alternating poling sign layer to layer.
    bool strictly_p3f() const;
    bool uniform_layers(double rel_tol = 1e-6) const;
};

// Thickness overtone order plus the lateral wavelength set by the
// electrode pitch. lateral_wavelength_um may be +infinity (pure
// thickness mode).
struct ModeSpec {
    int order = 1;
    double lateral_wavelength_um = 0.0;
};

void validate(const AcousticConstants& c);
void validate(const LayerStack& s);
void validate(const ModeSpec& m);

// Non-fatal plausibility notes (velocity range, non-uniform P3F layers).
std::vector<std::string> lint(const LayerStack& s);

// f = sqrt((v_lat/lambda)^2 + (N*v_th/(2h))^2), reported in GHz.
double mode_frequency_ghz(double h_nm, const ModeSpec& mode, const AcousticConstants& c);
double mode_frequency_ghz(const LayerStack& stack, const ModeSpec& mode);

// Closed-form inversion of the dispersion relation. Infeasible when
// f_ghz does not exceed the lateral cutoff v_lat/lambda.
double thickness_for_frequency_nm(double f_ghz, const ModeSpec& mode, const AcousticConstants& c);

struct CalibrationPoint {
    double h_nm = 0.0;
    int order = 1;
    double lambda_um = 0.0;
    double f_ghz = 0.0;
};

struct CalibrationResult {
    AcousticConstants constants;
    std::vector<double> residuals_ghz; // f_model - f_i per point
};

// Least-squares fit of v_thickness (and of v_lateral too when it is not
// supplied) against measured (h, N, lambda, f) points.
CalibrationResult calibrate_velocity(std::span<const CalibrationPoint> points,
                                     std::optional<double> v_lateral);

// Analytic d f / d h in GHz per nm (negative: thinner is faster).
double frequency_sensitivity(double h_nm, const ModeSpec& mode, const AcousticConstants& c);
double frequency_sensitivity(const LayerStack& stack, const ModeSpec& mode);

// Trim depth that raises the mode frequency by delta_f_ghz, solved on the
// electrode-corrected effective thickness h + electrode_offset_nm.
double trim_depth_for_offset_nm(const LayerStack& stack, const ModeSpec& mode,
                                double delta_f_ghz, double electrode_offset_nm = 0.0);

// Inverse calibration: the electrode offset under which a known trim
// choice produces delta_f_ghz.
double electrode_offset_for_trim_nm(const LayerStack& stack, const ModeSpec& mode,
                                    double delta_f_ghz, double trim_nm);

enum class CouplingClass {
    strong,
    partially_unsuppressed,
    weak,
};

// Overtone admissibility for a strictly P3F stack of M layers: orders
// N = M*n with odd n couple strongly; with non-uniform layer thicknesses
// the orders adjacent to a strong one are only partially cancelled.
std::vector<std::pair<int, CouplingClass>> coupled_overtone_orders(const LayerStack& stack,
                                                                   int max_order);

} // namespace xfl
