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
#include <vector>

#include "core/optimize.hpp"
#include "core/stack.hpp"
#include "core/tolerance.hpp"

namespace xfl {

struct StackEntry {
    std::string name;
    LayerStack stack;
    ModeSpec mode;
};

struct ResonatorEntry {
    std::string name;
    ResonatorSpec spec;
    std::string stack_ref; // empty when the resonator has no stack mapping
};

struct DispersionSection {
    double h_start_nm = 0.0;
    double h_stop_nm = 0.0;
    int n_points = 0;
    std::vector<int> orders;
};

// One JSON document drives the whole flow: stacks, resonator specs, the
// ladder template, sweep grids, optimizer settings and the tolerance
// scenario. Cross references are resolved at load time.
struct DesignConfig {
    int schema_version = 0;
    std::uint64_t seed = 1;

    double v_lateral = 0.0;
    std::vector<CalibrationPoint> calibration_points;
    std::optional<AcousticConstants> calibrated;

    std::vector<StackEntry> stacks;
    std::vector<ResonatorEntry> resonators;

    DesignTemplate tmpl;
    std::vector<std::string> tmpl_resonator_names; // aligned with tmpl.resonators
    std::vector<SpurWindow> spur_windows;
    SweepGrid sweep;

    DispersionSection dispersion;

    Bounds opt_bounds;
    Objective objective;
    OptimizeOptions opt_options;
    SweepGrid opt_sweep;

    std::optional<ToleranceScenario> tol_scenario;
    bool tol_apply_to_filter = false;
    MetricThresholds tol_thresholds;

    std::vector<std::string> warnings; // lint notes collected while loading

    const StackEntry& stack(const std::string& name) const;
    const ResonatorEntry& resonator(const std::string& name) const;
    FilterDesign filter_design() const;
    std::optional<ToleranceDesign> tolerance_design() const;
};

DesignConfig parse_config(const std::string& json_text);
DesignConfig load_config(const std::string& path);

} // namespace xfl
