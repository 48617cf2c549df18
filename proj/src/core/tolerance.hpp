/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/metrics.hpp"
#include "core/optimize.hpp"
#include "core/stack.hpp"

namespace xfl {

struct ToleranceScenario {
    LayerStack stack;
    ModeSpec mode;
    double sigma_h_nm = 0.0;
    enum class Distribution { normal, uniform } distribution = Distribution::normal;
    int n_trials = 1;
    std::uint64_t seed = 1;
    bool correlated = true;  // one film error shared by all resonators
    bool exact_shift = true; // full dispersion recompute vs first-order df/dh
};

struct MetricThresholds {
    double il_max_db = 3.0;
    double fbw_rel_tol_pct = 20.0; // band of acceptable FBW around nominal
};

// Filter attached to the scenario: each resonator maps to the stack whose
// thickness error moves its fs.
struct ToleranceDesign {
    DesignTemplate tmpl;
    SweepGrid grid;
    std::vector<LayerStack> stacks; // per resonator
    std::vector<ModeSpec> modes;    // per resonator
    MetricThresholds thresholds;
    std::vector<SpurWindow> spur_windows;
};

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;
    double p5 = 0.0;
    double p95 = 0.0;
};

struct TrialRecord {
    int trial = 0;
    double dh_nm = 0.0;
    double fs_series_ghz = 0.0; // shifted fs of the first series resonator
    double fs_shunt_ghz = 0.0;  // shifted fs of the first shunt resonator
    double il_db = 0.0;         // NaN when the trial produced no passband
    double fbw_pct = 0.0;
    bool pass = false;
};

struct ToleranceReport {
    SummaryStats fs_shift_ghz; // scenario-stack frequency shift
    std::optional<SummaryStats> il_db;
    std::optional<SummaryStats> fbw_pct;
    double pass_rate = 1.0;
    int n_failed_sim = 0; // trials with no extractable passband
    std::vector<TrialRecord> trials;
    double nominal_f_ghz = 0.0;
    std::optional<FilterMetrics> nominal_metrics;
};

void validate(const ToleranceScenario& s);

// Per-trial sub-seed = seed + trial index, so trial-level parallelism and
// repeated runs produce identical reports.
ToleranceReport run_tolerance(const ToleranceScenario& scenario,
                              const std::optional<ToleranceDesign>& design = std::nullopt);

// |dh| that moves the mode by delta_f_budget, exact dispersion inversion.
double required_thickness_margin_nm(const LayerStack& stack, const ModeSpec& mode,
                                    double delta_f_budget_ghz);

} // namespace xfl
