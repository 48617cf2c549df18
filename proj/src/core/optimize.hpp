/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "core/ladder.hpp"
#include "core/metrics.hpp"

namespace xfl {

// A ladder with named degrees of freedom: the element list references
// shared resonator specs so one capacitance knob drives every instance.
struct DesignTemplate {
    std::vector<ResonatorSpec> resonators;
    std::vector<std::pair<LadderElement::Placement, int>> elements; // placement, resonator index
    std::vector<double> parasitic_l_nh;                             // per element
    double z0_ohm = 50.0;
};

void validate(const DesignTemplate& t);

// Decision variables: one C0 per resonator plus the series/shunt
// frequency offset.
struct DesignVariables {
    std::vector<double> c0_ff;
    double delta_f_ghz = 0.0;
};

// Nominal variables read off the template.
DesignVariables nominal_variables(const DesignTemplate& t);

// Applies variables: C0 per resonator; series-role resonators are shifted
// by (delta_f - nominal delta_f), spurs riding along proportionally.
FilterDesign instantiate(const DesignTemplate& t, const DesignVariables& vars);

struct Objective {
    double target_fbw_pct = 0.0;
    double il_weight = 1.0;
    double fbw_weight = 2.0;
    double ripple_weight = 0.5;
};

// cost = il_w*IL + fbw_w*|FBW - target| + ripple_w*(in-band |S21| spread);
// designs without an extractable passband cost 1e6.
double evaluate_design(const DesignVariables& vars, const DesignTemplate& t,
                       const SweepGrid& grid, const Objective& obj);

// Box bounds over [c0_0 .. c0_{R-1}, delta_f].
struct Bounds {
    std::vector<double> lo, hi;
};

struct OptimizeOptions {
    int n_starts = 16;
    std::uint64_t seed = 1;
    int max_iter = 300;
};

struct OptimizeResult {
    DesignVariables best;
    double best_cost = 0.0;
    std::vector<double> cost_trace; // winning start's best-so-far values
    int best_start = 0;
    SweepResult best_sweep;
    FilterMetrics best_metrics;
};

// Multi-start Nelder-Mead inside the box (candidates are projected onto
// it). Start 0 is the template nominal, the rest are seeded uniformly;
// the winner is the lowest cost with start-index tie-break, so the
// outcome does not depend on scheduling.
OptimizeResult optimize(const DesignTemplate& t, const Bounds& bounds, const SweepGrid& grid,
                        const Objective& obj, const OptimizeOptions& options);

} // namespace xfl
