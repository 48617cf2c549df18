/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>
#include <vector>

#include "core/mbvd.hpp"

namespace xfl {

struct LadderElement {
    enum class Placement { series, shunt };
    Placement placement = Placement::series;
    MbvdParams resonator;
    // Interconnect inductance: in the through path for a series element,
    // in the ground leg for a shunt element.
    double parasitic_l_nh = 0.0;
};

struct FilterDesign {
    std::vector<LadderElement> elements;
    double z0_ohm = 50.0;
};

struct SweepGrid {
    enum class Spacing { linear, logarithmic };
    double f_start_ghz = 0.0;
    double f_stop_ghz = 0.0;
    int n_points = 0;
    Spacing spacing = Spacing::linear;

    std::vector<double> frequencies() const;
};

struct SweepResult {
    std::vector<double> f_ghz;
    std::vector<cplx> s11, s21, s12, s22;
};

void validate(const FilterDesign& d);
void validate(const SweepGrid& g);

// 2x2 chain matrix [[a, b], [c, d]].
struct Abcd {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
};

struct SMatrix {
    cplx s11, s21, s12, s22;
};

Abcd element_abcd(const LadderElement& e, double f_ghz);

// Left-to-right chain product, input port first.
Abcd cascade(std::span<const LadderElement> elements, double f_ghz);

SMatrix s_params(const Abcd& m, double z0_ohm);

// Per-point cascade + conversion over the grid. Points may be evaluated
// concurrently; assembly is in grid order and bit-identical to a
// sequential run. All elements here are reciprocal one-port loads, so
// s12 is stored as the same value computed for s21.
SweepResult simulate(const FilterDesign& design, const SweepGrid& grid);

} // namespace xfl
