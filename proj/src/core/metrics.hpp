/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/ladder.hpp"

namespace xfl {

struct SpurWindow {
    double f_start_ghz = 0.0;
    double f_stop_ghz = 0.0;
};

struct FilterMetrics {
    double f_center_ghz = 0.0;
    double il_db = 0.0;
    double fbw_3db_pct = 0.0;
    double oob_db = 0.0;            // +inf when no out-of-band points exist
    double oob_excl_spurs_db = 0.0; // ditto
    double f_lo_ghz = 0.0;
    double f_hi_ghz = 0.0;
    std::vector<SpurWindow> spur_windows;
    double s11_min_inband_db = 0.0; // informational
};

// IL from the |S21| peak; 3-dB edges linearly interpolated around it;
// f_center is the band midpoint; OoB rejection is the minimum attenuation
// outside one bandwidth beyond each edge, reported globally and with the
// declared spur windows masked out.
FilterMetrics extract_metrics(const SweepResult& sweep, std::span<const SpurWindow> windows = {});

// Deterministic default where no windows are declared: contiguous OoB
// runs whose |S21| exceeds the median OoB level by 6 dB.
std::vector<SpurWindow> propose_spur_windows(const SweepResult& sweep);

struct SoaEntry {
    std::string label;
    double f_c_ghz = 0.0;
    double il_db = 0.0;
    double fbw_pct = 0.0;
    double rejection_db = 0.0;
    bool is_this_run = false;
};

// Published mmWave acoustic filters used as the comparison baseline.
std::span<const SoaEntry> soa_dataset();

// Joins the given metrics into the baseline table, sorted by center
// frequency with ties broken by ascending IL.
std::vector<SoaEntry> compare_to_soa(const FilterMetrics& metrics);

} // namespace xfl
