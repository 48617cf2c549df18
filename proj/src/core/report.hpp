/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <iosfwd>
#include <string>

#include "core/config.hpp"
#include "core/fit.hpp"
#include "core/metrics.hpp"
#include "core/optimize.hpp"
#include "core/tolerance.hpp"

namespace xfl {

// All emitters are deterministic: fixed key order, locale-independent
// numbers, newline-terminated.

std::string metrics_json(const FilterMetrics& m);
std::string soa_report_json(const FilterMetrics& m);
std::string fit_json(const FitResult& r);
std::string optimize_json(const OptimizeResult& r, const std::vector<std::string>& resonator_names);
std::string tolerance_json(const ToleranceReport& r);

void write_tolerance_csv(std::ostream& out, const ToleranceReport& r);
void write_sweep_csv(std::ostream& out, const SweepResult& s);
void write_dispersion_csv(std::ostream& out, const DesignConfig& cfg);

// Writes content to path, failing loudly on I/O errors.
void write_file(const std::string& path, const std::string& content);

} // namespace xfl
