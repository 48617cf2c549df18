/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "core/ladder.hpp"

namespace xfl {

// One-port admittance samples.
struct AdmittanceRecord {
    std::vector<double> f_ghz;
    std::vector<cplx> y_s;
};

void validate(const AdmittanceRecord& rec);

// Parsed Touchstone v1 content. RI and MA formats, HZ/KHZ/MHZ/GHZ units;
// the DB format is rejected. Data rows are (s11) for one port and
// (s11, s21, s12, s22) for two ports.
struct Touchstone {
    int n_ports = 0;
    double z0_ohm = 50.0;
    std::vector<double> f_ghz;
    std::vector<std::vector<cplx>> rows;
};

Touchstone parse_touchstone(std::istream& in, int expected_ports);
Touchstone parse_touchstone(const std::string& text, int expected_ports);

// S11 converted against the file's reference impedance: Y = (1-S)/(z0(1+S)).
AdmittanceRecord to_admittance(const Touchstone& ts);
SweepResult to_sweep(const Touchstone& ts);

void write_s1p(std::ostream& out, const AdmittanceRecord& rec, double z0_ohm = 50.0);
void write_s2p(std::ostream& out, const SweepResult& sweep, double z0_ohm = 50.0);

// CSV admittance: header "frequency_ghz,re_y_s,im_y_s".
void write_admittance_csv(std::ostream& out, const AdmittanceRecord& rec);
AdmittanceRecord parse_admittance_csv(std::istream& in);

// Reads .s1p or .csv by extension.
AdmittanceRecord read_admittance_file(const std::string& path);

} // namespace xfl
