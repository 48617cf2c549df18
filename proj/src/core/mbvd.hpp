/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace xfl {

using cplx = std::complex<double>;

struct SpurSpec {
    double fs_ghz = 0.0;
    double k2 = 0.0; // coupling, fraction
    double q = 0.0;
};

// Behavioral description of one resonator: series resonance, coupling,
// quality factor, static capacitance, plus any spurious modes.
struct ResonatorSpec {
    double fs_ghz = 0.0;
    double k2 = 0.0;
    double q = 0.0;
    double c0_ff = 0.0;
    std::vector<SpurSpec> spurs;
    double rs_ohm = 0.0;
    double r0_ohm = 0.0;
};

struct MotionalBranch {
    double rm_ohm = 0.0;
    double lm_nh = 0.0;
    double cm_ff = 0.0;
};

// Lumped circuit: series Rs feeding (R0 + C0) in parallel with the
// motional branches. branches[0] is the main mode.
struct MbvdParams {
    double rs_ohm = 0.0;
    double r0_ohm = 0.0;
    double c0_ff = 0.0;
    std::vector<MotionalBranch> branches;
};

enum class K2Convention {
    capacitance_ratio, // k^2 = Cm/(Cm+C0) = 1 - (fs/fp)^2; the default
    pi2_over_8,        // k^2 = (pi^2/8) * (fp^2-fs^2)/fp^2
};

void validate(const ResonatorSpec& spec);
void validate(const MbvdParams& params);
std::vector<std::string> lint(const ResonatorSpec& spec);

// Capacitance-ratio synthesis: Cm = C0*k2/(1-k2), Lm = 1/(ws^2 Cm),
// Rm = 1/(ws Cm Q); spur branches are built the same way against the
// shared C0.
MbvdParams synthesize_mbvd(const ResonatorSpec& spec);

cplx admittance(const MbvdParams& params, double f_ghz);

// Series resonance of one motional branch, 1/(2 pi sqrt(Lm Cm)).
double branch_fs_ghz(const MotionalBranch& b);

struct ResonancePair {
    double fs_ghz = 0.0;
    double fp_ghz = 0.0;
};

// fs from the largest |Y| peak, fp from the first |Y| minimum above it;
// coarse grid scan refined by golden section to 1e-6 relative.
ResonancePair resonance_frequencies(const MbvdParams& params);

double k2_from_fs_fp(double fs_ghz, double fp_ghz,
                     K2Convention convention = K2Convention::capacitance_ratio);

// Loaded Q of the main mode measured from the half-power width of the
// Re(Y) resonance line. Exact for Rs = R0 = 0.
double quality_factor(const MbvdParams& params);

// Analytic inverse of synthesize_mbvd (reads the circuit, no response
// probing); used to express fitted circuits as behavioral specs.
ResonatorSpec derive_spec(const MbvdParams& params,
                          K2Convention convention = K2Convention::capacitance_ratio);

} // namespace xfl
