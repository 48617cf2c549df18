/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/mbvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/numfmt.hpp"
#include "core/simplex.hpp"

namespace xfl {

namespace {

constexpr double kFfToF = 1e-15;
constexpr double kNhToH = 1e-9;

double omega(double f_ghz) { return 2.0 * M_PI * f_ghz * 1e9; }

void validate_mode(double fs_ghz, double k2, double q, const char* what) {
    if (!(fs_ghz > 0.0) || !std::isfinite(fs_ghz))
        throw Error(errc::invalid_argument, std::string(what) + " fs must be positive");
    if (!(k2 > 0.0 && k2 < 1.0))
        throw Error(errc::invalid_argument, std::string(what) + " k2 must be in (0, 1)");
    if (!(q > 0.0))
        throw Error(errc::invalid_argument, std::string(what) + " q must be positive");
}

} // namespace

void validate(const ResonatorSpec& spec) {
    validate_mode(spec.fs_ghz, spec.k2, spec.q, "resonator");
    if (!(spec.c0_ff > 0.0))
        throw Error(errc::invalid_argument, "c0 must be positive");
    if (spec.rs_ohm < 0.0 || spec.r0_ohm < 0.0)
        throw Error(errc::invalid_argument, "resistances must be non-negative");
    for (const auto& s : spec.spurs)
        validate_mode(s.fs_ghz, s.k2, s.q, "spur");
}

void validate(const MbvdParams& params) {
    if (!(params.c0_ff > 0.0))
        throw Error(errc::invalid_argument, "c0 must be positive");
    if (params.rs_ohm < 0.0 || params.r0_ohm < 0.0)
        throw Error(errc::invalid_argument, "resistances must be non-negative");
    if (params.branches.empty())
        throw Error(errc::invalid_argument, "at least one motional branch required");
    for (const auto& b : params.branches) {
        if (!(b.lm_nh > 0.0) || !(b.cm_ff > 0.0))
            throw Error(errc::invalid_argument, "motional L and C must be positive");
        if (b.rm_ohm < 0.0)
            throw Error(errc::invalid_argument, "motional R must be non-negative");
    }
}

std::vector<std::string> lint(const ResonatorSpec& spec) {
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < spec.spurs.size(); ++i) {
        if (spec.spurs[i].k2 > spec.k2)
            notes.push_back("spur " + std::to_string(i) + " at " +
                            fmt_g(spec.spurs[i].fs_ghz, 6) + " GHz has k2 = " +
                            fmt_g(spec.spurs[i].k2, 4) + ", larger than the main mode's " +
                            fmt_g(spec.k2, 4));
    }
    return notes;
}

MbvdParams synthesize_mbvd(const ResonatorSpec& spec) {
    validate(spec);
    MbvdParams p;
    p.rs_ohm = spec.rs_ohm;
    p.r0_ohm = spec.r0_ohm;
    p.c0_ff = spec.c0_ff;

    auto make_branch = [&](double fs_ghz, double k2, double q) {
        const double cm_f = spec.c0_ff * kFfToF * k2 / (1.0 - k2);
        const double ws = omega(fs_ghz);
        MotionalBranch b;
        b.cm_ff = cm_f / kFfToF;
        b.lm_nh = 1.0 / (ws * ws * cm_f) / kNhToH;
        b.rm_ohm = std::isinf(q) ? 0.0 : 1.0 / (ws * cm_f * q);
        return b;
    };

    p.branches.push_back(make_branch(spec.fs_ghz, spec.k2, spec.q));
    for (const auto& s : spec.spurs)
        p.branches.push_back(make_branch(s.fs_ghz, s.k2, s.q));
    return p;
}

cplx admittance(const MbvdParams& params, double f_ghz) {
    if (!(f_ghz > 0.0))
        throw Error(errc::invalid_argument, "frequency must be positive");
    const double w = omega(f_ghz);
    const double c0 = params.c0_ff * kFfToF;

    cplx y;
    if (params.r0_ohm == 0.0)
        y = cplx(0.0, w * c0);
    else
        y = 1.0 / cplx(params.r0_ohm, -1.0 / (w * c0));

    for (const auto& b : params.branches) {
        cplx z(b.rm_ohm, w * b.lm_nh * kNhToH - 1.0 / (w * b.cm_ff * kFfToF));
        if (z == 0.0)
            z = cplx(0.0, std::numeric_limits<double>::min());
        y += 1.0 / z;
    }

    if (params.rs_ohm != 0.0) {
        if (y == 0.0)
            return y;
        y = 1.0 / (params.rs_ohm + 1.0 / y);
    }
    return y;
}

double branch_fs_ghz(const MotionalBranch& b) {
    return 1.0 / (2.0 * M_PI * std::sqrt(b.lm_nh * kNhToH * b.cm_ff * kFfToF)) * 1e-9;
}

ResonancePair resonance_frequencies(const MbvdParams& params) {
    validate(params);

    double fs_min = std::numeric_limits<double>::infinity();
    double fp_max = 0.0;
    for (const auto& b : params.branches) {
        const double fs = branch_fs_ghz(b);
        const double fp = fs * std::sqrt(1.0 + b.cm_ff / params.c0_ff);
        fs_min = std::min(fs_min, fs);
        fp_max = std::max(fp_max, fp);
    }
    const double main_fs = branch_fs_ghz(params.branches.front());

    const double lo = 0.75 * fs_min;
    const double hi = 1.35 * fp_max;
    const int n = 8001;
    std::vector<double> f(n), mag(n);
    for (int i = 0; i < n; ++i) {
        f[i] = lo + (hi - lo) * i / (n - 1);
        mag[i] = std::abs(admittance(params, f[i]));
    }

    // largest refined |Y| peak wins; ties (e.g. lossless poles) go to the
    // peak nearest the main branch
    double best_fs = -1.0, best_mag = -1.0;
    for (int i = 1; i + 1 < n; ++i) {
        if (mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1]) {
            const double fpk = golden_min(
                [&](double x) { return -std::abs(admittance(params, x)); }, f[i - 1], f[i + 1],
                1e-9);
            const double m = std::abs(admittance(params, fpk));
            const bool better =
                m > best_mag * (1.0 + 1e-9) ||
                (m > best_mag * (1.0 - 1e-9) &&
                 std::abs(fpk - main_fs) < std::abs(best_fs - main_fs));
            if (better) {
                best_mag = m;
                best_fs = fpk;
            }
        }
    }
    if (best_fs < 0.0)
        throw Error(errc::numeric, "no interior admittance maximum found");

    // first |Y| minimum above fs
    int start = static_cast<int>((best_fs - lo) / (hi - lo) * (n - 1)) + 1;
    start = std::clamp(start, 1, n - 2);
    double fp = -1.0;
    for (int i = start; i + 1 < n; ++i) {
        if (f[i] <= best_fs)
            continue;
        if (mag[i] <= mag[i - 1] && mag[i] <= mag[i + 1]) {
            fp = golden_min([&](double x) { return std::abs(admittance(params, x)); }, f[i - 1],
                            f[i + 1], 1e-9);
            break;
        }
    }
    if (fp < 0.0)
        throw Error(errc::numeric,
                    "degenerate resonance: no admittance minimum above fs within the scan window");
    return {best_fs, fp};
}

double k2_from_fs_fp(double fs_ghz, double fp_ghz, K2Convention convention) {
    if (!(fs_ghz > 0.0) || !(fp_ghz > 0.0))
        throw Error(errc::invalid_argument, "frequencies must be positive");
    if (fp_ghz < fs_ghz)
        throw Error(errc::invalid_argument, "fp must not be below fs (got fp = " +
                                                fmt_g(fp_ghz, 6) + " < fs = " + fmt_g(fs_ghz, 6) +
                                                " GHz)");
    const double r = 1.0 - (fs_ghz / fp_ghz) * (fs_ghz / fp_ghz);
    switch (convention) {
    case K2Convention::capacitance_ratio:
        return r;
    case K2Convention::pi2_over_8:
        return (M_PI * M_PI / 8.0) * r;
    }
    throw Error(errc::invalid_argument, "unknown k2 convention");
}

double quality_factor(const MbvdParams& params) {
    validate(params);
    const auto& main = params.branches.front();
    if (main.rm_ohm == 0.0)
        throw Error(errc::numeric, "quality factor is unbounded for a lossless main branch");

    // Re(Y) of the main branch is a Lorentzian of full width Rm/Lm in
    // omega, unpolluted by the (lossless) static branch.
    const double fs_pred = branch_fs_ghz(main);
    const double q_pred = omega(fs_pred) * main.lm_nh * kNhToH / main.rm_ohm;
    const double half_span = std::max(3.0 / q_pred, 1e-6) * fs_pred;

    auto re_y = [&](double f) { return admittance(params, f).real(); };

    const double f_peak =
        golden_min([&](double f) { return -re_y(f); }, fs_pred - half_span, fs_pred + half_span,
                   1e-12);
    const double half = 0.5 * re_y(f_peak);

    auto crossing = [&](int dir) {
        double inner = f_peak;
        double outer = f_peak;
        double step = f_peak / q_pred * 0.25;
        for (int i = 0; i < 200; ++i) {
            outer += dir * step;
            if (outer <= 0.0)
                throw Error(errc::numeric, "half-power crossing not found");
            if (re_y(outer) < half)
                break;
            inner = outer;
            step *= 1.5;
        }
        if (re_y(outer) >= half)
            throw Error(errc::numeric, "half-power crossing not found");
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (inner + outer);
            (re_y(mid) >= half ? inner : outer) = mid;
        }
        return 0.5 * (inner + outer);
    };

    const double f_hi = crossing(+1);
    const double f_lo = crossing(-1);
    return f_peak / (f_hi - f_lo);
}

ResonatorSpec derive_spec(const MbvdParams& params, K2Convention convention) {
    validate(params);
    ResonatorSpec spec;
    spec.rs_ohm = params.rs_ohm;
    spec.r0_ohm = params.r0_ohm;
    spec.c0_ff = params.c0_ff;

    auto mode_of = [&](const MotionalBranch& b) {
        const double fs = branch_fs_ghz(b);
        const double fp = fs * std::sqrt(1.0 + b.cm_ff / params.c0_ff);
        const double k2 = k2_from_fs_fp(fs, fp, convention);
        const double q = b.rm_ohm == 0.0
                             ? std::numeric_limits<double>::infinity()
                             : 1.0 / (omega(fs) * b.cm_ff * kFfToF * b.rm_ohm);
        return std::tuple<double, double, double>{fs, k2, q};
    };

    auto [fs, k2, q] = mode_of(params.branches.front());
    spec.fs_ghz = fs;
    spec.k2 = k2;
    spec.q = q;
    for (std::size_t i = 1; i < params.branches.size(); ++i) {
        auto [sfs, sk2, sq] = mode_of(params.branches[i]);
        spec.spurs.push_back({sfs, sk2, sq});
    }
    return spec;
}

} // namespace xfl
