/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/stack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/numfmt.hpp"
#include "core/simplex.hpp"

namespace xfl {

namespace {

constexpr double kNmToM = 1e-9;
constexpr double kUmToM = 1e-6;
constexpr double kHzToGHz = 1e-9;

double lateral_term_hz(const ModeSpec& mode, const AcousticConstants& c) {
    if (std::isinf(mode.lateral_wavelength_um))
        return 0.0;
    return c.v_lateral / (mode.lateral_wavelength_um * kUmToM);
}

} // namespace

double LayerStack::total_thickness_nm() const {
    double total = 0.0;
    for (const auto& l : layers)
        total += l.thickness_nm;
    return total;
}

bool LayerStack::strictly_p3f() const {
    for (std::size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].orientation == layers[i - 1].orientation)
            return false;
    }
    return true;
}

bool LayerStack::uniform_layers(double rel_tol) const {
    if (layers.empty())
        return true;
    const double t0 = layers.front().thickness_nm;
    for (const auto& l : layers) {
        if (std::abs(l.thickness_nm - t0) > rel_tol * t0)
            return false;
    }
    return true;
}

void validate(const AcousticConstants& c) {
    if (!(c.v_thickness > 0.0) || !std::isfinite(c.v_thickness))
        throw Error(errc::invalid_argument, "v_thickness must be positive and finite");
    if (!(c.v_lateral > 0.0) || !std::isfinite(c.v_lateral))
        throw Error(errc::invalid_argument, "v_lateral must be positive and finite");
}

void validate(const LayerStack& s) {
    if (s.layers.empty())
        throw Error(errc::invalid_argument, "stack needs at least one layer");
    for (const auto& l : s.layers) {
        if (!(l.thickness_nm > 0.0) || !std::isfinite(l.thickness_nm))
            throw Error(errc::invalid_argument, "layer thickness must be positive");
        if (l.orientation != 1 && l.orientation != -1)
            throw Error(errc::invalid_argument, "layer orientation must be +1 or -1");
    }
    validate(s.material);
}

void validate(const ModeSpec& m) {
    if (m.order < 1)
        throw Error(errc::invalid_argument, "mode order must be >= 1");
    if (!(m.lateral_wavelength_um > 0.0))
        throw Error(errc::invalid_argument, "lateral wavelength must be positive");
}

std::vector<std::string> lint(const LayerStack& s) {
    std::vector<std::string> notes;
    auto check_v = [&](double v, const char* name) {
        if (v < 1000.0 || v > 10000.0)
            notes.push_back(std::string(name) + " = " + fmt_g(v, 6) +
                            " m/s is outside the plausible 1000-10000 m/s range");
    };
    check_v(s.material.v_thickness, "v_thickness");
    check_v(s.material.v_lateral, "v_lateral");
    if (s.strictly_p3f() && s.layers.size() > 1 && !s.uniform_layers()) {
        const int m = static_cast<int>(s.layers.size());
        std::string orders;
        for (int n = 1; n * m <= 4 * m; n += 2) {
            for (int adj : {n * m - 1, n * m + 1}) {
                if (!orders.empty())
                    orders += ", ";
                orders += std::to_string(adj);
            }
        }
        notes.push_back("non-uniform layer thicknesses leave adjacent orders partially "
                        "unsuppressed (e.g. " + orders + ")");
    }
    return notes;
}

double mode_frequency_ghz(double h_nm, const ModeSpec& mode, const AcousticConstants& c) {
    if (!(h_nm > 0.0))
        throw Error(errc::invalid_argument, "thickness must be positive");
    validate(mode);
    validate(c);
    const double lat = lateral_term_hz(mode, c);
    const double thick = mode.order * c.v_thickness / (2.0 * h_nm * kNmToM);
    return std::hypot(lat, thick) * kHzToGHz;
}

double mode_frequency_ghz(const LayerStack& stack, const ModeSpec& mode) {
    validate(stack);
    return mode_frequency_ghz(stack.total_thickness_nm(), mode, stack.material);
}

double thickness_for_frequency_nm(double f_ghz, const ModeSpec& mode, const AcousticConstants& c) {
    validate(mode);
    validate(c);
    const double lat = lateral_term_hz(mode, c);
    const double f_hz = f_ghz * 1e9;
    if (!(f_hz > lat))
        throw Error(errc::infeasible,
                    "frequency " + fmt_g(f_ghz, 6) + " GHz does not exceed the lateral cutoff " +
                        fmt_g(lat * kHzToGHz, 6) + " GHz; no thickness solves the dispersion");
    const double thick = std::sqrt(f_hz * f_hz - lat * lat);
    return mode.order * c.v_thickness / (2.0 * thick) / kNmToM;
}

CalibrationResult calibrate_velocity(std::span<const CalibrationPoint> points,
                                     std::optional<double> v_lateral) {
    for (const auto& p : points) {
        if (!(p.h_nm > 0.0) || p.order < 1 || !(p.lambda_um > 0.0) || !(p.f_ghz > 0.0))
            throw Error(errc::invalid_argument, "calibration point out of range");
    }

    AcousticConstants fit;
    if (v_lateral) {
        if (points.empty())
            throw Error(errc::invalid_argument,
                        "underdetermined system: fitting v_thickness needs at least one point");
        fit.v_lateral = *v_lateral;
        auto sse = [&](double v) {
            AcousticConstants c{v, fit.v_lateral};
            double s = 0.0;
            for (const auto& p : points) {
                const double d =
                    mode_frequency_ghz(p.h_nm, {p.order, p.lambda_um}, c) - p.f_ghz;
                s += d * d;
            }
            return s;
        };
        fit.v_thickness = golden_min(sse, 100.0, 30000.0, 1e-12);
    } else {
        if (points.size() < 2)
            throw Error(errc::invalid_argument,
                        "underdetermined system: fitting both velocities needs at least two points");
        // f^2 is linear in (v_lat^2, v_th^2); solve the 2x2 normal equations,
        // then refine on the true (unsquared) objective.
        double saa = 0, sab = 0, sbb = 0, saf = 0, sbf = 0;
        for (const auto& p : points) {
            const double a = 1.0 / ((p.lambda_um * kUmToM) * (p.lambda_um * kUmToM));
            const double b = (p.order / (2.0 * p.h_nm * kNmToM)) *
                             (p.order / (2.0 * p.h_nm * kNmToM));
            const double f2 = (p.f_ghz * 1e9) * (p.f_ghz * 1e9);
            saa += a * a;
            sab += a * b;
            sbb += b * b;
            saf += a * f2;
            sbf += b * f2;
        }
        const double det = saa * sbb - sab * sab;
        if (!(std::abs(det) > 1e-12 * saa * sbb))
            throw Error(errc::invalid_argument,
                        "underdetermined system: calibration points do not separate the two "
                        "velocity terms");
        const double vlat2 = (saf * sbb - sbf * sab) / det;
        const double vth2 = (saa * sbf - sab * saf) / det;
        if (!(vlat2 > 0.0) || !(vth2 > 0.0))
            throw Error(errc::numeric, "calibration produced a non-physical velocity");
        std::vector<double> x0{std::sqrt(vlat2), std::sqrt(vth2)};
        auto sse = [&](std::span<const double> x) {
            if (x[0] <= 0.0 || x[1] <= 0.0)
                return 1e30;
            AcousticConstants c{x[1], x[0]};
            double s = 0.0;
            for (const auto& p : points) {
                const double d =
                    mode_frequency_ghz(p.h_nm, {p.order, p.lambda_um}, c) - p.f_ghz;
                s += d * d;
            }
            return s;
        };
        std::vector<double> step{0.01 * x0[0], 0.01 * x0[1]};
        auto res = nelder_mead(sse, x0, step, {});
        fit.v_lateral = res.x[0];
        fit.v_thickness = res.x[1];
    }

    CalibrationResult out;
    out.constants = fit;
    out.residuals_ghz.reserve(points.size());
    for (const auto& p : points)
        out.residuals_ghz.push_back(mode_frequency_ghz(p.h_nm, {p.order, p.lambda_um}, fit) -
                                    p.f_ghz);
    return out;
}

double frequency_sensitivity(double h_nm, const ModeSpec& mode, const AcousticConstants& c) {
    if (!(h_nm > 0.0))
        throw Error(errc::invalid_argument, "thickness must be positive");
    validate(mode);
    validate(c);
    const double h_m = h_nm * kNmToM;
    const double b = (mode.order * c.v_thickness / 2.0) * (mode.order * c.v_thickness / 2.0);
    const double f_hz = mode_frequency_ghz(h_nm, mode, c) * 1e9;
    // d/dh sqrt(A + B/h^2) = -B / (h^3 f); converted Hz/m -> GHz/nm
    return -b / (h_m * h_m * h_m * f_hz) * 1e-18;
}

double frequency_sensitivity(const LayerStack& stack, const ModeSpec& mode) {
    validate(stack);
    return frequency_sensitivity(stack.total_thickness_nm(), mode, stack.material);
}

namespace {

// uncapped solve on the effective thickness; callers decide whether the
// result is physically trimmable
double trim_on_effective(const ModeSpec& mode, const AcousticConstants& mat, double h_eff_nm,
                         double delta_f_ghz) {
    if (!(h_eff_nm > 0.0))
        throw Error(errc::invalid_argument, "electrode offset leaves no effective thickness");
    const double f0 = mode_frequency_ghz(h_eff_nm, mode, mat);
    return h_eff_nm - thickness_for_frequency_nm(f0 + delta_f_ghz, mode, mat);
}

} // namespace

double trim_depth_for_offset_nm(const LayerStack& stack, const ModeSpec& mode,
                                double delta_f_ghz, double electrode_offset_nm) {
    validate(stack);
    validate(mode);
    if (!(delta_f_ghz >= 0.0))
        throw Error(errc::invalid_argument, "delta_f must be non-negative");
    if (delta_f_ghz == 0.0)
        return 0.0;
    const double h_phys = stack.total_thickness_nm();
    const double trim =
        trim_on_effective(mode, stack.material, h_phys + electrode_offset_nm, delta_f_ghz);
    if (trim >= h_phys)
        throw Error(errc::infeasible, "delta_f of " + fmt_g(delta_f_ghz, 6) +
                                          " GHz needs a trim of " + fmt_g(trim, 6) +
                                          " nm, more than the stack thickness");
    return trim;
}

double electrode_offset_for_trim_nm(const LayerStack& stack, const ModeSpec& mode,
                                    double delta_f_ghz, double trim_nm) {
    validate(stack);
    validate(mode);
    if (!(delta_f_ghz > 0.0) || !(trim_nm > 0.0))
        throw Error(errc::invalid_argument, "delta_f and trim must be positive");
    const double h = stack.total_thickness_nm();
    // trim_depth is strictly increasing in the offset; bisect.
    double lo = -0.95 * h;
    double hi = 10.0 * h;
    auto g = [&](double off) {
        return trim_on_effective(mode, stack.material, h + off, delta_f_ghz) - trim_nm;
    };
    if (g(lo) > 0.0 || g(hi) < 0.0)
        throw Error(errc::infeasible, "no electrode offset reproduces a trim of " +
                                          fmt_g(trim_nm, 6) + " nm");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<std::pair<int, CouplingClass>> coupled_overtone_orders(const LayerStack& stack,
                                                                   int max_order) {
    validate(stack);
    if (max_order < 1)
        throw Error(errc::invalid_argument, "max_order must be >= 1");
    if (!stack.strictly_p3f())
        throw Error(errc::invalid_argument,
                    "stack is not strictly P3F: orientations must alternate layer to layer");

    const int m = static_cast<int>(stack.layers.size());
    const bool uniform = stack.uniform_layers();

    auto strong = [&](int n) { return n % m == 0 && ((n / m) % 2 == 1); };

    std::vector<std::pair<int, CouplingClass>> out;
    out.reserve(static_cast<std::size_t>(max_order));
    for (int n = 1; n <= max_order; ++n) {
        CouplingClass cls = CouplingClass::weak;
        if (strong(n))
            cls = CouplingClass::strong;
        else if (!uniform && (strong(n - 1) || strong(n + 1)))
            cls = CouplingClass::partially_unsuppressed;
        out.emplace_back(n, cls);
    }
    return out;
}

} // namespace xfl
