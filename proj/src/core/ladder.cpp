/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/ladder.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/numfmt.hpp"
#include "core/parallel.hpp"

namespace xfl {

namespace {

// Open-circuit sentinel for a series element whose admittance vanishes
// exactly; keeps the cascade finite (S21 -> 0, S11 -> 1).
constexpr double kOpenOhm = 1e30;

} // namespace

std::vector<double> SweepGrid::frequencies() const {
    validate(*this);
    std::vector<double> f(static_cast<std::size_t>(n_points));
    const double n1 = static_cast<double>(n_points - 1);
    if (spacing == Spacing::linear) {
        for (int i = 0; i < n_points; ++i)
            f[static_cast<std::size_t>(i)] = f_start_ghz + (f_stop_ghz - f_start_ghz) * i / n1;
    } else {
        const double ratio = f_stop_ghz / f_start_ghz;
        for (int i = 0; i < n_points; ++i)
            f[static_cast<std::size_t>(i)] = f_start_ghz * std::pow(ratio, i / n1);
    }
    return f;
}

void validate(const FilterDesign& d) {
    if (d.elements.empty())
        throw Error(errc::invalid_argument, "ladder needs at least one element");
    if (!(d.z0_ohm > 0.0))
        throw Error(errc::invalid_argument, "port impedance must be positive");
    for (const auto& e : d.elements) {
        validate(e.resonator);
        if (e.parasitic_l_nh < 0.0)
            throw Error(errc::invalid_argument, "parasitic inductance must be non-negative");
    }
}

void validate(const SweepGrid& g) {
    if (!(g.f_start_ghz > 0.0) || !(g.f_stop_ghz > g.f_start_ghz))
        throw Error(errc::invalid_argument, "sweep needs f_stop > f_start > 0");
    if (g.n_points < 2)
        throw Error(errc::invalid_argument, "sweep needs at least two points");
}

Abcd element_abcd(const LadderElement& e, double f_ghz) {
    cplx y = admittance(e.resonator, f_ghz);
    const double w = 2.0 * M_PI * f_ghz * 1e9;
    const cplx zl(0.0, w * e.parasitic_l_nh * 1e-9);

    if (e.placement == LadderElement::Placement::series) {
        cplx z = (y == 0.0) ? cplx(kOpenOhm, 0.0) : 1.0 / y;
        return {1.0, z + zl, 0.0, 1.0};
    }
    if (e.parasitic_l_nh != 0.0)
        y = (y == 0.0) ? cplx(0.0) : 1.0 / (1.0 / y + zl);
    return {1.0, 0.0, y, 1.0};
}

Abcd cascade(std::span<const LadderElement> elements, double f_ghz) {
    if (elements.empty())
        throw Error(errc::invalid_argument, "cascade needs at least one element");
    Abcd m;
    for (const auto& e : elements) {
        const Abcd n = element_abcd(e, f_ghz);
        m = {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
             m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    return m;
}

SMatrix s_params(const Abcd& m, double z0_ohm) {
    if (!(z0_ohm > 0.0))
        throw Error(errc::invalid_argument, "port impedance must be positive");
    const cplx den = m.a + m.b / z0_ohm + m.c * z0_ohm + m.d;
    if (den == 0.0)
        throw Error(errc::numeric, "S-parameter conversion is singular (A+B/z0+Cz0+D = 0)");
    SMatrix s;
    s.s11 = (m.a + m.b / z0_ohm - m.c * z0_ohm - m.d) / den;
    s.s21 = 2.0 / den;
    s.s12 = 2.0 * (m.a * m.d - m.b * m.c) / den;
    s.s22 = (-m.a + m.b / z0_ohm - m.c * z0_ohm + m.d) / den;
    return s;
}

SweepResult simulate(const FilterDesign& design, const SweepGrid& grid) {
    validate(design);
    SweepResult out;
    out.f_ghz = grid.frequencies();
    const std::size_t n = out.f_ghz.size();
    out.s11.resize(n);
    out.s21.resize(n);
    out.s12.resize(n);
    out.s22.resize(n);

    parallel_for(n, [&](std::size_t i) {
        try {
            const Abcd m = cascade(design.elements, out.f_ghz[i]);
            const SMatrix s = s_params(m, design.z0_ohm);
            out.s11[i] = s.s11;
            out.s21[i] = s.s21;
            out.s12[i] = s.s21; // reciprocal ladder: identical computation path
            out.s22[i] = s.s22;
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()) + " (at sweep point " +
                                      std::to_string(i) + ", f = " + fmt_g(out.f_ghz[i], 8) +
                                      " GHz)");
        }
    });
    return out;
}

} // namespace xfl
