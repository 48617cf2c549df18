/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/simplex.hpp"

namespace xfl {

namespace {

constexpr double kPenalty = 1e6;

bool series_role(const DesignTemplate& t, int resonator) {
    for (const auto& [placement, idx] : t.elements)
        if (idx == resonator && placement == LadderElement::Placement::series)
            return true;
    return false;
}

double nominal_delta_f(const DesignTemplate& t) {
    double series_fs = -1.0, shunt_fs = -1.0;
    for (const auto& [placement, idx] : t.elements) {
        const double fs = t.resonators[static_cast<std::size_t>(idx)].fs_ghz;
        if (placement == LadderElement::Placement::series && series_fs < 0.0)
            series_fs = fs;
        if (placement == LadderElement::Placement::shunt && shunt_fs < 0.0)
            shunt_fs = fs;
    }
    if (series_fs < 0.0 || shunt_fs < 0.0)
        throw Error(errc::invalid_argument,
                    "design template needs both a series and a shunt element");
    return series_fs - shunt_fs;
}

} // namespace

void validate(const DesignTemplate& t) {
    if (t.resonators.empty() || t.elements.empty())
        throw Error(errc::invalid_argument, "design template is empty");
    if (!(t.z0_ohm > 0.0))
        throw Error(errc::invalid_argument, "port impedance must be positive");
    if (t.parasitic_l_nh.size() != t.elements.size())
        throw Error(errc::invalid_argument, "one parasitic inductance per element required");
    for (const auto& r : t.resonators)
        validate(r);
    for (const auto& [placement, idx] : t.elements) {
        (void)placement;
        if (idx < 0 || static_cast<std::size_t>(idx) >= t.resonators.size())
            throw Error(errc::invalid_argument, "ladder element references a missing resonator");
    }
    for (std::size_t r = 0; r < t.resonators.size(); ++r) {
        bool series = false, shunt = false;
        for (const auto& [placement, idx] : t.elements) {
            if (static_cast<std::size_t>(idx) != r)
                continue;
            (placement == LadderElement::Placement::series ? series : shunt) = true;
        }
        if (series && shunt)
            throw Error(errc::invalid_argument,
                        "resonator " + std::to_string(r) +
                            " is used both series and shunt; the frequency-offset variable "
                            "would be ambiguous");
    }
}

DesignVariables nominal_variables(const DesignTemplate& t) {
    validate(t);
    DesignVariables v;
    v.c0_ff.reserve(t.resonators.size());
    for (const auto& r : t.resonators)
        v.c0_ff.push_back(r.c0_ff);
    v.delta_f_ghz = nominal_delta_f(t);
    return v;
}

FilterDesign instantiate(const DesignTemplate& t, const DesignVariables& vars) {
    validate(t);
    if (vars.c0_ff.size() != t.resonators.size())
        throw Error(errc::invalid_argument, "one C0 per resonator required");

    const double shift = vars.delta_f_ghz - nominal_delta_f(t);

    std::vector<MbvdParams> synthesized;
    synthesized.reserve(t.resonators.size());
    for (std::size_t r = 0; r < t.resonators.size(); ++r) {
        ResonatorSpec spec = t.resonators[r];
        spec.c0_ff = vars.c0_ff[r];
        if (series_role(t, static_cast<int>(r)) && shift != 0.0) {
            const double fs_new = spec.fs_ghz + shift;
            if (!(fs_new > 0.0))
                throw Error(errc::invalid_argument, "frequency offset drives fs negative");
            const double scale = fs_new / spec.fs_ghz;
            spec.fs_ghz = fs_new;
            for (auto& sp : spec.spurs)
                sp.fs_ghz *= scale;
        }
        synthesized.push_back(synthesize_mbvd(spec));
    }

    FilterDesign d;
    d.z0_ohm = t.z0_ohm;
    d.elements.reserve(t.elements.size());
    for (std::size_t e = 0; e < t.elements.size(); ++e) {
        LadderElement el;
        el.placement = t.elements[e].first;
        el.resonator = synthesized[static_cast<std::size_t>(t.elements[e].second)];
        el.parasitic_l_nh = t.parasitic_l_nh[e];
        d.elements.push_back(std::move(el));
    }
    return d;
}

double evaluate_design(const DesignVariables& vars, const DesignTemplate& t,
                       const SweepGrid& grid, const Objective& obj) {
    if (!(obj.il_weight >= 0.0) || !(obj.fbw_weight >= 0.0) || !(obj.ripple_weight >= 0.0) ||
        (obj.il_weight == 0.0 && obj.fbw_weight == 0.0 && obj.ripple_weight == 0.0))
        throw Error(errc::invalid_argument, "objective needs non-negative weights, one positive");
    for (double c0 : vars.c0_ff)
        if (!(c0 > 0.0))
            return kPenalty;
    if (!(vars.delta_f_ghz > 0.0))
        return kPenalty;

    SweepResult sweep;
    FilterMetrics m;
    try {
        sweep = simulate(instantiate(t, vars), grid);
        m = extract_metrics(sweep);
    } catch (const Error&) {
        return kPenalty;
    }

    double ripple = 0.0;
    double in_max = -1e300, in_min = 1e300;
    for (std::size_t i = 0; i < sweep.f_ghz.size(); ++i) {
        if (sweep.f_ghz[i] < m.f_lo_ghz || sweep.f_ghz[i] > m.f_hi_ghz)
            continue;
        const double db = 20.0 * std::log10(std::abs(sweep.s21[i]));
        in_max = std::max(in_max, db);
        in_min = std::min(in_min, db);
    }
    if (in_max > in_min)
        ripple = in_max - in_min;

    return obj.il_weight * m.il_db + obj.fbw_weight * std::abs(m.fbw_3db_pct - obj.target_fbw_pct) +
           obj.ripple_weight * ripple;
}

OptimizeResult optimize(const DesignTemplate& t, const Bounds& bounds, const SweepGrid& grid,
                        const Objective& obj, const OptimizeOptions& options) {
    validate(t);
    const std::size_t dim = t.resonators.size() + 1;
    if (bounds.lo.size() != dim || bounds.hi.size() != dim)
        throw Error(errc::invalid_argument,
                    "bounds must cover every C0 plus the frequency offset");
    for (std::size_t i = 0; i < dim; ++i)
        if (!(bounds.hi[i] >= bounds.lo[i]))
            throw Error(errc::invalid_argument, "bounds box is inverted");
    if (options.n_starts < 1)
        throw Error(errc::invalid_argument, "need at least one start");

    auto clamp_vec = [&](std::vector<double> x) {
        for (std::size_t i = 0; i < dim; ++i)
            x[i] = std::clamp(x[i], bounds.lo[i], bounds.hi[i]);
        return x;
    };
    auto vars_of = [&](std::span<const double> x) {
        DesignVariables v;
        v.c0_ff.assign(x.begin(), x.end() - 1);
        v.delta_f_ghz = x.back();
        return v;
    };
    auto cost_of = [&](std::span<const double> x) {
        std::vector<double> c = clamp_vec(std::vector<double>(x.begin(), x.end()));
        return evaluate_design(vars_of(c), t, grid, obj);
    };

    const DesignVariables nominal = nominal_variables(t);
    std::vector<double> x_nominal(nominal.c0_ff);
    x_nominal.push_back(nominal.delta_f_ghz);
    x_nominal = clamp_vec(std::move(x_nominal));

    bool degenerate = true;
    for (std::size_t i = 0; i < dim; ++i)
        if (bounds.hi[i] > bounds.lo[i])
            degenerate = false;

    struct Start {
        SimplexResult sim;
    };
    std::vector<Start> starts(static_cast<std::size_t>(options.n_starts));

    if (degenerate) {
        // box collapsed to a point: nothing to search
        for (auto& s : starts) {
            s.sim.x = x_nominal;
            s.sim.fx = cost_of(x_nominal);
            s.sim.best_trace = {s.sim.fx};
        }
    } else {
        parallel_for(starts.size(), [&](std::size_t k) {
            std::vector<double> x0 = x_nominal;
            if (k > 0) {
                Rng rng(mix_seed(options.seed, k));
                for (std::size_t i = 0; i < dim; ++i)
                    x0[i] = rng.uniform(bounds.lo[i], bounds.hi[i]);
            }
            std::vector<double> step(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                step[i] = 0.15 * (bounds.hi[i] - bounds.lo[i]);
                if (step[i] == 0.0)
                    step[i] = 1e-9;
            }
            SimplexOptions so;
            so.max_iter = options.max_iter;
            so.f_tol = 1e-9;
            so.x_tol = 1e-7;
            starts[k].sim = nelder_mead(cost_of, x0, step, so);
        });
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < starts.size(); ++k)
        if (starts[k].sim.fx < starts[best].sim.fx)
            best = k;

    OptimizeResult out;
    const std::vector<double> xb = clamp_vec(starts[best].sim.x);
    out.best = vars_of(xb);
    out.best_cost = starts[best].sim.fx;
    out.cost_trace = starts[best].sim.best_trace;
    out.best_start = static_cast<int>(best);
    out.best_sweep = simulate(instantiate(t, out.best), grid);
    try {
        out.best_metrics = extract_metrics(out.best_sweep);
    } catch (const Error&) {
        // no extractable passband anywhere in the box; sweep still returned
    }
    return out;
}

} // namespace xfl
