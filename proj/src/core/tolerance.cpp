/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace xfl {

namespace {

SummaryStats summarize(std::vector<double> v) {
    SummaryStats s;
    const std::size_t n = v.size();
    if (n == 0)
        return s;
    double sum = 0.0;
    for (double x : v)
        sum += x;
    s.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : v)
        ss += (x - s.mean) * (x - s.mean);
    s.stddev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    std::sort(v.begin(), v.end());
    auto pct = [&](double p) {
        const double pos = p * static_cast<double>(n - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        if (i + 1 >= n)
            return v[n - 1];
        const double frac = pos - static_cast<double>(i);
        return v[i] + frac * (v[i + 1] - v[i]);
    };
    s.p5 = pct(0.05);
    s.p95 = pct(0.95);
    return s;
}

} // namespace

void validate(const ToleranceScenario& s) {
    validate(s.stack);
    validate(s.mode);
    if (!(s.sigma_h_nm >= 0.0))
        throw Error(errc::invalid_argument, "sigma_h must be non-negative");
    if (s.n_trials < 1)
        throw Error(errc::invalid_argument, "need at least one trial");
}

ToleranceReport run_tolerance(const ToleranceScenario& scenario,
                              const std::optional<ToleranceDesign>& design) {
    validate(scenario);

    std::size_t n_res = 0;
    std::vector<double> nominal_fs, nominal_dfdh;
    int first_series = -1, first_shunt = -1;
    double nominal_fbw = 0.0;
    std::optional<FilterMetrics> nominal_metrics;
    if (design) {
        validate(design->tmpl);
        n_res = design->tmpl.resonators.size();
        if (design->stacks.size() != n_res || design->modes.size() != n_res)
            throw Error(errc::invalid_argument,
                        "tolerance design needs one stack and mode per resonator");
        for (std::size_t r = 0; r < n_res; ++r) {
            nominal_fs.push_back(mode_frequency_ghz(design->stacks[r], design->modes[r]));
            nominal_dfdh.push_back(frequency_sensitivity(design->stacks[r], design->modes[r]));
        }
        for (const auto& [placement, idx] : design->tmpl.elements) {
            if (placement == LadderElement::Placement::series && first_series < 0)
                first_series = idx;
            if (placement == LadderElement::Placement::shunt && first_shunt < 0)
                first_shunt = idx;
        }
        const DesignVariables nominal = nominal_variables(design->tmpl);
        nominal_metrics = extract_metrics(simulate(instantiate(design->tmpl, nominal),
                                                   design->grid),
                                          design->spur_windows);
        nominal_fbw = nominal_metrics->fbw_3db_pct;
    }

    const double h0 = scenario.stack.total_thickness_nm();
    const double f0 = mode_frequency_ghz(scenario.stack, scenario.mode);
    const double dfdh0 = frequency_sensitivity(scenario.stack, scenario.mode);
    const double half_width = scenario.sigma_h_nm * std::sqrt(3.0); // uniform, same stddev

    auto draw = [&](Rng& rng) {
        if (scenario.distribution == ToleranceScenario::Distribution::normal)
            return scenario.sigma_h_nm * rng.normal();
        return rng.uniform(-half_width, half_width);
    };

    auto shift_of = [&](double h_nm, double dfdh, double f_nominal, const ModeSpec& mode,
                        const AcousticConstants& mat, double dh) {
        if (!scenario.exact_shift)
            return dh * dfdh;
        const double h_new = h_nm + dh;
        if (!(h_new > 0.0))
            return std::numeric_limits<double>::quiet_NaN();
        return mode_frequency_ghz(h_new, mode, mat) - f_nominal;
    };

    const std::size_t n = static_cast<std::size_t>(scenario.n_trials);
    std::vector<TrialRecord> trials(n);
    std::vector<double> shifts(n);

    parallel_for(n, [&](std::size_t t) {
        Rng rng(scenario.seed + t);
        const double dh = draw(rng);

        TrialRecord rec;
        rec.trial = static_cast<int>(t);
        rec.dh_nm = dh;
        rec.il_db = std::numeric_limits<double>::quiet_NaN();
        rec.fbw_pct = std::numeric_limits<double>::quiet_NaN();
        rec.pass = true;

        shifts[t] = shift_of(h0, dfdh0, f0, scenario.mode, scenario.stack.material, dh);
        // stack-only runs report the scenario stack's shifted frequency
        rec.fs_series_ghz = f0 + shifts[t];
        rec.fs_shunt_ghz = f0 + shifts[t];

        if (design) {
            DesignTemplate perturbed = design->tmpl;
            std::vector<double> fs_shifted(n_res);
            for (std::size_t r = 0; r < n_res; ++r) {
                const double dh_r = scenario.correlated ? dh : draw(rng);
                const double df = shift_of(design->stacks[r].total_thickness_nm(),
                                           nominal_dfdh[r], nominal_fs[r], design->modes[r],
                                           design->stacks[r].material, dh_r);
                auto& spec = perturbed.resonators[r];
                const double fs_new = spec.fs_ghz + df;
                fs_shifted[r] = fs_new;
                if (!(fs_new > 0.0) || std::isnan(fs_new)) {
                    rec.pass = false;
                    continue;
                }
                const double scale = fs_new / spec.fs_ghz;
                spec.fs_ghz = fs_new;
                for (auto& sp : spec.spurs)
                    sp.fs_ghz *= scale;
            }
            if (first_series >= 0)
                rec.fs_series_ghz = fs_shifted[static_cast<std::size_t>(first_series)];
            if (first_shunt >= 0)
                rec.fs_shunt_ghz = fs_shifted[static_cast<std::size_t>(first_shunt)];

            if (rec.pass) {
                try {
                    const FilterMetrics m =
                        extract_metrics(simulate(instantiate(perturbed, nominal_variables(
                                                                  perturbed)),
                                                 design->grid),
                                        design->spur_windows);
                    rec.il_db = m.il_db;
                    rec.fbw_pct = m.fbw_3db_pct;
                    const double fbw_tol = nominal_fbw * design->thresholds.fbw_rel_tol_pct / 100.0;
                    rec.pass = m.il_db <= design->thresholds.il_max_db &&
                               std::abs(m.fbw_3db_pct - nominal_fbw) <= fbw_tol;
                } catch (const Error&) {
                    rec.pass = false; // no passband counts against the pass rate
                }
            }
        }
        trials[t] = rec;
    });

    ToleranceReport report;
    report.trials = std::move(trials);
    report.fs_shift_ghz = summarize(shifts);
    report.nominal_f_ghz = f0;
    report.nominal_metrics = nominal_metrics;

    if (design) {
        std::vector<double> ils, fbws;
        int passes = 0, failed_sim = 0;
        for (const auto& rec : report.trials) {
            if (std::isnan(rec.il_db)) {
                ++failed_sim;
            } else {
                ils.push_back(rec.il_db);
                fbws.push_back(rec.fbw_pct);
            }
            passes += rec.pass ? 1 : 0;
        }
        if (!ils.empty()) {
            report.il_db = summarize(ils);
            report.fbw_pct = summarize(fbws);
        }
        report.pass_rate = static_cast<double>(passes) / static_cast<double>(n);
        report.n_failed_sim = failed_sim;
    }
    return report;
}

double required_thickness_margin_nm(const LayerStack& stack, const ModeSpec& mode,
                                    double delta_f_budget_ghz) {
    if (!(delta_f_budget_ghz >= 0.0))
        throw Error(errc::invalid_argument, "delta_f budget must be non-negative");
    if (delta_f_budget_ghz == 0.0)
        return 0.0;
    return trim_depth_for_offset_nm(stack, mode, delta_f_budget_ghz, 0.0);
}

} // namespace xfl
