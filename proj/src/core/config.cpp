/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace xfl {

namespace {

using nlohmann::json;

[[noreturn]] void cfg_fail(const std::string& msg) {
    throw Error(errc::parse, "config: " + msg);
}

const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        cfg_fail(where + " is missing '" + key + "'");
    return *it;
}

double num(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number())
        cfg_fail(where + "." + key + " must be a number");
    return v.get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    return it->get<double>();
}

SweepGrid parse_sweep(const json& j, const std::string& where) {
    SweepGrid g;
    g.f_start_ghz = num(j, "f_start_ghz", where);
    g.f_stop_ghz = num(j, "f_stop_ghz", where);
    g.n_points = static_cast<int>(num(j, "n_points", where));
    const std::string spacing = j.value("spacing", "linear");
    if (spacing == "linear")
        g.spacing = SweepGrid::Spacing::linear;
    else if (spacing == "logarithmic")
        g.spacing = SweepGrid::Spacing::logarithmic;
    else
        cfg_fail(where + ".spacing must be 'linear' or 'logarithmic'");
    validate(g);
    return g;
}

ResonatorSpec parse_resonator(const json& j, const std::string& where) {
    ResonatorSpec spec;
    spec.fs_ghz = num(j, "fs_ghz", where);
    spec.k2 = num(j, "k2_pct", where) / 100.0;
    spec.q = num(j, "q", where);
    spec.c0_ff = num(j, "c0_ff", where);
    spec.rs_ohm = num_or(j, "rs_ohm", 0.0);
    spec.r0_ohm = num_or(j, "r0_ohm", 0.0);
    if (j.contains("spurs")) {
        for (const auto& s : j.at("spurs")) {
            SpurSpec sp;
            sp.fs_ghz = num(s, "fs_ghz", where + ".spurs");
            sp.k2 = num(s, "k2_pct", where + ".spurs") / 100.0;
            sp.q = num_or(s, "q", spec.q); // spur Q defaults to the main mode's
            spec.spurs.push_back(sp);
        }
    }
    validate(spec);
    return spec;
}

} // namespace

const StackEntry& DesignConfig::stack(const std::string& name) const {
    for (const auto& s : stacks)
        if (s.name == name)
            return s;
    cfg_fail("unknown stack '" + name + "'");
}

const ResonatorEntry& DesignConfig::resonator(const std::string& name) const {
    for (const auto& r : resonators)
        if (r.name == name)
            return r;
    cfg_fail("unknown resonator '" + name + "'");
}

FilterDesign DesignConfig::filter_design() const {
    return instantiate(tmpl, nominal_variables(tmpl));
}

std::optional<ToleranceDesign> DesignConfig::tolerance_design() const {
    if (!tol_scenario || !tol_apply_to_filter)
        return std::nullopt;
    ToleranceDesign d;
    d.tmpl = tmpl;
    d.grid = sweep;
    d.thresholds = tol_thresholds;
    d.spur_windows = spur_windows;
    for (std::size_t r = 0; r < tmpl.resonators.size(); ++r) {
        const auto& entry = resonator(tmpl_resonator_names[r]);
        if (entry.stack_ref.empty())
            cfg_fail("tolerance.apply_to_filter needs a 'stack' on resonator '" + entry.name +
                     "'");
        const auto& se = stack(entry.stack_ref);
        d.stacks.push_back(se.stack);
        d.modes.push_back(se.mode);
    }
    return d;
}

namespace {
DesignConfig parse_config_impl(const std::string& json_text);
} // namespace

DesignConfig parse_config(const std::string& json_text) {
    try {
        return parse_config_impl(json_text);
    } catch (const json::exception& e) {
        cfg_fail(std::string("invalid JSON: ") + e.what());
    }
}

namespace {

DesignConfig parse_config_impl(const std::string& json_text) {
    json root = json::parse(json_text);

    DesignConfig cfg;
    cfg.schema_version = static_cast<int>(num(root, "schema_version", "config"));
    if (cfg.schema_version != 1)
        cfg_fail("unrecognized schema_version " + std::to_string(cfg.schema_version));
    cfg.seed = root.value("seed", 1ULL);

    // velocity calibration
    cfg.v_lateral = 4000.0;
    if (root.contains("velocity")) {
        const json& vel = root.at("velocity");
        cfg.v_lateral = num_or(vel, "v_lateral_m_s", 4000.0);
        if (vel.contains("calibration_points")) {
            for (const auto& p : vel.at("calibration_points")) {
                CalibrationPoint cp;
                cp.h_nm = num(p, "h_nm", "velocity.calibration_points");
                cp.order = static_cast<int>(num(p, "order", "velocity.calibration_points"));
                cp.lambda_um = num(p, "lambda_um", "velocity.calibration_points");
                cp.f_ghz = num(p, "f_ghz", "velocity.calibration_points");
                cfg.calibration_points.push_back(cp);
            }
        }
    }
    if (!cfg.calibration_points.empty())
        cfg.calibrated = calibrate_velocity(cfg.calibration_points, cfg.v_lateral).constants;

    // stacks
    if (root.contains("stacks")) {
        for (const auto& [name, js] : root.at("stacks").items()) {
            StackEntry e;
            e.name = name;
            const std::string where = "stacks." + name;
            for (const auto& jl : need(js, "layers", where)) {
                Layer l;
                l.thickness_nm = num(jl, "thickness_nm", where + ".layers");
                l.orientation = static_cast<int>(num_or(jl, "orientation", 1.0));
                e.stack.layers.push_back(l);
            }
            if (js.contains("v_thickness_m_s"))
                e.stack.material.v_thickness = js.at("v_thickness_m_s").get<double>();
            else if (cfg.calibrated)
                e.stack.material.v_thickness = cfg.calibrated->v_thickness;
            else
                cfg_fail(where + " needs 'v_thickness_m_s' (no calibration points given)");
            e.stack.material.v_lateral = num_or(js, "v_lateral_m_s", cfg.v_lateral);
            const json& jm = need(js, "mode", where);
            e.mode.order = static_cast<int>(num(jm, "order", where + ".mode"));
            e.mode.lateral_wavelength_um = num(jm, "lambda_um", where + ".mode");
            validate(e.stack);
            validate(e.mode);
            for (auto& note : lint(e.stack))
                cfg.warnings.push_back(where + ": " + note);
            cfg.stacks.push_back(std::move(e));
        }
    }

    // resonators
    if (root.contains("resonators")) {
        for (const auto& [name, js] : root.at("resonators").items()) {
            ResonatorEntry e;
            e.name = name;
            e.spec = parse_resonator(js, "resonators." + name);
            e.stack_ref = js.value("stack", "");
            if (!e.stack_ref.empty())
                cfg.stack(e.stack_ref); // existence check
            for (auto& note : lint(e.spec))
                cfg.warnings.push_back("resonators." + name + ": " + note);
            cfg.resonators.push_back(std::move(e));
        }
    }

    // filter template
    if (root.contains("filter")) {
        const json& jf = root.at("filter");
        cfg.tmpl.z0_ohm = num_or(jf, "z0_ohm", 50.0);
        for (const auto& je : need(jf, "elements", "filter")) {
            const std::string placement = need(je, "placement", "filter.elements").get<std::string>();
            const std::string rname = need(je, "resonator", "filter.elements").get<std::string>();
            const ResonatorEntry& re = cfg.resonator(rname);

            int idx = -1;
            for (std::size_t i = 0; i < cfg.tmpl_resonator_names.size(); ++i)
                if (cfg.tmpl_resonator_names[i] == rname)
                    idx = static_cast<int>(i);
            if (idx < 0) {
                idx = static_cast<int>(cfg.tmpl.resonators.size());
                cfg.tmpl.resonators.push_back(re.spec);
                cfg.tmpl_resonator_names.push_back(rname);
            }

            LadderElement::Placement pl;
            if (placement == "series")
                pl = LadderElement::Placement::series;
            else if (placement == "shunt")
                pl = LadderElement::Placement::shunt;
            else
                cfg_fail("filter.elements placement must be 'series' or 'shunt'");
            cfg.tmpl.elements.emplace_back(pl, idx);
            cfg.tmpl.parasitic_l_nh.push_back(num_or(je, "parasitic_l_nh", 0.0));
        }
        if (jf.contains("spur_windows_ghz")) {
            for (const auto& jw : jf.at("spur_windows_ghz")) {
                if (!jw.is_array() || jw.size() != 2)
                    cfg_fail("filter.spur_windows_ghz entries must be [start, stop] pairs");
                cfg.spur_windows.push_back({jw[0].get<double>(), jw[1].get<double>()});
            }
        }
        validate(cfg.tmpl);
    }

    // sweep grid (default: the 40-60 GHz reproduction window)
    if (root.contains("sweep"))
        cfg.sweep = parse_sweep(root.at("sweep"), "sweep");
    else
        cfg.sweep = {40.0, 60.0, 4001, SweepGrid::Spacing::linear};

    // dispersion table
    if (root.contains("dispersion")) {
        const json& jd = root.at("dispersion");
        cfg.dispersion.h_start_nm = num(jd, "h_start_nm", "dispersion");
        cfg.dispersion.h_stop_nm = num(jd, "h_stop_nm", "dispersion");
        cfg.dispersion.n_points = static_cast<int>(num(jd, "n_points", "dispersion"));
        for (const auto& o : need(jd, "orders", "dispersion"))
            cfg.dispersion.orders.push_back(o.get<int>());
    } else if (!cfg.stacks.empty()) {
        double hmin = 1e300, hmax = 0.0;
        for (const auto& s : cfg.stacks) {
            hmin = std::min(hmin, s.stack.total_thickness_nm());
            hmax = std::max(hmax, s.stack.total_thickness_nm());
            cfg.dispersion.orders.push_back(s.mode.order);
        }
        std::sort(cfg.dispersion.orders.begin(), cfg.dispersion.orders.end());
        cfg.dispersion.orders.erase(
            std::unique(cfg.dispersion.orders.begin(), cfg.dispersion.orders.end()),
            cfg.dispersion.orders.end());
        cfg.dispersion.h_start_nm = 0.8 * hmin;
        cfg.dispersion.h_stop_nm = 1.2 * hmax;
        cfg.dispersion.n_points = 81;
    }

    // optimizer
    cfg.opt_sweep = cfg.sweep;
    if (!cfg.tmpl.resonators.empty()) {
        const json jo = root.contains("optimizer") ? root.at("optimizer") : json::object();
        const double c0_pct = num_or(jo, "c0_bounds_pct", 50.0);
        const DesignVariables nominal = nominal_variables(cfg.tmpl);
        for (double c0 : nominal.c0_ff) {
            cfg.opt_bounds.lo.push_back(c0 * (1.0 - c0_pct / 100.0));
            cfg.opt_bounds.hi.push_back(c0 * (1.0 + c0_pct / 100.0));
        }
        if (jo.contains("delta_f_bounds_ghz")) {
            const auto& jb = jo.at("delta_f_bounds_ghz");
            cfg.opt_bounds.lo.push_back(jb[0].get<double>());
            cfg.opt_bounds.hi.push_back(jb[1].get<double>());
        } else {
            const double pct = num_or(jo, "delta_f_bounds_pct", 50.0);
            cfg.opt_bounds.lo.push_back(nominal.delta_f_ghz * (1.0 - pct / 100.0));
            cfg.opt_bounds.hi.push_back(nominal.delta_f_ghz * (1.0 + pct / 100.0));
        }
        if (jo.contains("objective")) {
            const json& job = jo.at("objective");
            cfg.objective.target_fbw_pct = num(job, "target_fbw_pct", "optimizer.objective");
            cfg.objective.il_weight = num_or(job, "il_weight", 1.0);
            cfg.objective.fbw_weight = num_or(job, "fbw_weight", 2.0);
            cfg.objective.ripple_weight = num_or(job, "ripple_weight", 0.5);
        }
        cfg.opt_options.n_starts = static_cast<int>(num_or(jo, "n_starts", 16.0));
        cfg.opt_options.max_iter = static_cast<int>(num_or(jo, "max_iter", 300.0));
        cfg.opt_options.seed = cfg.seed;
        if (jo.contains("eval_sweep"))
            cfg.opt_sweep = parse_sweep(jo.at("eval_sweep"), "optimizer.eval_sweep");
    }

    // tolerance scenario
    if (root.contains("tolerance")) {
        const json& jt = root.at("tolerance");
        ToleranceScenario sc;
        const std::string sname = need(jt, "stack", "tolerance").get<std::string>();
        const StackEntry& se = cfg.stack(sname);
        sc.stack = se.stack;
        sc.mode = se.mode;
        sc.sigma_h_nm = num(jt, "sigma_h_nm", "tolerance");
        const std::string dist = jt.value("distribution", "normal");
        if (dist == "normal")
            sc.distribution = ToleranceScenario::Distribution::normal;
        else if (dist == "uniform")
            sc.distribution = ToleranceScenario::Distribution::uniform;
        else
            cfg_fail("tolerance.distribution must be 'normal' or 'uniform'");
        sc.n_trials = static_cast<int>(num(jt, "n_trials", "tolerance"));
        sc.seed = cfg.seed;
        sc.correlated = jt.value("correlated", true);
        sc.exact_shift = jt.value("exact_shift", true);
        validate(sc);
        cfg.tol_scenario = sc;
        cfg.tol_apply_to_filter = jt.value("apply_to_filter", false);
        if (jt.contains("thresholds")) {
            const json& th = jt.at("thresholds");
            cfg.tol_thresholds.il_max_db = num_or(th, "il_max_db", 3.0);
            cfg.tol_thresholds.fbw_rel_tol_pct = num_or(th, "fbw_rel_tol_pct", 20.0);
        }
        if (cfg.tol_apply_to_filter)
            cfg.tolerance_design(); // resolve now so broken refs fail at load
    }

    return cfg;
}

} // namespace

DesignConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(errc::io, "cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace xfl
