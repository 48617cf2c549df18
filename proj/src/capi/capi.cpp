/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "xfl/xfl.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/fit.hpp"
#include "core/metrics.hpp"
#include "core/optimize.hpp"
#include "core/report.hpp"
#include "core/tolerance.hpp"
#include "core/touchstone.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(xfl::errc c) {
    switch (c) {
    case xfl::errc::invalid_argument:
        return XFL_ERR_INVALID_ARGUMENT;
    case xfl::errc::infeasible:
        return XFL_ERR_INFEASIBLE;
    case xfl::errc::parse:
        return XFL_ERR_PARSE;
    case xfl::errc::io:
        return XFL_ERR_IO;
    case xfl::errc::numeric:
        return XFL_ERR_NUMERIC;
    case xfl::errc::unsupported:
        return XFL_ERR_UNSUPPORTED;
    }
    return XFL_ERR_INTERNAL;
}

int fail_invalid(const char* msg) {
    g_last_error = msg;
    return XFL_ERR_INVALID_ARGUMENT;
}

// Runs fn, translating exceptions into error codes + last-error text.
template <typename Fn> int guarded(Fn&& fn) {
    try {
        fn();
        return XFL_OK;
    } catch (const xfl::Error& e) {
        g_last_error = e.what();
        return code_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return XFL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return XFL_ERR_INTERNAL;
    }
}

void put(double* dst, double v) {
    if (dst != nullptr)
        *dst = v;
}

} // namespace

struct xfl_config {
    xfl::DesignConfig cfg;
};
struct xfl_stack {
    xfl::LayerStack stack;
    xfl::ModeSpec mode;
};
struct xfl_mbvd {
    xfl::MbvdParams params;
};
struct xfl_admittance {
    xfl::AdmittanceRecord rec;
};
struct xfl_sweep {
    xfl::SweepResult sweep;
};
struct xfl_metrics {
    xfl::FilterMetrics metrics;
};
struct xfl_fit_result {
    xfl::FitResult result;
};
struct xfl_opt_result {
    xfl::OptimizeResult result;
    std::vector<std::string> resonator_names;
};
struct xfl_tol_report {
    xfl::ToleranceReport report;
};

extern "C" {

const char* xfl_version(void) { return "0.1.0"; }

const char* xfl_last_error(void) { return g_last_error.c_str(); }

/* ---------- configuration ---------- */

int xfl_config_load(const char* path, xfl_config** out) {
    if (path == nullptr || out == nullptr)
        return fail_invalid("xfl_config_load: null argument");
    return guarded([&] { *out = new xfl_config{xfl::load_config(path)}; });
}

int xfl_config_parse(const char* json_text, xfl_config** out) {
    if (json_text == nullptr || out == nullptr)
        return fail_invalid("xfl_config_parse: null argument");
    return guarded([&] { *out = new xfl_config{xfl::parse_config(json_text)}; });
}

void xfl_config_free(xfl_config* cfg) { delete cfg; }

int xfl_config_seed(const xfl_config* cfg, uint64_t* out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_config_seed: null argument");
    *out = cfg->cfg.seed;
    return XFL_OK;
}

int xfl_config_velocity(const xfl_config* cfg, double* v_thickness, double* v_lateral) {
    if (cfg == nullptr)
        return fail_invalid("xfl_config_velocity: null argument");
    return guarded([&] {
        if (!cfg->cfg.calibrated)
            throw xfl::Error(xfl::errc::invalid_argument,
                             "config has no velocity calibration points");
        put(v_thickness, cfg->cfg.calibrated->v_thickness);
        put(v_lateral, cfg->cfg.calibrated->v_lateral);
    });
}

int xfl_config_warning_count(const xfl_config* cfg, size_t* n_out) {
    if (cfg == nullptr || n_out == nullptr)
        return fail_invalid("xfl_config_warning_count: null argument");
    *n_out = cfg->cfg.warnings.size();
    return XFL_OK;
}

int xfl_config_warning(const xfl_config* cfg, size_t index, const char** out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_config_warning: null argument");
    if (index >= cfg->cfg.warnings.size())
        return fail_invalid("xfl_config_warning: index out of range");
    *out = cfg->cfg.warnings[index].c_str();
    return XFL_OK;
}

int xfl_config_stack_count(const xfl_config* cfg, size_t* n_out) {
    if (cfg == nullptr || n_out == nullptr)
        return fail_invalid("xfl_config_stack_count: null argument");
    *n_out = cfg->cfg.stacks.size();
    return XFL_OK;
}

int xfl_config_stack_name(const xfl_config* cfg, size_t index, const char** out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_config_stack_name: null argument");
    if (index >= cfg->cfg.stacks.size())
        return fail_invalid("xfl_config_stack_name: index out of range");
    *out = cfg->cfg.stacks[index].name.c_str();
    return XFL_OK;
}

int xfl_config_stack_open(const xfl_config* cfg, const char* name, xfl_stack** out) {
    if (cfg == nullptr || name == nullptr || out == nullptr)
        return fail_invalid("xfl_config_stack_open: null argument");
    return guarded([&] {
        const auto& e = cfg->cfg.stack(name);
        *out = new xfl_stack{e.stack, e.mode};
    });
}

int xfl_config_resonator_count(const xfl_config* cfg, size_t* n_out) {
    if (cfg == nullptr || n_out == nullptr)
        return fail_invalid("xfl_config_resonator_count: null argument");
    *n_out = cfg->cfg.resonators.size();
    return XFL_OK;
}

int xfl_config_resonator_name(const xfl_config* cfg, size_t index, const char** out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_config_resonator_name: null argument");
    if (index >= cfg->cfg.resonators.size())
        return fail_invalid("xfl_config_resonator_name: index out of range");
    *out = cfg->cfg.resonators[index].name.c_str();
    return XFL_OK;
}

int xfl_config_resonator_spec(const xfl_config* cfg, const char* name, double* fs_ghz,
                              double* k2, double* q, double* c0_ff, size_t* n_spurs) {
    if (cfg == nullptr || name == nullptr)
        return fail_invalid("xfl_config_resonator_spec: null argument");
    return guarded([&] {
        const auto& spec = cfg->cfg.resonator(name).spec;
        put(fs_ghz, spec.fs_ghz);
        put(k2, spec.k2);
        put(q, spec.q);
        put(c0_ff, spec.c0_ff);
        if (n_spurs != nullptr)
            *n_spurs = spec.spurs.size();
    });
}

int xfl_config_resonator_open(const xfl_config* cfg, const char* name, xfl_mbvd** out) {
    if (cfg == nullptr || name == nullptr || out == nullptr)
        return fail_invalid("xfl_config_resonator_open: null argument");
    return guarded([&] {
        *out = new xfl_mbvd{xfl::synthesize_mbvd(cfg->cfg.resonator(name).spec)};
    });
}

int xfl_config_spur_windows(const xfl_config* cfg, double* buf, size_t cap, size_t* n_windows) {
    if (cfg == nullptr || n_windows == nullptr)
        return fail_invalid("xfl_config_spur_windows: null argument");
    const auto& w = cfg->cfg.spur_windows;
    *n_windows = w.size();
    if (buf != nullptr) {
        for (size_t i = 0; i < w.size() && i < cap; ++i) {
            buf[2 * i] = w[i].f_start_ghz;
            buf[2 * i + 1] = w[i].f_stop_ghz;
        }
    }
    return XFL_OK;
}

int xfl_config_sweep(const xfl_config* cfg, double* f_start_ghz, double* f_stop_ghz,
                     int* n_points) {
    if (cfg == nullptr)
        return fail_invalid("xfl_config_sweep: null argument");
    put(f_start_ghz, cfg->cfg.sweep.f_start_ghz);
    put(f_stop_ghz, cfg->cfg.sweep.f_stop_ghz);
    if (n_points != nullptr)
        *n_points = cfg->cfg.sweep.n_points;
    return XFL_OK;
}

int xfl_config_delta_f(const xfl_config* cfg, double* out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_config_delta_f: null argument");
    return guarded([&] { *out = xfl::nominal_variables(cfg->cfg.tmpl).delta_f_ghz; });
}

/* ---------- stack dispersion ---------- */

int xfl_stack_create(const double* thickness_nm, const int* orientation, size_t n_layers,
                     double v_thickness, double v_lateral, int order, double lambda_um,
                     xfl_stack** out) {
    if (thickness_nm == nullptr || out == nullptr || n_layers == 0)
        return fail_invalid("xfl_stack_create: null argument");
    return guarded([&] {
        xfl::LayerStack s;
        for (size_t i = 0; i < n_layers; ++i) {
            xfl::Layer l;
            l.thickness_nm = thickness_nm[i];
            l.orientation = orientation != nullptr ? orientation[i]
                                                   : (i % 2 == 0 ? +1 : -1);
            s.layers.push_back(l);
        }
        s.material = {v_thickness, v_lateral};
        xfl::ModeSpec mode{order, lambda_um};
        xfl::validate(s);
        xfl::validate(mode);
        *out = new xfl_stack{std::move(s), mode};
    });
}

void xfl_stack_free(xfl_stack* stack) { delete stack; }

int xfl_stack_total_thickness(const xfl_stack* stack, double* h_nm) {
    if (stack == nullptr || h_nm == nullptr)
        return fail_invalid("xfl_stack_total_thickness: null argument");
    *h_nm = stack->stack.total_thickness_nm();
    return XFL_OK;
}

int xfl_stack_mode(const xfl_stack* stack, int* order, double* lambda_um) {
    if (stack == nullptr)
        return fail_invalid("xfl_stack_mode: null argument");
    if (order != nullptr)
        *order = stack->mode.order;
    put(lambda_um, stack->mode.lateral_wavelength_um);
    return XFL_OK;
}

int xfl_stack_mode_frequency(const xfl_stack* stack, double* f_ghz) {
    if (stack == nullptr || f_ghz == nullptr)
        return fail_invalid("xfl_stack_mode_frequency: null argument");
    return guarded([&] { *f_ghz = xfl::mode_frequency_ghz(stack->stack, stack->mode); });
}

int xfl_stack_sensitivity(const xfl_stack* stack, double* dfdh_ghz_per_nm) {
    if (stack == nullptr || dfdh_ghz_per_nm == nullptr)
        return fail_invalid("xfl_stack_sensitivity: null argument");
    return guarded(
        [&] { *dfdh_ghz_per_nm = xfl::frequency_sensitivity(stack->stack, stack->mode); });
}

int xfl_stack_trim_depth(const xfl_stack* stack, double delta_f_ghz, double electrode_offset_nm,
                         double* trim_nm) {
    if (stack == nullptr || trim_nm == nullptr)
        return fail_invalid("xfl_stack_trim_depth: null argument");
    return guarded([&] {
        *trim_nm = xfl::trim_depth_for_offset_nm(stack->stack, stack->mode, delta_f_ghz,
                                                 electrode_offset_nm);
    });
}

int xfl_stack_coupled_orders(const xfl_stack* stack, int max_order, int* orders, int* classes,
                             size_t cap, size_t* n_out) {
    if (stack == nullptr || n_out == nullptr)
        return fail_invalid("xfl_stack_coupled_orders: null argument");
    return guarded([&] {
        const auto list = xfl::coupled_overtone_orders(stack->stack, max_order);
        *n_out = list.size();
        for (size_t i = 0; i < list.size() && i < cap; ++i) {
            if (orders != nullptr)
                orders[i] = list[i].first;
            if (classes != nullptr) {
                switch (list[i].second) {
                case xfl::CouplingClass::strong:
                    classes[i] = XFL_COUPLING_STRONG;
                    break;
                case xfl::CouplingClass::partially_unsuppressed:
                    classes[i] = XFL_COUPLING_PARTIAL;
                    break;
                case xfl::CouplingClass::weak:
                    classes[i] = XFL_COUPLING_WEAK;
                    break;
                }
            }
        }
    });
}

int xfl_mode_frequency(double h_nm, int order, double lambda_um, double v_thickness,
                       double v_lateral, double* f_ghz) {
    if (f_ghz == nullptr)
        return fail_invalid("xfl_mode_frequency: null argument");
    return guarded([&] {
        *f_ghz = xfl::mode_frequency_ghz(h_nm, {order, lambda_um}, {v_thickness, v_lateral});
    });
}

int xfl_thickness_for_frequency(double f_ghz, int order, double lambda_um, double v_thickness,
                                double v_lateral, double* h_nm) {
    if (h_nm == nullptr)
        return fail_invalid("xfl_thickness_for_frequency: null argument");
    return guarded([&] {
        *h_nm = xfl::thickness_for_frequency_nm(f_ghz, {order, lambda_um},
                                                {v_thickness, v_lateral});
    });
}

int xfl_calibrate_vh(const double* h_nm, const int* orders, const double* lambda_um,
                     const double* f_ghz, size_t n_points, double v_lateral,
                     double* v_thickness) {
    if (h_nm == nullptr || orders == nullptr || lambda_um == nullptr || f_ghz == nullptr ||
        v_thickness == nullptr)
        return fail_invalid("xfl_calibrate_vh: null argument");
    return guarded([&] {
        std::vector<xfl::CalibrationPoint> pts;
        for (size_t i = 0; i < n_points; ++i)
            pts.push_back({h_nm[i], orders[i], lambda_um[i], f_ghz[i]});
        *v_thickness = xfl::calibrate_velocity(pts, v_lateral).constants.v_thickness;
    });
}

int xfl_dispersion_write_csv(const xfl_config* cfg, const char* path) {
    if (cfg == nullptr || path == nullptr)
        return fail_invalid("xfl_dispersion_write_csv: null argument");
    return guarded([&] {
        std::ostringstream ss;
        xfl::write_dispersion_csv(ss, cfg->cfg);
        xfl::write_file(path, ss.str());
    });
}

int xfl_stack_required_margin(const xfl_stack* stack, double delta_f_budget_ghz, double* nm) {
    if (stack == nullptr || nm == nullptr)
        return fail_invalid("xfl_stack_required_margin: null argument");
    return guarded([&] {
        *nm = xfl::required_thickness_margin_nm(stack->stack, stack->mode, delta_f_budget_ghz);
    });
}

/* ---------- mBVD resonator ---------- */

int xfl_mbvd_create(double fs_ghz, double k2, double q, double c0_ff, double rs_ohm,
                    double r0_ohm, const double* spur_fs_ghz, const double* spur_k2,
                    const double* spur_q, size_t n_spurs, xfl_mbvd** out) {
    if (out == nullptr)
        return fail_invalid("xfl_mbvd_create: null argument");
    if (n_spurs > 0 && (spur_fs_ghz == nullptr || spur_k2 == nullptr))
        return fail_invalid("xfl_mbvd_create: spur arrays missing");
    return guarded([&] {
        xfl::ResonatorSpec spec;
        spec.fs_ghz = fs_ghz;
        spec.k2 = k2;
        spec.q = q;
        spec.c0_ff = c0_ff;
        spec.rs_ohm = rs_ohm;
        spec.r0_ohm = r0_ohm;
        for (size_t i = 0; i < n_spurs; ++i)
            spec.spurs.push_back(
                {spur_fs_ghz[i], spur_k2[i], spur_q != nullptr ? spur_q[i] : q});
        *out = new xfl_mbvd{xfl::synthesize_mbvd(spec)};
    });
}

void xfl_mbvd_free(xfl_mbvd* m) { delete m; }

int xfl_mbvd_branch_count(const xfl_mbvd* m, size_t* n_out) {
    if (m == nullptr || n_out == nullptr)
        return fail_invalid("xfl_mbvd_branch_count: null argument");
    *n_out = m->params.branches.size();
    return XFL_OK;
}

int xfl_mbvd_branch(const xfl_mbvd* m, size_t index, double* rm_ohm, double* lm_nh,
                    double* cm_ff) {
    if (m == nullptr)
        return fail_invalid("xfl_mbvd_branch: null argument");
    if (index >= m->params.branches.size())
        return fail_invalid("xfl_mbvd_branch: index out of range");
    const auto& b = m->params.branches[index];
    put(rm_ohm, b.rm_ohm);
    put(lm_nh, b.lm_nh);
    put(cm_ff, b.cm_ff);
    return XFL_OK;
}

int xfl_mbvd_statics(const xfl_mbvd* m, double* rs_ohm, double* r0_ohm, double* c0_ff) {
    if (m == nullptr)
        return fail_invalid("xfl_mbvd_statics: null argument");
    put(rs_ohm, m->params.rs_ohm);
    put(r0_ohm, m->params.r0_ohm);
    put(c0_ff, m->params.c0_ff);
    return XFL_OK;
}

int xfl_mbvd_admittance(const xfl_mbvd* m, double f_ghz, double* re_s, double* im_s) {
    if (m == nullptr)
        return fail_invalid("xfl_mbvd_admittance: null argument");
    return guarded([&] {
        const xfl::cplx y = xfl::admittance(m->params, f_ghz);
        put(re_s, y.real());
        put(im_s, y.imag());
    });
}

int xfl_mbvd_resonances(const xfl_mbvd* m, double* fs_ghz, double* fp_ghz) {
    if (m == nullptr)
        return fail_invalid("xfl_mbvd_resonances: null argument");
    return guarded([&] {
        const auto pair = xfl::resonance_frequencies(m->params);
        put(fs_ghz, pair.fs_ghz);
        put(fp_ghz, pair.fp_ghz);
    });
}

int xfl_mbvd_quality_factor(const xfl_mbvd* m, double* q) {
    if (m == nullptr || q == nullptr)
        return fail_invalid("xfl_mbvd_quality_factor: null argument");
    return guarded([&] { *q = xfl::quality_factor(m->params); });
}

int xfl_mbvd_sweep(const xfl_mbvd* m, double f_start_ghz, double f_stop_ghz, int n_points,
                   xfl_admittance** out) {
    if (m == nullptr || out == nullptr)
        return fail_invalid("xfl_mbvd_sweep: null argument");
    return guarded([&] {
        xfl::SweepGrid grid{f_start_ghz, f_stop_ghz, n_points, xfl::SweepGrid::Spacing::linear};
        xfl::AdmittanceRecord rec;
        rec.f_ghz = grid.frequencies();
        rec.y_s.reserve(rec.f_ghz.size());
        for (double f : rec.f_ghz)
            rec.y_s.push_back(xfl::admittance(m->params, f));
        *out = new xfl_admittance{std::move(rec)};
    });
}

int xfl_k2_from_fs_fp(double fs_ghz, double fp_ghz, int convention, double* k2) {
    if (k2 == nullptr)
        return fail_invalid("xfl_k2_from_fs_fp: null argument");
    return guarded([&] {
        const auto conv = convention == XFL_K2_PI2_OVER_8 ? xfl::K2Convention::pi2_over_8
                                                          : xfl::K2Convention::capacitance_ratio;
        *k2 = xfl::k2_from_fs_fp(fs_ghz, fp_ghz, conv);
    });
}

/* ---------- one-port data ---------- */

void xfl_admittance_free(xfl_admittance* a) { delete a; }

int xfl_admittance_size(const xfl_admittance* a, size_t* n_out) {
    if (a == nullptr || n_out == nullptr)
        return fail_invalid("xfl_admittance_size: null argument");
    *n_out = a->rec.f_ghz.size();
    return XFL_OK;
}

int xfl_admittance_point(const xfl_admittance* a, size_t index, double* f_ghz, double* re_s,
                         double* im_s) {
    if (a == nullptr)
        return fail_invalid("xfl_admittance_point: null argument");
    if (index >= a->rec.f_ghz.size())
        return fail_invalid("xfl_admittance_point: index out of range");
    put(f_ghz, a->rec.f_ghz[index]);
    put(re_s, a->rec.y_s[index].real());
    put(im_s, a->rec.y_s[index].imag());
    return XFL_OK;
}

int xfl_admittance_load(const char* path, xfl_admittance** out) {
    if (path == nullptr || out == nullptr)
        return fail_invalid("xfl_admittance_load: null argument");
    return guarded([&] { *out = new xfl_admittance{xfl::read_admittance_file(path)}; });
}

int xfl_admittance_write_s1p(const xfl_admittance* a, const char* path, double z0_ohm) {
    if (a == nullptr || path == nullptr)
        return fail_invalid("xfl_admittance_write_s1p: null argument");
    return guarded([&] {
        std::ostringstream ss;
        xfl::write_s1p(ss, a->rec, z0_ohm);
        xfl::write_file(path, ss.str());
    });
}

int xfl_admittance_write_csv(const xfl_admittance* a, const char* path) {
    if (a == nullptr || path == nullptr)
        return fail_invalid("xfl_admittance_write_csv: null argument");
    return guarded([&] {
        std::ostringstream ss;
        xfl::write_admittance_csv(ss, a->rec);
        xfl::write_file(path, ss.str());
    });
}

/* ---------- ladder filter ---------- */

int xfl_filter_simulate(const xfl_config* cfg, xfl_sweep** out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_filter_simulate: null argument");
    return guarded([&] {
        *out = new xfl_sweep{xfl::simulate(cfg->cfg.filter_design(), cfg->cfg.sweep)};
    });
}

void xfl_sweep_free(xfl_sweep* s) { delete s; }

int xfl_sweep_size(const xfl_sweep* s, size_t* n_out) {
    if (s == nullptr || n_out == nullptr)
        return fail_invalid("xfl_sweep_size: null argument");
    *n_out = s->sweep.f_ghz.size();
    return XFL_OK;
}

int xfl_sweep_point(const xfl_sweep* s, size_t index, double* f_ghz, double s11[2],
                    double s21[2], double s12[2], double s22[2]) {
    if (s == nullptr)
        return fail_invalid("xfl_sweep_point: null argument");
    if (index >= s->sweep.f_ghz.size())
        return fail_invalid("xfl_sweep_point: index out of range");
    put(f_ghz, s->sweep.f_ghz[index]);
    auto fill = [&](double dst[2], const xfl::cplx& v) {
        if (dst != nullptr) {
            dst[0] = v.real();
            dst[1] = v.imag();
        }
    };
    fill(s11, s->sweep.s11[index]);
    fill(s21, s->sweep.s21[index]);
    fill(s12, s->sweep.s12[index]);
    fill(s22, s->sweep.s22[index]);
    return XFL_OK;
}

int xfl_sweep_write_s2p(const xfl_sweep* s, const char* path, double z0_ohm) {
    if (s == nullptr || path == nullptr)
        return fail_invalid("xfl_sweep_write_s2p: null argument");
    return guarded([&] {
        std::ostringstream ss;
        xfl::write_s2p(ss, s->sweep, z0_ohm);
        xfl::write_file(path, ss.str());
    });
}

int xfl_sweep_write_csv(const xfl_sweep* s, const char* path) {
    if (s == nullptr || path == nullptr)
        return fail_invalid("xfl_sweep_write_csv: null argument");
    return guarded([&] {
        std::ostringstream ss;
        xfl::write_sweep_csv(ss, s->sweep);
        xfl::write_file(path, ss.str());
    });
}

int xfl_sweep_load_s2p(const char* path, xfl_sweep** out) {
    if (path == nullptr || out == nullptr)
        return fail_invalid("xfl_sweep_load_s2p: null argument");
    return guarded([&] {
        std::ifstream in(path);
        if (!in)
            throw xfl::Error(xfl::errc::io, std::string("cannot open '") + path + "'");
        *out = new xfl_sweep{xfl::to_sweep(xfl::parse_touchstone(in, 2))};
    });
}

/* ---------- response metrics ---------- */

int xfl_metrics_extract(const xfl_sweep* s, const double* windows, size_t n_windows,
                        xfl_metrics** out) {
    if (s == nullptr || out == nullptr)
        return fail_invalid("xfl_metrics_extract: null argument");
    if (n_windows > 0 && windows == nullptr)
        return fail_invalid("xfl_metrics_extract: window array missing");
    return guarded([&] {
        std::vector<xfl::SpurWindow> w;
        for (size_t i = 0; i < n_windows; ++i)
            w.push_back({windows[2 * i], windows[2 * i + 1]});
        *out = new xfl_metrics{xfl::extract_metrics(s->sweep, w)};
    });
}

void xfl_metrics_free(xfl_metrics* m) { delete m; }

int xfl_metrics_values(const xfl_metrics* m, double* f_center_ghz, double* il_db,
                       double* fbw_pct, double* oob_db, double* oob_excl_db, double* f_lo_ghz,
                       double* f_hi_ghz) {
    if (m == nullptr)
        return fail_invalid("xfl_metrics_values: null argument");
    put(f_center_ghz, m->metrics.f_center_ghz);
    put(il_db, m->metrics.il_db);
    put(fbw_pct, m->metrics.fbw_3db_pct);
    put(oob_db, m->metrics.oob_db);
    put(oob_excl_db, m->metrics.oob_excl_spurs_db);
    put(f_lo_ghz, m->metrics.f_lo_ghz);
    put(f_hi_ghz, m->metrics.f_hi_ghz);
    return XFL_OK;
}

int xfl_metrics_write_json(const xfl_metrics* m, const char* path) {
    if (m == nullptr || path == nullptr)
        return fail_invalid("xfl_metrics_write_json: null argument");
    return guarded([&] { xfl::write_file(path, xfl::metrics_json(m->metrics)); });
}

int xfl_report_write_json(const xfl_metrics* m, const char* path) {
    if (m == nullptr || path == nullptr)
        return fail_invalid("xfl_report_write_json: null argument");
    return guarded([&] { xfl::write_file(path, xfl::soa_report_json(m->metrics)); });
}

/* ---------- mBVD parameter extraction ---------- */

int xfl_fit_run(const xfl_admittance* a, int n_spurs, uint64_t seed, double f_min_ghz,
                double f_max_ghz, xfl_fit_result** out) {
    if (a == nullptr || out == nullptr)
        return fail_invalid("xfl_fit_run: null argument");
    return guarded([&] {
        xfl::FitOptions options;
        options.seed = seed;
        if (f_min_ghz != 0.0 || f_max_ghz != 0.0)
            options.window_ghz = {f_min_ghz, f_max_ghz};
        const xfl::ResonatorSpec init = xfl::initial_guess(a->rec, n_spurs);
        *out = new xfl_fit_result{xfl::fit_mbvd(a->rec, init, options)};
    });
}

void xfl_fit_free(xfl_fit_result* r) { delete r; }

int xfl_fit_values(const xfl_fit_result* r, double* fs_ghz, double* k2, double* q, double* c0_ff,
                   double* residual, int* converged) {
    if (r == nullptr)
        return fail_invalid("xfl_fit_values: null argument");
    put(fs_ghz, r->result.spec.fs_ghz);
    put(k2, r->result.spec.k2);
    put(q, r->result.spec.q);
    put(c0_ff, r->result.spec.c0_ff);
    put(residual, r->result.residual);
    if (converged != nullptr)
        *converged = r->result.converged ? 1 : 0;
    return XFL_OK;
}

int xfl_fit_mbvd(const xfl_fit_result* r, xfl_mbvd** out) {
    if (r == nullptr || out == nullptr)
        return fail_invalid("xfl_fit_mbvd: null argument");
    *out = new xfl_mbvd{r->result.params};
    return XFL_OK;
}

int xfl_fit_write_json(const xfl_fit_result* r, const char* path) {
    if (r == nullptr || path == nullptr)
        return fail_invalid("xfl_fit_write_json: null argument");
    return guarded([&] { xfl::write_file(path, xfl::fit_json(r->result)); });
}

/* ---------- design optimization ---------- */

int xfl_optimize_run(const xfl_config* cfg, uint64_t seed, xfl_opt_result** out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_optimize_run: null argument");
    return guarded([&] {
        xfl::OptimizeOptions options = cfg->cfg.opt_options;
        options.seed = seed;
        auto res = xfl::optimize(cfg->cfg.tmpl, cfg->cfg.opt_bounds, cfg->cfg.opt_sweep,
                                 cfg->cfg.objective, options);
        *out = new xfl_opt_result{std::move(res), cfg->cfg.tmpl_resonator_names};
    });
}

void xfl_opt_free(xfl_opt_result* r) { delete r; }

int xfl_opt_values(const xfl_opt_result* r, double* best_cost, double* delta_f_ghz,
                   int* best_start) {
    if (r == nullptr)
        return fail_invalid("xfl_opt_values: null argument");
    put(best_cost, r->result.best_cost);
    put(delta_f_ghz, r->result.best.delta_f_ghz);
    if (best_start != nullptr)
        *best_start = r->result.best_start;
    return XFL_OK;
}

int xfl_opt_sweep(const xfl_opt_result* r, xfl_sweep** out) {
    if (r == nullptr || out == nullptr)
        return fail_invalid("xfl_opt_sweep: null argument");
    *out = new xfl_sweep{r->result.best_sweep};
    return XFL_OK;
}

int xfl_opt_metrics(const xfl_opt_result* r, xfl_metrics** out) {
    if (r == nullptr || out == nullptr)
        return fail_invalid("xfl_opt_metrics: null argument");
    *out = new xfl_metrics{r->result.best_metrics};
    return XFL_OK;
}

int xfl_opt_write_json(const xfl_opt_result* r, const char* path) {
    if (r == nullptr || path == nullptr)
        return fail_invalid("xfl_opt_write_json: null argument");
    return guarded(
        [&] { xfl::write_file(path, xfl::optimize_json(r->result, r->resonator_names)); });
}

/* ---------- fabrication tolerance ---------- */

int xfl_tolerance_run(const xfl_config* cfg, uint64_t seed, int with_filter,
                      xfl_tol_report** out) {
    if (cfg == nullptr || out == nullptr)
        return fail_invalid("xfl_tolerance_run: null argument");
    return guarded([&] {
        if (!cfg->cfg.tol_scenario)
            throw xfl::Error(xfl::errc::invalid_argument,
                             "config has no tolerance scenario");
        xfl::ToleranceScenario scenario = *cfg->cfg.tol_scenario;
        scenario.seed = seed;
        std::optional<xfl::ToleranceDesign> design;
        const bool attach =
            with_filter < 0 ? cfg->cfg.tol_apply_to_filter : (with_filter != 0);
        if (attach) {
            xfl::DesignConfig tmp = cfg->cfg;
            tmp.tol_apply_to_filter = true;
            design = tmp.tolerance_design();
        }
        *out = new xfl_tol_report{xfl::run_tolerance(scenario, design)};
    });
}

void xfl_tol_free(xfl_tol_report* r) { delete r; }

int xfl_tol_values(const xfl_tol_report* r, double* shift_mean_ghz, double* shift_std_ghz,
                   double* shift_p5_ghz, double* shift_p95_ghz, double* pass_rate) {
    if (r == nullptr)
        return fail_invalid("xfl_tol_values: null argument");
    put(shift_mean_ghz, r->report.fs_shift_ghz.mean);
    put(shift_std_ghz, r->report.fs_shift_ghz.stddev);
    put(shift_p5_ghz, r->report.fs_shift_ghz.p5);
    put(shift_p95_ghz, r->report.fs_shift_ghz.p95);
    put(pass_rate, r->report.pass_rate);
    return XFL_OK;
}

int xfl_tol_write_json(const xfl_tol_report* r, const char* path) {
    if (r == nullptr || path == nullptr)
        return fail_invalid("xfl_tol_write_json: null argument");
    return guarded([&] { xfl::write_file(path, xfl::tolerance_json(r->report)); });
}

int xfl_tol_write_csv(const xfl_tol_report* r, const char* path) {
    if (r == nullptr || path == nullptr)
        return fail_invalid("xfl_tol_write_csv: null argument");
    return guarded([&] {
        std::ostringstream ss;
        xfl::write_tolerance_csv(ss, r->report);
        xfl::write_file(path, ss.str());
    });
}

} /* extern "C" */
