/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/numfmt.hpp"

namespace xfl {

namespace {

using ojson = nlohmann::ordered_json;

ojson finite_or_null(double v) {
    if (std::isfinite(v))
        return v;
    return nullptr;
}

ojson windows_json(const std::vector<SpurWindow>& windows) {
    ojson arr = ojson::array();
    for (const auto& w : windows)
        arr.push_back({w.f_start_ghz, w.f_stop_ghz});
    return arr;
}

ojson metrics_object(const FilterMetrics& m) {
    ojson j;
    j["f_center_ghz"] = m.f_center_ghz;
    j["il_db"] = m.il_db;
    j["fbw_3db_pct"] = m.fbw_3db_pct;
    j["oob_db"] = finite_or_null(m.oob_db);
    j["oob_excl_spurs_db"] = finite_or_null(m.oob_excl_spurs_db);
    j["band_edges_ghz"] = {m.f_lo_ghz, m.f_hi_ghz};
    j["spur_windows_ghz"] = windows_json(m.spur_windows);
    j["s11_min_inband_db"] = finite_or_null(m.s11_min_inband_db);
    return j;
}

ojson spec_object(const ResonatorSpec& s) {
    ojson j;
    j["fs_ghz"] = s.fs_ghz;
    j["k2_pct"] = 100.0 * s.k2;
    j["q"] = finite_or_null(s.q);
    j["c0_ff"] = s.c0_ff;
    if (!s.spurs.empty()) {
        ojson arr = ojson::array();
        for (const auto& sp : s.spurs) {
            ojson je;
            je["fs_ghz"] = sp.fs_ghz;
            je["k2_pct"] = 100.0 * sp.k2;
            je["q"] = finite_or_null(sp.q);
            arr.push_back(je);
        }
        j["spurs"] = arr;
    }
    return j;
}

ojson params_object(const MbvdParams& p) {
    ojson j;
    j["rs_ohm"] = p.rs_ohm;
    j["r0_ohm"] = p.r0_ohm;
    j["c0_ff"] = p.c0_ff;
    ojson arr = ojson::array();
    for (const auto& b : p.branches) {
        ojson jb;
        jb["rm_ohm"] = b.rm_ohm;
        jb["lm_nh"] = b.lm_nh;
        jb["cm_ff"] = b.cm_ff;
        arr.push_back(jb);
    }
    j["branches"] = arr;
    return j;
}

ojson stats_object(const SummaryStats& s) {
    ojson j;
    j["mean"] = s.mean;
    j["stddev"] = s.stddev;
    j["p5"] = s.p5;
    j["p95"] = s.p95;
    return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

} // namespace

std::string metrics_json(const FilterMetrics& m) { return dump(metrics_object(m)); }

std::string soa_report_json(const FilterMetrics& m) {
    ojson j;
    j["metrics"] = metrics_object(m);
    ojson table = ojson::array();
    int rank = 1;
    for (const auto& row : compare_to_soa(m)) {
        ojson jr;
        jr["rank_by_fc"] = rank++;
        jr["label"] = row.label;
        jr["f_c_ghz"] = row.f_c_ghz;
        jr["il_db"] = row.il_db;
        jr["fbw_pct"] = row.fbw_pct;
        jr["rejection_db"] = finite_or_null(row.rejection_db);
        jr["is_this_run"] = row.is_this_run;
        table.push_back(jr);
    }
    j["state_of_the_art"] = table;
    return dump(j);
}

std::string fit_json(const FitResult& r) {
    ojson j;
    j["spec"] = spec_object(r.spec);
    j["params"] = params_object(r.params);
    j["residual"] = r.residual;
    j["converged"] = r.converged;
    j["flags"] = r.flags;
    j["iterations"] = r.trace.size();
    return dump(j);
}

std::string optimize_json(const OptimizeResult& r,
                          const std::vector<std::string>& resonator_names) {
    ojson j;
    ojson vars;
    for (std::size_t i = 0; i < r.best.c0_ff.size(); ++i) {
        const std::string name =
            i < resonator_names.size() ? resonator_names[i] : "resonator_" + std::to_string(i);
        vars[name + "_c0_ff"] = r.best.c0_ff[i];
    }
    vars["delta_f_ghz"] = r.best.delta_f_ghz;
    j["best_variables"] = vars;
    j["best_cost"] = r.best_cost;
    j["best_start"] = r.best_start;
    j["metrics"] = metrics_object(r.best_metrics);
    j["cost_trace"] = r.cost_trace;
    return dump(j);
}

std::string tolerance_json(const ToleranceReport& r) {
    ojson j;
    j["nominal_f_ghz"] = r.nominal_f_ghz;
    j["fs_shift_ghz"] = stats_object(r.fs_shift_ghz);
    if (r.nominal_metrics)
        j["nominal_metrics"] = metrics_object(*r.nominal_metrics);
    if (r.il_db)
        j["il_db"] = stats_object(*r.il_db);
    if (r.fbw_pct)
        j["fbw_pct"] = stats_object(*r.fbw_pct);
    j["pass_rate"] = r.pass_rate;
    j["n_trials"] = r.trials.size();
    j["n_failed_sim"] = r.n_failed_sim;
    return dump(j);
}

void write_tolerance_csv(std::ostream& out, const ToleranceReport& r) {
    out << "trial,dh_nm,fs_series_ghz,fs_shunt_ghz,il_db,fbw_pct,pass\n";
    for (const auto& t : r.trials) {
        out << t.trial << ',' << fmt_g(t.dh_nm) << ',' << fmt_g(t.fs_series_ghz) << ','
            << fmt_g(t.fs_shunt_ghz) << ',' << fmt_g(t.il_db) << ',' << fmt_g(t.fbw_pct) << ','
            << (t.pass ? 1 : 0) << "\n";
    }
}

void write_sweep_csv(std::ostream& out, const SweepResult& s) {
    auto db = [](const cplx& v) {
        const double m = std::abs(v);
        return m > 0.0 ? 20.0 * std::log10(m) : -1e300;
    };
    out << "frequency_ghz,s11_db,s21_db,s12_db,s22_db\n";
    for (std::size_t i = 0; i < s.f_ghz.size(); ++i)
        out << fmt_g(s.f_ghz[i]) << ',' << fmt_g(db(s.s11[i])) << ',' << fmt_g(db(s.s21[i]))
            << ',' << fmt_g(db(s.s12[i])) << ',' << fmt_g(db(s.s22[i])) << "\n";
}

void write_dispersion_csv(std::ostream& out, const DesignConfig& cfg) {
    const auto& d = cfg.dispersion;
    if (d.n_points < 2 || d.orders.empty())
        throw Error(errc::invalid_argument, "dispersion section is empty");
    AcousticConstants mat;
    if (cfg.calibrated)
        mat = *cfg.calibrated;
    else if (!cfg.stacks.empty())
        mat = cfg.stacks.front().stack.material;
    else
        throw Error(errc::invalid_argument, "no material constants available for dispersion");

    double lambda_um = std::numeric_limits<double>::infinity();
    if (!cfg.stacks.empty())
        lambda_um = cfg.stacks.front().mode.lateral_wavelength_um;

    out << "thickness_nm,order,frequency_ghz\n";
    for (int order : d.orders) {
        for (int i = 0; i < d.n_points; ++i) {
            const double h =
                d.h_start_nm + (d.h_stop_nm - d.h_start_nm) * i / (d.n_points - 1);
            const double f = mode_frequency_ghz(h, {order, lambda_um}, mat);
            out << fmt_g(h) << ',' << order << ',' << fmt_g(f) << "\n";
        }
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(errc::io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw Error(errc::io, "failed writing '" + path + "'");
}

} // namespace xfl
