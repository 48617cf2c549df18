/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end. Talks to the toolkit exclusively through the
// public C API in xfl/xfl.h.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xfl/xfl.h"

namespace {

std::string fmt(double v, int precision = 10) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

int die(const char* what) {
    std::fprintf(stderr, "xfl: %s: %s\n", what, xfl_last_error());
    return 1;
}

#define CHECK(call)                                                                              \
    do {                                                                                         \
        if ((call) != XFL_OK)                                                                    \
            return die(#call);                                                                   \
    } while (0)

struct ConfigHandle {
    xfl_config* cfg = nullptr;
    ~ConfigHandle() { xfl_config_free(cfg); }
};

int load_config(const std::string& path, ConfigHandle& h) {
    if (xfl_config_load(path.c_str(), &h.cfg) != XFL_OK)
        return die("config load");
    size_t n = 0;
    xfl_config_warning_count(h.cfg, &n);
    for (size_t i = 0; i < n; ++i) {
        const char* msg = nullptr;
        if (xfl_config_warning(h.cfg, i, &msg) == XFL_OK)
            std::fprintf(stderr, "xfl: note: %s\n", msg);
    }
    return 0;
}

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

uint64_t pick_seed(const xfl_config* cfg, long long seed_flag) {
    if (seed_flag >= 0)
        return static_cast<uint64_t>(seed_flag);
    uint64_t s = 1;
    if (cfg != nullptr)
        xfl_config_seed(cfg, &s);
    return s;
}

int cmd_stack(const std::string& config, const std::string& out, double delta_f, int max_order) {
    ConfigHandle h;
    if (int rc = load_config(config, h))
        return rc;

    if (delta_f <= 0.0)
        xfl_config_delta_f(h.cfg, &delta_f); // fall back to the template detuning

    size_t n_stacks = 0;
    CHECK(xfl_config_stack_count(h.cfg, &n_stacks));
    std::printf("stack            h_nm      order  lambda_um  f_ghz      dfdh_ghz_per_nm\n");
    for (size_t i = 0; i < n_stacks; ++i) {
        const char* name = nullptr;
        CHECK(xfl_config_stack_name(h.cfg, i, &name));
        xfl_stack* st = nullptr;
        CHECK(xfl_config_stack_open(h.cfg, name, &st));
        std::unique_ptr<xfl_stack, decltype(&xfl_stack_free)> guard(st, &xfl_stack_free);
        double hnm = 0, f = 0, dfdh = 0, lambda = 0;
        int order = 0;
        CHECK(xfl_stack_total_thickness(st, &hnm));
        CHECK(xfl_stack_mode(st, &order, &lambda));
        CHECK(xfl_stack_mode_frequency(st, &f));
        CHECK(xfl_stack_sensitivity(st, &dfdh));
        std::printf("%-16s %-9s %-6d %-10s %-10s %s\n", name, fmt(hnm, 6).c_str(), order,
                    fmt(lambda, 6).c_str(), fmt(f, 6).c_str(), fmt(dfdh, 6).c_str());
    }

    if (delta_f > 0.0) {
        std::printf("\ntrim planning for delta_f = %s GHz (electrode offset 0):\n",
                    fmt(delta_f, 6).c_str());
        for (size_t i = 0; i < n_stacks; ++i) {
            const char* name = nullptr;
            CHECK(xfl_config_stack_name(h.cfg, i, &name));
            xfl_stack* st = nullptr;
            CHECK(xfl_config_stack_open(h.cfg, name, &st));
            std::unique_ptr<xfl_stack, decltype(&xfl_stack_free)> guard(st, &xfl_stack_free);
            double trim = 0;
            CHECK(xfl_stack_trim_depth(st, delta_f, 0.0, &trim));
            std::printf("  %-16s %s nm\n", name, fmt(trim, 6).c_str());
        }
    }

    std::printf("\ncoupled overtone orders (strong) up to %d:\n", max_order);
    for (size_t i = 0; i < n_stacks; ++i) {
        const char* name = nullptr;
        CHECK(xfl_config_stack_name(h.cfg, i, &name));
        xfl_stack* st = nullptr;
        CHECK(xfl_config_stack_open(h.cfg, name, &st));
        std::unique_ptr<xfl_stack, decltype(&xfl_stack_free)> guard(st, &xfl_stack_free);
        std::vector<int> orders(static_cast<size_t>(max_order));
        std::vector<int> classes(static_cast<size_t>(max_order));
        size_t count = 0;
        CHECK(xfl_stack_coupled_orders(st, max_order, orders.data(), classes.data(),
                                       orders.size(), &count));
        std::printf("  %-16s", name);
        for (size_t k = 0; k < count && k < orders.size(); ++k)
            if (classes[k] == XFL_COUPLING_STRONG)
                std::printf(" %d", orders[k]);
        std::printf("\n");
    }

    if (!out.empty())
        CHECK(xfl_dispersion_write_csv(h.cfg, out_path(out, "dispersion.csv").c_str()));
    return 0;
}

int cmd_resonator(const std::string& config, const std::string& out) {
    ConfigHandle h;
    if (int rc = load_config(config, h))
        return rc;

    double f0 = 0, f1 = 0;
    int n = 0;
    CHECK(xfl_config_sweep(h.cfg, &f0, &f1, &n));

    size_t n_res = 0;
    CHECK(xfl_config_resonator_count(h.cfg, &n_res));
    for (size_t i = 0; i < n_res; ++i) {
        const char* name = nullptr;
        CHECK(xfl_config_resonator_name(h.cfg, i, &name));
        xfl_mbvd* m = nullptr;
        CHECK(xfl_config_resonator_open(h.cfg, name, &m));
        std::unique_ptr<xfl_mbvd, decltype(&xfl_mbvd_free)> guard(m, &xfl_mbvd_free);

        double rs = 0, r0 = 0, c0 = 0, fs = 0, fp = 0;
        CHECK(xfl_mbvd_statics(m, &rs, &r0, &c0));
        CHECK(xfl_mbvd_resonances(m, &fs, &fp));
        std::printf("%s: c0 = %s fF, fs = %s GHz, fp = %s GHz\n", name, fmt(c0, 6).c_str(),
                    fmt(fs, 8).c_str(), fmt(fp, 8).c_str());
        size_t nb = 0;
        CHECK(xfl_mbvd_branch_count(m, &nb));
        for (size_t b = 0; b < nb; ++b) {
            double rm = 0, lm = 0, cm = 0;
            CHECK(xfl_mbvd_branch(m, b, &rm, &lm, &cm));
            std::printf("  branch %zu: Rm = %s ohm, Lm = %s nH, Cm = %s fF\n", b,
                        fmt(rm, 6).c_str(), fmt(lm, 6).c_str(), fmt(cm, 6).c_str());
        }

        if (!out.empty()) {
            xfl_admittance* adm = nullptr;
            CHECK(xfl_mbvd_sweep(m, f0, f1, n, &adm));
            std::unique_ptr<xfl_admittance, decltype(&xfl_admittance_free)> aguard(
                adm, &xfl_admittance_free);
            const std::string base = name;
            CHECK(xfl_admittance_write_s1p(adm, out_path(out, base + ".s1p").c_str(), 50.0));
            CHECK(xfl_admittance_write_csv(adm, out_path(out, base + ".csv").c_str()));
        }
    }
    return 0;
}

int print_metrics(const xfl_metrics* m) {
    double fc = 0, il = 0, fbw = 0, oob = 0, oobx = 0, lo = 0, hi = 0;
    CHECK(xfl_metrics_values(m, &fc, &il, &fbw, &oob, &oobx, &lo, &hi));
    std::printf("f_center = %s GHz, IL = %s dB, FBW = %s %%\n", fmt(fc, 8).c_str(),
                fmt(il, 6).c_str(), fmt(fbw, 6).c_str());
    std::printf("band = [%s, %s] GHz, OoB = %s dB, OoB excl. spurs = %s dB\n",
                fmt(lo, 8).c_str(), fmt(hi, 8).c_str(), fmt(oob, 6).c_str(),
                fmt(oobx, 6).c_str());
    return 0;
}

int extract_with_config_windows(const xfl_config* cfg, const xfl_sweep* sweep,
                                xfl_metrics** m) {
    size_t n_windows = 0;
    CHECK(xfl_config_spur_windows(cfg, nullptr, 0, &n_windows));
    std::vector<double> windows(2 * n_windows + 2);
    CHECK(xfl_config_spur_windows(cfg, windows.data(), n_windows, &n_windows));
    CHECK(xfl_metrics_extract(sweep, windows.data(), n_windows, m));
    return 0;
}

int cmd_filter(const std::string& config, const std::string& out) {
    ConfigHandle h;
    if (int rc = load_config(config, h))
        return rc;

    xfl_sweep* sweep = nullptr;
    CHECK(xfl_filter_simulate(h.cfg, &sweep));
    std::unique_ptr<xfl_sweep, decltype(&xfl_sweep_free)> sguard(sweep, &xfl_sweep_free);

    xfl_metrics* m = nullptr;
    if (int rc = extract_with_config_windows(h.cfg, sweep, &m))
        return rc;
    std::unique_ptr<xfl_metrics, decltype(&xfl_metrics_free)> mguard(m, &xfl_metrics_free);
    if (int rc = print_metrics(m))
        return rc;

    if (!out.empty()) {
        CHECK(xfl_sweep_write_s2p(sweep, out_path(out, "filter.s2p").c_str(), 50.0));
        CHECK(xfl_sweep_write_csv(sweep, out_path(out, "filter.csv").c_str()));
        CHECK(xfl_metrics_write_json(m, out_path(out, "metrics.json").c_str()));
    }
    return 0;
}

int cmd_fit(const std::string& input, int spurs, long long seed_flag, double fmin, double fmax,
            const std::string& out) {
    xfl_admittance* adm = nullptr;
    if (xfl_admittance_load(input.c_str(), &adm) != XFL_OK)
        return die("admittance load");
    std::unique_ptr<xfl_admittance, decltype(&xfl_admittance_free)> aguard(adm,
                                                                           &xfl_admittance_free);

    const uint64_t seed = seed_flag >= 0 ? static_cast<uint64_t>(seed_flag) : 1;
    xfl_fit_result* fr = nullptr;
    if (xfl_fit_run(adm, spurs, seed, fmin, fmax, &fr) != XFL_OK)
        return die("fit");
    std::unique_ptr<xfl_fit_result, decltype(&xfl_fit_free)> fguard(fr, &xfl_fit_free);

    double fs = 0, k2 = 0, q = 0, c0 = 0, residual = 0;
    int converged = 0;
    CHECK(xfl_fit_values(fr, &fs, &k2, &q, &c0, &residual, &converged));
    std::printf("fs = %s GHz, k2 = %s %%, Q = %s, C0 = %s fF\n", fmt(fs, 8).c_str(),
                fmt(100.0 * k2, 6).c_str(), fmt(q, 6).c_str(), fmt(c0, 6).c_str());
    std::printf("residual = %s (%s)\n", fmt(residual, 6).c_str(),
                converged ? "converged" : "not converged");

    if (!out.empty())
        CHECK(xfl_fit_write_json(fr, out_path(out, "fit.json").c_str()));
    return 0;
}

int cmd_optimize(const std::string& config, long long seed_flag, const std::string& out) {
    ConfigHandle h;
    if (int rc = load_config(config, h))
        return rc;

    xfl_opt_result* r = nullptr;
    if (xfl_optimize_run(h.cfg, pick_seed(h.cfg, seed_flag), &r) != XFL_OK)
        return die("optimize");
    std::unique_ptr<xfl_opt_result, decltype(&xfl_opt_free)> rguard(r, &xfl_opt_free);

    double cost = 0, delta_f = 0;
    int start = 0;
    CHECK(xfl_opt_values(r, &cost, &delta_f, &start));
    std::printf("best cost = %s (start %d), delta_f = %s GHz\n", fmt(cost, 8).c_str(), start,
                fmt(delta_f, 6).c_str());

    xfl_metrics* m = nullptr;
    CHECK(xfl_opt_metrics(r, &m));
    std::unique_ptr<xfl_metrics, decltype(&xfl_metrics_free)> mguard(m, &xfl_metrics_free);
    if (int rc = print_metrics(m))
        return rc;

    if (!out.empty()) {
        CHECK(xfl_opt_write_json(r, out_path(out, "optimize.json").c_str()));
        xfl_sweep* sweep = nullptr;
        CHECK(xfl_opt_sweep(r, &sweep));
        std::unique_ptr<xfl_sweep, decltype(&xfl_sweep_free)> sguard(sweep, &xfl_sweep_free);
        CHECK(xfl_sweep_write_s2p(sweep, out_path(out, "optimized.s2p").c_str(), 50.0));
        CHECK(xfl_metrics_write_json(m, out_path(out, "optimized_metrics.json").c_str()));
    }
    return 0;
}

int cmd_tolerance(const std::string& config, long long seed_flag, bool stack_only,
                  const std::string& out) {
    ConfigHandle h;
    if (int rc = load_config(config, h))
        return rc;

    xfl_tol_report* r = nullptr;
    if (xfl_tolerance_run(h.cfg, pick_seed(h.cfg, seed_flag), stack_only ? 0 : -1, &r) != XFL_OK)
        return die("tolerance");
    std::unique_ptr<xfl_tol_report, decltype(&xfl_tol_free)> rguard(r, &xfl_tol_free);

    double mean = 0, stddev = 0, p5 = 0, p95 = 0, pass = 0;
    CHECK(xfl_tol_values(r, &mean, &stddev, &p5, &p95, &pass));
    std::printf("fs shift: mean = %s GHz, std = %s GHz, p5 = %s, p95 = %s\n",
                fmt(mean, 6).c_str(), fmt(stddev, 6).c_str(), fmt(p5, 6).c_str(),
                fmt(p95, 6).c_str());
    std::printf("pass rate = %s\n", fmt(pass, 6).c_str());

    if (!out.empty()) {
        CHECK(xfl_tol_write_json(r, out_path(out, "tolerance.json").c_str()));
        CHECK(xfl_tol_write_csv(r, out_path(out, "trials.csv").c_str()));
    }
    return 0;
}

int cmd_report(const std::string& config, const std::string& from_s2p, const std::string& out) {
    ConfigHandle h;
    if (int rc = load_config(config, h))
        return rc;

    xfl_sweep* sweep = nullptr;
    if (!from_s2p.empty()) {
        if (xfl_sweep_load_s2p(from_s2p.c_str(), &sweep) != XFL_OK)
            return die("s2p load");
    } else {
        CHECK(xfl_filter_simulate(h.cfg, &sweep));
    }
    std::unique_ptr<xfl_sweep, decltype(&xfl_sweep_free)> sguard(sweep, &xfl_sweep_free);

    xfl_metrics* m = nullptr;
    if (int rc = extract_with_config_windows(h.cfg, sweep, &m))
        return rc;
    std::unique_ptr<xfl_metrics, decltype(&xfl_metrics_free)> mguard(m, &xfl_metrics_free);
    if (int rc = print_metrics(m))
        return rc;

    if (!out.empty())
        CHECK(xfl_report_write_json(m, out_path(out, "report.json").c_str()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"xfl: mmWave acoustic filter design toolkit"};
    app.require_subcommand(1);

    std::string config, out, input, from_s2p;
    long long seed = -1;
    double delta_f = 0.0, fmin = 0.0, fmax = 0.0;
    int spurs = 0, max_order = 20;
    bool stack_only = false;

    auto* stack = app.add_subcommand("stack", "Dispersion curves and trim planning");
    stack->add_option("--config", config, "Design config JSON")->required();
    stack->add_option("--out", out, "Output directory");
    stack->add_option("--delta-f", delta_f, "Trim target in GHz (default: template detuning)");
    stack->add_option("--max-order", max_order, "Highest overtone order to classify");

    auto* resonator = app.add_subcommand("resonator", "Synthesize resonators and sweep them");
    resonator->add_option("--config", config, "Design config JSON")->required();
    resonator->add_option("--out", out, "Output directory");

    auto* filter = app.add_subcommand("filter", "Simulate the ladder filter");
    filter->add_option("--config", config, "Design config JSON")->required();
    filter->add_option("--out", out, "Output directory");

    auto* fit = app.add_subcommand("fit", "Extract mBVD parameters from one-port data");
    fit->add_option("--input", input, "Input .s1p or admittance CSV")->required();
    fit->add_option("--spurs", spurs, "Number of spur branches to fit");
    fit->add_option("--seed", seed, "Random seed");
    fit->add_option("--fmin", fmin, "Fit window lower edge, GHz");
    fit->add_option("--fmax", fmax, "Fit window upper edge, GHz");
    fit->add_option("--out", out, "Output directory");

    auto* optimize = app.add_subcommand("optimize", "Minimize IL over C0 and detuning");
    optimize->add_option("--config", config, "Design config JSON")->required();
    optimize->add_option("--seed", seed, "Random seed (default: config seed)");
    optimize->add_option("--out", out, "Output directory");

    auto* tolerance = app.add_subcommand("tolerance", "Thickness-tolerance Monte Carlo");
    tolerance->add_option("--config", config, "Design config JSON")->required();
    tolerance->add_option("--seed", seed, "Random seed (default: config seed)");
    tolerance->add_flag("--stack-only", stack_only, "Skip the filter propagation");
    tolerance->add_option("--out", out, "Output directory");

    auto* report = app.add_subcommand("report", "Metrics plus published-filter comparison");
    report->add_option("--config", config, "Design config JSON")->required();
    report->add_option("--from-s2p", from_s2p, "Use an existing two-port sweep");
    report->add_option("--out", out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems exit 2, --help exits 0
    }

    if (stack->parsed())
        return cmd_stack(config, out, delta_f, max_order);
    if (resonator->parsed())
        return cmd_resonator(config, out);
    if (filter->parsed())
        return cmd_filter(config, out);
    if (fit->parsed())
        return cmd_fit(input, spurs, seed, fmin, fmax, out);
    if (optimize->parsed())
        return cmd_optimize(config, seed, out);
    if (tolerance->parsed())
        return cmd_tolerance(config, seed, stack_only, out);
    if (report->parsed())
        return cmd_report(config, from_s2p, out);
    return 2;
}
