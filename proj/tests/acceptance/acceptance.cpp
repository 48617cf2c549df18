// Acceptance suite: drives the toolkit end to end against the bundled
// reference design and prints one PASS/FAIL line per criterion. Exits
// with the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/fit.hpp"
#include "core/metrics.hpp"
#include "core/optimize.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/stack.hpp"
#include "core/tolerance.hpp"

using namespace xfl;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& detail) {
        if (!ok) {
            pass = false;
            notes.push_back(detail);
        }
    }
    void note(const std::string& detail) { notes.push_back(detail); }
};

std::string g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- 1
void criterion_1(Criterion& c, const DesignConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult sweep = simulate(cfg.filter_design(), cfg.sweep);
    const FilterMetrics m = extract_metrics(sweep, cfg.spur_windows);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    c.check(std::abs(m.f_center_ghz - 49.3) <= 0.6,
            "f_center " + g(m.f_center_ghz) + " GHz outside 49.3 +- 0.6");
    c.check(m.il_db >= 1.0 && m.il_db <= 2.7,
            "IL " + g(m.il_db) + " dB outside [1.0, 2.7] (mBVD ladder floor at these "
            "element values is ~3.6 dB; see README notes)");
    c.check(std::abs(m.fbw_3db_pct - 3.3) <= 1.0,
            "FBW " + g(m.fbw_3db_pct) + " % outside 3.3 +- 1.0");
    c.check(m.oob_excl_spurs_db >= 10.0,
            "OoB excl. spur windows " + g(m.oob_excl_spurs_db) + " dB below 10");
    c.check(elapsed < 5.0, "runtime " + g(elapsed) + " s exceeds 5");
    c.note("f_center " + g(m.f_center_ghz) + " GHz, IL " + g(m.il_db) + " dB, FBW " +
           g(m.fbw_3db_pct) + " %, OoB " + g(m.oob_db) + " dB, OoB excl " +
           g(m.oob_excl_spurs_db) + " dB, " + g(elapsed) + " s");
}

// ---------------------------------------------------------------- 2
void criterion_2(Criterion& c, const DesignConfig& cfg) {
    const AcousticConstants cal = *cfg.calibrated;

    const double h_a3 = thickness_for_frequency_nm(50.0, {3, 8.0}, cal);
    c.check(std::abs(h_a3 - 110.0) <= 5.0,
            "A3 thickness at 50 GHz: " + g(h_a3) + " nm outside 110 +- 5");

    const double h_s12 = thickness_for_frequency_nm(47.7, {12, 8.0}, cal);
    c.check(std::abs(h_s12 - 440.0) <= 10.0,
            "S12 thickness at 47.7 GHz: " + g(h_s12) + " nm outside 440 +- 10");

    const AcousticConstants row = cfg.stack("shunt_stack").stack.material;
    LayerStack single;
    single.layers.push_back({110.0, +1});
    single.material = row;
    const double m1 = trim_depth_for_offset_nm(single, {3, 8.0}, 1.9);
    c.check(std::abs(m1 - 4.0) <= 0.5, "single-layer trim " + g(m1) + " nm not ~4");

    const double m4 = trim_depth_for_offset_nm(cfg.stack("shunt_stack").stack, {12, 8.0}, 1.9);
    c.check(m4 >= 15.0 && m4 <= 17.0, "4-layer trim " + g(m4) + " nm outside [15, 17]");
    c.note("h(A3@50) " + g(h_a3) + " nm, h(S12@47.7) " + g(h_s12) + " nm, trims " + g(m1) +
           " / " + g(m4) + " nm");
}

// ---------------------------------------------------------------- 3
void criterion_3(Criterion& c) {
    const int n = 1000;
    std::vector<double> k2_err(n), q_err(n);
    parallel_for(n, [&](std::size_t i) {
        Rng rng(mix_seed(30303, i));
        ResonatorSpec spec;
        spec.fs_ghz = rng.uniform(1.0, 100.0);
        spec.k2 = rng.uniform(0.01, 0.40);
        spec.q = rng.uniform(20.0, 500.0);
        spec.c0_ff = rng.uniform(10.0, 200.0);

        ResonatorSpec lossless = spec;
        lossless.q = std::numeric_limits<double>::infinity();
        const auto r = resonance_frequencies(synthesize_mbvd(lossless));
        const double k2 = k2_from_fs_fp(r.fs_ghz, r.fp_ghz);
        k2_err[i] = std::abs(k2 - spec.k2) / spec.k2;

        const double q = quality_factor(synthesize_mbvd(spec));
        q_err[i] = std::abs(q - spec.q) / spec.q;
    });
    double worst_k2 = 0.0, worst_q = 0.0;
    for (int i = 0; i < n; ++i) {
        worst_k2 = std::max(worst_k2, k2_err[i]);
        worst_q = std::max(worst_q, q_err[i]);
    }
    c.check(worst_k2 <= 0.005, "worst k2 recovery error " + g(100 * worst_k2) + " % > 0.5 %");
    c.check(worst_q <= 0.02, "worst Q recovery error " + g(100 * worst_q) + " % > 2 %");
    c.note("1000 specs: worst k2 err " + g(100 * worst_k2) + " %, worst Q err " +
           g(100 * worst_q) + " %");
}

// ---------------------------------------------------------------- 4
void criterion_4(Criterion& c, const DesignConfig& cfg) {
    auto run_checks = [&](const DesignTemplate& tmpl, bool lossless) {
        const FilterDesign d = instantiate(tmpl, nominal_variables(tmpl));
        const SweepResult s = simulate(d, cfg.sweep);
        double det_worst = 0.0, det_scaled_worst = 0.0;
        double passivity_worst = 0.0, energy_worst = 0.0;
        bool reciprocity = true;
        for (std::size_t i = 0; i < s.f_ghz.size(); ++i) {
            reciprocity = reciprocity && s.s12[i].real() == s.s21[i].real() &&
                          s.s12[i].imag() == s.s21[i].imag();
            passivity_worst = std::max(
                passivity_worst, std::max(std::abs(s.s11[i]), std::abs(s.s21[i])) - 1.0);
            const Abcd m = cascade(d.elements, s.f_ghz[i]);
            const double err = std::abs(m.a * m.d - m.b * m.c - 1.0);
            // |AD| + |BC| is the cancellation scale of the determinant; a
            // lossless pole landing exactly on a grid point drives element
            // admittances to ~1e13 S and the raw residual is meaningless
            const double scale = std::max(1.0, std::abs(m.a * m.d) + std::abs(m.b * m.c));
            det_scaled_worst = std::max(det_scaled_worst, err / scale);
            if (scale < 1e6)
                det_worst = std::max(det_worst, err);
            if (lossless)
                energy_worst = std::max(
                    energy_worst, std::abs(std::norm(s.s11[i]) + std::norm(s.s21[i]) - 1.0));
        }
        c.check(reciprocity, "s12 != s21 on a reciprocal ladder");
        c.check(passivity_worst <= 1e-9,
                "|S| exceeds 1 by " + g(passivity_worst) + " (tolerance 1e-9)");
        c.check(det_worst <= 1e-9, "cascade determinant off by " + g(det_worst));
        c.check(det_scaled_worst <= 1e-9,
                "scaled determinant residual " + g(det_scaled_worst));
        if (lossless)
            c.check(energy_worst <= 1e-9,
                    "lossless |S11|^2+|S21|^2 off by " + g(energy_worst));
        return std::make_pair(det_worst, energy_worst);
    };

    run_checks(cfg.tmpl, false);
    DesignTemplate lossless = cfg.tmpl;
    for (auto& r : lossless.resonators) {
        r.q = std::numeric_limits<double>::infinity();
        for (auto& sp : r.spurs)
            sp.q = std::numeric_limits<double>::infinity();
    }
    auto [det, energy] = run_checks(lossless, true);
    c.note("worst lossless determinant error " + g(det) + ", energy error " + g(energy));
}

// ---------------------------------------------------------------- 5
void criterion_5(Criterion& c) {
    struct Point {
        const char* name;
        ResonatorSpec truth;
    };
    const Point points[2] = {
        {"shunt-like (Q 22, k2 2.56%)", {47.7, 0.0256, 22.0, 80.0, {}, 0.0, 0.0}},
        {"series-like (Q 52, k2 4.12%)", {49.6, 0.0412, 52.0, 37.0, {}, 0.0, 0.0}},
    };
    for (const auto& pt : points) {
        const MbvdParams p = synthesize_mbvd(pt.truth);
        AdmittanceRecord clean;
        for (int i = 0; i < 2001; ++i) {
            const double f = 40.0 + 20.0 * i / 2000.0;
            clean.f_ghz.push_back(f);
            clean.y_s.push_back(admittance(p, f));
        }
        double worst_fs = 0.0, worst_k2 = 0.0, worst_q = 0.0, worst_c0 = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            AdmittanceRecord noisy = clean;
            Rng rng(mix_seed(50505, static_cast<std::uint64_t>(trial)));
            const double sigma = std::pow(10.0, -40.0 / 20.0); // 40 dB SNR
            for (auto& y : noisy.y_s)
                y *= 1.0 + sigma / std::sqrt(2.0) * cplx(rng.normal(), rng.normal());

            FitOptions opt;
            opt.seed = static_cast<std::uint64_t>(trial) + 1;
            const FitResult fr = fit_mbvd(noisy, initial_guess(noisy, 0), opt);
            worst_fs = std::max(worst_fs,
                                std::abs(fr.spec.fs_ghz - pt.truth.fs_ghz) / pt.truth.fs_ghz);
            worst_k2 =
                std::max(worst_k2, std::abs(fr.spec.k2 - pt.truth.k2) / pt.truth.k2);
            worst_q = std::max(worst_q, std::abs(fr.spec.q - pt.truth.q) / pt.truth.q);
            worst_c0 =
                std::max(worst_c0, std::abs(fr.spec.c0_ff - pt.truth.c0_ff) / pt.truth.c0_ff);
        }
        c.check(worst_fs <= 0.01,
                std::string(pt.name) + ": fs error " + g(100 * worst_fs) + " % > 1 %");
        c.check(worst_k2 <= 0.01,
                std::string(pt.name) + ": k2 error " + g(100 * worst_k2) + " % > 1 %");
        c.check(worst_q <= 0.05,
                std::string(pt.name) + ": Q error " + g(100 * worst_q) + " % > 5 %");
        c.check(worst_c0 <= 0.01,
                std::string(pt.name) + ": C0 error " + g(100 * worst_c0) + " % > 1 %");
        c.note(std::string(pt.name) + ": worst errors fs " + g(100 * worst_fs) + " %, k2 " +
               g(100 * worst_k2) + " %, Q " + g(100 * worst_q) + " %, C0 " +
               g(100 * worst_c0) + " %");
    }
}

// ---------------------------------------------------------------- 6
void criterion_6(Criterion& c) {
    const AcousticConstants mat{3500.0, 4000.0};
    double worst = 0.0;
    for (int ih = 0; ih < 10; ++ih) {
        const double h = 50.0 * std::pow(1000.0 / 50.0, ih / 9.0);
        for (int n = 1; n <= 10; ++n) {
            for (int il = 0; il < 10; ++il) {
                const double lambda = 1.0 * std::pow(100.0, il / 9.0);
                const ModeSpec mode{n, lambda};
                const double analytic = frequency_sensitivity(h, mode, mat);
                const double step = 0.01;
                const double fd = (mode_frequency_ghz(h + step, mode, mat) -
                                   mode_frequency_ghz(h - step, mode, mat)) /
                                  (2.0 * step);
                worst = std::max(worst, std::abs(analytic - fd) / std::abs(fd));
            }
        }
    }
    c.check(worst <= 1e-6, "analytic vs finite-difference mismatch " + g(worst));

    LayerStack single;
    single.layers.push_back({110.0, +1});
    single.material = {2.0 * 110e-9 * 50e9 / 3.0, 4000.0};
    ToleranceScenario sc;
    sc.stack = single;
    sc.mode = {3, 1e9};
    sc.sigma_h_nm = 1.0;
    sc.n_trials = 10000;
    sc.seed = 60606;
    const ToleranceReport r = run_tolerance(sc);
    const double predicted = sc.sigma_h_nm * std::abs(frequency_sensitivity(single, sc.mode));
    const double rel = std::abs(r.fs_shift_ghz.stddev - predicted) / predicted;
    c.check(rel <= 3.0 / std::sqrt(10000.0),
            "MC shift std " + g(r.fs_shift_ghz.stddev) + " vs sigma*|df/dh| " + g(predicted) +
                " off by " + g(100 * rel) + " %");
    c.note("FD worst " + g(worst) + ", MC std " + g(r.fs_shift_ghz.stddev) + " vs " +
           g(predicted) + " GHz");
}

// ---------------------------------------------------------------- 7
void criterion_7(Criterion& c, const DesignConfig& cfg) {
    // exhaustive 20^3 oracle over the configured bounds box
    const int n = 20;
    const auto& b = cfg.opt_bounds;
    auto axis = [&](std::size_t dim, int i) {
        return b.lo[dim] + (b.hi[dim] - b.lo[dim]) * i / (n - 1.0);
    };
    std::vector<double> cost(static_cast<std::size_t>(n) * n * n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                DesignVariables v;
                v.c0_ff = {axis(0, static_cast<int>(i)), axis(1, j)};
                v.delta_f_ghz = axis(2, k);
                cost[(i * n + j) * n + k] =
                    evaluate_design(v, cfg.tmpl, cfg.opt_sweep, cfg.objective);
            }
        }
    });
    std::size_t best = 0;
    for (std::size_t idx = 1; idx < cost.size(); ++idx)
        if (cost[idx] < cost[best])
            best = idx;
    DesignVariables grid_vars;
    grid_vars.c0_ff = {axis(0, static_cast<int>(best / (n * n))),
                       axis(1, static_cast<int>((best / n) % n))};
    grid_vars.delta_f_ghz = axis(2, static_cast<int>(best % n));
    const FilterMetrics grid_m =
        extract_metrics(simulate(instantiate(cfg.tmpl, grid_vars), cfg.opt_sweep));

    // pinned from the pre-build reference implementation of this oracle
    c.check(cost[best] > 4.25 && cost[best] < 4.45,
            "grid-best cost " + g(cost[best]) + " drifted from the frozen 4.36 basin");
    c.check(grid_m.il_db > 2.78 && grid_m.il_db < 2.92,
            "grid-best IL " + g(grid_m.il_db) + " drifted from the frozen 2.85 dB");

    OptimizeOptions opt = cfg.opt_options;
    opt.seed = cfg.seed;
    const OptimizeResult r = optimize(cfg.tmpl, b, cfg.opt_sweep, cfg.objective, opt);
    bool monotone = true;
    for (std::size_t i = 1; i < r.cost_trace.size(); ++i)
        monotone = monotone && r.cost_trace[i] <= r.cost_trace[i - 1] + 1e-15;
    c.check(monotone, "best-so-far cost trace is not monotone");
    c.check(std::abs(r.best_metrics.il_db - grid_m.il_db) <= 0.3,
            "optimizer IL " + g(r.best_metrics.il_db) + " dB vs grid-oracle IL " +
                g(grid_m.il_db) + " dB differ by more than 0.3");
    c.note("grid best cost " + g(cost[best]) + " (IL " + g(grid_m.il_db) +
           " dB) at c0 = [" + g(grid_vars.c0_ff[0]) + ", " + g(grid_vars.c0_ff[1]) +
           "] fF, delta_f = " + g(grid_vars.delta_f_ghz) + " GHz; optimizer best cost " +
           g(r.best_cost) + " (IL " + g(r.best_metrics.il_db) + " dB)");
}

// ---------------------------------------------------------------- 8
int run_cmd(const std::string& cmd) {
    const int st = std::system(cmd.c_str());
    if (st == -1)
        return -1;
    if (WIFEXITED(st))
        return WEXITSTATUS(st);
    return -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_8(Criterion& c) {
    namespace fs = std::filesystem;
    const std::string cli = XFL_CLI_PATH;
    const std::string config = XFL_PAPER_JSON;
    const fs::path root = fs::temp_directory_path() / "xfl_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    // usage surface
    c.check(run_cmd(cli + " > " + (root / "usage.txt").string() + " 2>&1") == 2,
            "bare invocation should exit 2");
    c.check(run_cmd(cli + " filter --config /nope.json > /dev/null 2>&1") == 1,
            "domain failure should exit 1");
    c.check(run_cmd(cli + " --help > /dev/null 2>&1") == 0, "--help should exit 0");

    struct Step {
        std::string name;
        std::string args; // {out} replaced per run
    };
    const std::vector<Step> steps = {
        {"stack", "stack --config " + config + " --out {out}"},
        {"resonator", "resonator --config " + config + " --out {out}"},
        {"filter", "filter --config " + config + " --out {out}"},
        {"fit", "fit --input {out_prev}/shunt_res.s1p --spurs 0 --seed 7 --out {out}"},
        {"optimize", "optimize --config " + config + " --seed 7 --out {out}"},
        {"tolerance", "tolerance --config " + config + " --seed 7 --out {out}"},
        {"report", "report --config " + config + " --out {out}"},
    };

    auto substitute = [](std::string s, const std::string& key, const std::string& val) {
        const auto pos = s.find(key);
        if (pos != std::string::npos)
            s.replace(pos, key.size(), val);
        return s;
    };

    for (const auto& step : steps) {
        std::vector<fs::path> outs;
        for (int run = 1; run <= 2; ++run) {
            const fs::path out = root / (step.name + std::to_string(run));
            fs::create_directories(out);
            std::string cmd = substitute(step.args, "{out}", out.string());
            cmd = substitute(cmd, "{out_prev}", (root / "resonator1").string());
            const std::string full = cli + " " + cmd + " > " + (out / "stdout.txt").string() +
                                     " 2> " + (out / "stderr.txt").string();
            const int rc = run_cmd(full);
            c.check(rc == 0, step.name + " run " + std::to_string(run) + " exited " +
                                 std::to_string(rc));
            outs.push_back(out);
        }
        // byte-compare artifacts plus captured stdout
        std::vector<std::string> names;
        for (const auto& entry : fs::directory_iterator(outs[0]))
            if (entry.path().filename() != "stderr.txt")
                names.push_back(entry.path().filename().string());
        std::sort(names.begin(), names.end());
        c.check(!names.empty(), step.name + " produced no artifacts");
        for (const auto& name : names) {
            const std::string a = slurp(outs[0] / name);
            const std::string b = slurp(outs[1] / name);
            c.check(!a.empty(), step.name + "/" + name + " is empty");
            c.check(a == b, step.name + "/" + name + " differs between identical runs");
        }
    }

    // the dispersion table lists the two reference stacks at their design rows
    const std::string table = slurp(root / "stack1" / "stdout.txt");
    for (const char* needle : {"440", "427", "47.7", "49.6"})
        c.check(table.find(needle) != std::string::npos,
                std::string("stack table is missing '") + needle + "'");
    c.note("7 subcommands, repeated runs byte-identical");
}

} // namespace

int main() {
    std::vector<Criterion> criteria(8);
    criteria[0].name = "reference filter reconstruction (metrics + runtime)";
    criteria[1].name = "dispersion thickness anchors and trim margins";
    criteria[2].name = "mBVD synthesis round trip over 1000 random specs";
    criteria[3].name = "two-port network properties";
    criteria[4].name = "mBVD fit round trip at the measured operating points";
    criteria[5].name = "sensitivity oracle and Monte Carlo convergence";
    criteria[6].name = "optimizer vs exhaustive-grid oracle";
    criteria[7].name = "CLI determinism and exit codes";

    DesignConfig cfg;
    try {
        cfg = load_config(XFL_PAPER_JSON);
    } catch (const std::exception& e) {
        std::printf("[FAIL] cannot load reference config: %s\n", e.what());
        return 8;
    }

    auto guard = [&](Criterion& c, auto&& fn) {
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("unexpected exception: ") + e.what());
        }
    };

    guard(criteria[0], [&](Criterion& c) { criterion_1(c, cfg); });
    guard(criteria[1], [&](Criterion& c) { criterion_2(c, cfg); });
    guard(criteria[2], [&](Criterion& c) { criterion_3(c); });
    guard(criteria[3], [&](Criterion& c) { criterion_4(c, cfg); });
    guard(criteria[4], [&](Criterion& c) { criterion_5(c); });
    guard(criteria[5], [&](Criterion& c) { criterion_6(c); });
    guard(criteria[6], [&](Criterion& c) { criterion_7(c, cfg); });
    guard(criteria[7], [&](Criterion& c) { criterion_8(c); });

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        std::printf("[%s] criterion %zu: %s\n", c.pass ? "PASS" : "FAIL", i + 1,
                    c.name.c_str());
        for (const auto& n : c.notes)
            std::printf("       %s\n", n.c_str());
        failures += c.pass ? 0 : 1;
    }
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures;
}
