/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/fit.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/simplex.hpp"

namespace xfl {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// spec-space parameterization: (fs, k2, q) per mode plus the shared c0,
// all strictly positive, optimized in log space
std::vector<double> pack(const ResonatorSpec& s) {
    std::vector<double> u;
    u.reserve(4 + 3 * s.spurs.size());
    u.push_back(std::log(s.fs_ghz));
    u.push_back(std::log(s.k2));
    u.push_back(std::log(s.q));
    u.push_back(std::log(s.c0_ff));
    for (const auto& sp : s.spurs) {
        u.push_back(std::log(sp.fs_ghz));
        u.push_back(std::log(sp.k2));
        u.push_back(std::log(sp.q));
    }
    return u;
}

ResonatorSpec unpack(std::span<const double> u, const ResonatorSpec& proto) {
    ResonatorSpec s;
    s.fs_ghz = std::exp(u[0]);
    s.k2 = std::exp(u[1]);
    s.q = std::exp(u[2]);
    s.c0_ff = std::exp(u[3]);
    s.rs_ohm = proto.rs_ohm;
    s.r0_ohm = proto.r0_ohm;
    for (std::size_t base = 4; base + 3 <= u.size(); base += 3)
        s.spurs.push_back({std::exp(u[base]), std::exp(u[base + 1]), std::exp(u[base + 2])});
    return s;
}

} // namespace

double fit_residual(const AdmittanceRecord& data, const MbvdParams& params,
                    std::optional<std::pair<double, double>> window_ghz) {
    validate(data);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.f_ghz.size(); ++i) {
        const double f = data.f_ghz[i];
        if (window_ghz && (f < window_ghz->first || f > window_ghz->second))
            continue;
        const cplx ym = admittance(params, f);
        const cplx yd = data.y_s[i];
        if (ym == 0.0 || yd == 0.0)
            return 1e30;
        const cplx d = (std::log(ym) - std::log(yd)) / std::log(10.0);
        sum += std::norm(d);
        ++count;
    }
    if (count == 0)
        throw Error(errc::invalid_argument, "fit window excludes every data point");
    return std::sqrt(sum / static_cast<double>(count));
}

ResonatorSpec initial_guess(const AdmittanceRecord& data, int n_spurs) {
    validate(data);
    const std::size_t n = data.f_ghz.size();
    if (n < 8)
        throw Error(errc::invalid_argument, "too few points for an initial guess");
    if (n_spurs < 0)
        throw Error(errc::invalid_argument, "n_spurs must be non-negative");

    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i)
        mag[i] = std::abs(data.y_s[i]);

    std::size_t ip = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (mag[i] > mag[ip])
            ip = i;
    if (ip == 0 || ip == n - 1)
        throw Error(errc::numeric, "no resonance: |Y| has no interior peak");

    const double fs = data.f_ghz[ip];

    // fp: global |Y| minimum above the peak
    std::size_t iv = ip;
    for (std::size_t i = ip + 1; i < n; ++i)
        if (mag[i] < mag[iv] || iv == ip)
            iv = i;
    if (iv == ip || iv == n - 1)
        throw Error(errc::numeric, "no resonance: |Y| minimum above fs not resolved");
    const double fp = data.f_ghz[iv];

    // C0 from the capacitive floor over the lowest frequency decile
    std::vector<double> c_est;
    const std::size_t decile = std::max<std::size_t>(1, n / 10);
    for (std::size_t i = 0; i < decile; ++i) {
        const double w = 2.0 * M_PI * data.f_ghz[i] * 1e9;
        c_est.push_back(data.y_s[i].imag() / w);
    }
    const double c0_f = median(std::move(c_est));
    if (!(c0_f > 0.0))
        throw Error(errc::numeric, "no resonance: low-frequency response is not capacitive");

    // Q from the 3-dB width of the |Y| resonance line. The static-branch
    // susceptance is subtracted first; otherwise the capacitive background
    // washes out low-Q peaks and the width comes out several times too wide.
    std::vector<double> line(n);
    std::size_t lp = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 2.0 * M_PI * data.f_ghz[i] * 1e9;
        line[i] = std::abs(data.y_s[i] - cplx(0.0, w * c0_f));
        if (i > 0 && i + 1 < n && line[i] > line[lp])
            lp = i;
    }
    const double f_line_peak = data.f_ghz[lp];
    const double drop = line[lp] / std::sqrt(2.0);
    double f_left = data.f_ghz.front(), f_right = data.f_ghz.back();
    bool found_left = false, found_right = false;
    for (std::size_t i = lp; i-- > 0;) {
        if (line[i] < drop) {
            f_left = data.f_ghz[i + 1] + (drop - line[i + 1]) *
                                             (data.f_ghz[i] - data.f_ghz[i + 1]) /
                                             (line[i] - line[i + 1]);
            found_left = true;
            break;
        }
    }
    for (std::size_t i = lp + 1; i < n; ++i) {
        if (line[i] < drop) {
            f_right = data.f_ghz[i - 1] + (drop - line[i - 1]) *
                                              (data.f_ghz[i] - data.f_ghz[i - 1]) /
                                              (line[i] - line[i - 1]);
            found_right = true;
            break;
        }
    }
    double width = 0.0;
    if (found_left && found_right)
        width = f_right - f_left;
    else if (found_left)
        width = 2.0 * (f_line_peak - f_left);
    else if (found_right)
        width = 2.0 * (f_right - f_line_peak);
    const double q = width > 0.0 ? std::max(2.0, f_line_peak / width) : 50.0;

    ResonatorSpec spec;
    spec.fs_ghz = fs;
    spec.k2 = std::clamp(k2_from_fs_fp(fs, fp), 1e-4, 0.9);
    spec.q = q;
    spec.c0_ff = c0_f * 1e15;

    // seed spurs at the next-largest interior peaks
    std::vector<std::pair<double, double>> peaks; // (mag, f)
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (i == ip)
            continue;
        if (mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1] && mag[i] > 1.5 * std::abs(cplx(
                0.0, 2.0 * M_PI * data.f_ghz[i] * 1e9 * c0_f)))
            peaks.emplace_back(mag[i], data.f_ghz[i]);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < n_spurs; ++k) {
        SpurSpec sp;
        if (static_cast<std::size_t>(k) < peaks.size())
            sp.fs_ghz = peaks[static_cast<std::size_t>(k)].second;
        else
            sp.fs_ghz = fs * (1.08 + 0.04 * k); // placeholder; the fit relocates it
        sp.k2 = spec.k2 / 10.0;
        sp.q = spec.q;
        spec.spurs.push_back(sp);
    }
    return spec;
}

FitResult fit_mbvd(const AdmittanceRecord& data, const ResonatorSpec& init,
                   const FitOptions& options) {
    validate(data);
    validate(init);
    if (data.f_ghz.size() < 100)
        throw Error(errc::invalid_argument,
                    "fit needs at least 100 admittance points spanning fs and fp");

    const std::vector<double> u0 = pack(init);

    auto objective = [&](std::span<const double> u) {
        ResonatorSpec s = unpack(u, init);
        if (!(s.k2 < 0.999) || !(s.fs_ghz < 1e4) || !(s.q < 1e7))
            return 1e30;
        for (const auto& sp : s.spurs)
            if (!(sp.k2 < 0.999) || !(sp.fs_ghz < 1e4) || !(sp.q < 1e7))
                return 1e30;
        return fit_residual(data, synthesize_mbvd(s), options.window_ghz);
    };

    struct Restart {
        SimplexResult sim;
    };
    std::vector<Restart> runs(static_cast<std::size_t>(std::max(1, options.restarts)));

    parallel_for(runs.size(), [&](std::size_t r) {
        std::vector<double> ur = u0;
        if (r > 0) {
            Rng rng(mix_seed(options.seed, r));
            for (auto& u : ur)
                u += 0.05 * rng.normal();
        }
        std::vector<double> step(ur.size(), 0.03);
        SimplexOptions so;
        so.max_iter = options.max_iter;
        SimplexResult first = nelder_mead(objective, ur, step, so);
        // fresh simplex around the found point recovers from collapse
        std::vector<double> polish_step(ur.size(), 0.005);
        SimplexResult second = nelder_mead(objective, first.x, polish_step, so);
        second.best_trace.insert(second.best_trace.begin(), first.best_trace.begin(),
                                 first.best_trace.end());
        runs[r].sim = std::move(second);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].sim.fx < runs[best].sim.fx)
            best = r;

    FitResult out;
    const ResonatorSpec fitted = unpack(runs[best].sim.x, init);
    out.params = synthesize_mbvd(fitted);
    out.spec = derive_spec(out.params, options.convention);
    out.residual = runs[best].sim.fx;
    out.trace = runs[best].sim.best_trace;
    out.converged = out.residual <= options.residual_ceiling;
    if (!out.converged)
        out.flags.push_back("unmodeled feature: residual " + std::to_string(out.residual) +
                            " above ceiling " + std::to_string(options.residual_ceiling) +
                            "; best-effort result");
    const double f_lo = data.f_ghz.front(), f_hi = data.f_ghz.back();
    for (std::size_t b = 0; b < out.params.branches.size(); ++b) {
        const double fb = branch_fs_ghz(out.params.branches[b]);
        if (fb < f_lo || fb > f_hi)
            out.flags.push_back("branch " + std::to_string(b) + " resonates at " +
                                std::to_string(fb) + " GHz, outside the data span");
    }
    return out;
}

} // namespace xfl
