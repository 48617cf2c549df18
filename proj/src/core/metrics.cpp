/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace xfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double db20(const cplx& v) {
    const double m = std::abs(v);
    return m > 0.0 ? 20.0 * std::log10(m) : -kInf;
}

bool in_windows(double f, std::span<const SpurWindow> windows) {
    for (const auto& w : windows)
        if (f >= w.f_start_ghz && f <= w.f_stop_ghz)
            return true;
    return false;
}

struct Band {
    std::size_t peak_index;
    double peak_db;
    double f_lo, f_hi;
};

Band locate_band(const SweepResult& s, const std::vector<double>& db) {
    const std::size_t n = s.f_ghz.size();
    if (n < 3)
        throw Error(errc::invalid_argument, "sweep too short for metric extraction");
    std::size_t ip = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (db[i] > db[ip])
            ip = i;
    if (ip == 0 || ip == n - 1)
        throw Error(errc::numeric, "no passband: |S21| peaks at the sweep boundary");

    const double t = db[ip] - 3.0;
    auto interp = [&](std::size_t below, std::size_t above) {
        return s.f_ghz[below] + (t - db[below]) * (s.f_ghz[above] - s.f_ghz[below]) /
                                    (db[above] - db[below]);
    };

    std::size_t i = ip;
    while (i > 0 && db[i] >= t)
        --i;
    if (db[i] >= t)
        throw Error(errc::numeric, "band not resolved: missing lower 3-dB crossing");
    const double f_lo = interp(i, i + 1);

    std::size_t j = ip;
    while (j < n - 1 && db[j] >= t)
        ++j;
    if (db[j] >= t)
        throw Error(errc::numeric, "band not resolved: missing upper 3-dB crossing");
    const double f_hi = interp(j, j - 1);

    return {ip, db[ip], f_lo, f_hi};
}

} // namespace

FilterMetrics extract_metrics(const SweepResult& sweep, std::span<const SpurWindow> windows) {
    const std::size_t n = sweep.f_ghz.size();
    if (sweep.s21.size() != n || sweep.s11.size() != n)
        throw Error(errc::invalid_argument, "sweep arrays have mismatched lengths");

    std::vector<double> db(n);
    for (std::size_t i = 0; i < n; ++i)
        db[i] = db20(sweep.s21[i]);

    const Band band = locate_band(sweep, db);

    std::size_t inband_points = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (sweep.f_ghz[i] >= band.f_lo && sweep.f_ghz[i] <= band.f_hi)
            ++inband_points;
    if (inband_points < 50)
        throw Error(errc::numeric, "passband undersampled: only " +
                                       std::to_string(inband_points) +
                                       " sweep points inside the 3-dB band (need 50)");

    FilterMetrics m;
    m.f_lo_ghz = band.f_lo;
    m.f_hi_ghz = band.f_hi;
    m.f_center_ghz = 0.5 * (band.f_lo + band.f_hi);
    m.il_db = std::max(0.0, -band.peak_db);
    m.fbw_3db_pct = 100.0 * (band.f_hi - band.f_lo) / m.f_center_ghz;
    m.spur_windows.assign(windows.begin(), windows.end());

    const double bw = band.f_hi - band.f_lo;
    const double lo_lim = band.f_lo - bw;
    const double hi_lim = band.f_hi + bw;
    double oob = kInf, oob_excl = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = sweep.f_ghz[i];
        if (f >= lo_lim && f <= hi_lim)
            continue;
        const double att = -db[i];
        oob = std::min(oob, att);
        if (!in_windows(f, windows))
            oob_excl = std::min(oob_excl, att);
    }
    m.oob_db = oob;
    m.oob_excl_spurs_db = oob_excl;

    double s11_min = kInf;
    for (std::size_t i = 0; i < n; ++i)
        if (sweep.f_ghz[i] >= band.f_lo && sweep.f_ghz[i] <= band.f_hi)
            s11_min = std::min(s11_min, db20(sweep.s11[i]));
    m.s11_min_inband_db = s11_min;
    return m;
}

std::vector<SpurWindow> propose_spur_windows(const SweepResult& sweep) {
    const std::size_t n = sweep.f_ghz.size();
    std::vector<double> db(n);
    for (std::size_t i = 0; i < n; ++i)
        db[i] = db20(sweep.s21[i]);
    const Band band = locate_band(sweep, db);

    const double bw = band.f_hi - band.f_lo;
    const double lo_lim = band.f_lo - bw;
    const double hi_lim = band.f_hi + bw;

    std::vector<double> oob_levels;
    for (std::size_t i = 0; i < n; ++i)
        if (sweep.f_ghz[i] < lo_lim || sweep.f_ghz[i] > hi_lim)
            oob_levels.push_back(db[i]);
    if (oob_levels.empty())
        return {};
    std::vector<double> sorted = oob_levels;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    const double median =
        sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    const double threshold = median + 6.0;

    std::vector<SpurWindow> out;
    bool open = false;
    SpurWindow cur;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = sweep.f_ghz[i];
        const bool oob = f < lo_lim || f > hi_lim;
        const bool hot = oob && db[i] > threshold;
        if (hot && !open) {
            cur.f_start_ghz = f;
            open = true;
        }
        if (hot)
            cur.f_stop_ghz = f;
        if (!hot && open) {
            out.push_back(cur);
            open = false;
        }
    }
    if (open)
        out.push_back(cur);
    return out;
}

std::span<const SoaEntry> soa_dataset() {
    static const std::array<SoaEntry, 7> table{{
        {"nanoacoustic-10ghz", 9.96, 0.76, 5.7, 3.8, false},
        {"p3f-alscn-17ghz", 17.4, 3.3, 3.4, 16.6, false},
        {"linbo3-19ghz", 19.0, 8.0, 2.4, 13.0, false},
        {"linbo3-23.5ghz", 23.5, 2.4, 18.2, 13.0, false},
        {"p3f-linbo3-23.8ghz", 23.8, 1.5, 19.4, 12.1, false},
        {"linbo3-38.7ghz", 38.7, 5.6, 17.6, 15.8, false},
        {"p3f-linbo3-50ghz", 50.1, 3.3, 2.9, 15.2, false},
    }};
    return {table.data(), table.size()};
}

std::vector<SoaEntry> compare_to_soa(const FilterMetrics& metrics) {
    auto base = soa_dataset();
    std::vector<SoaEntry> rows(base.begin(), base.end());
    SoaEntry mine;
    mine.label = "simulated";
    mine.f_c_ghz = metrics.f_center_ghz;
    mine.il_db = metrics.il_db;
    mine.fbw_pct = metrics.fbw_3db_pct;
    mine.rejection_db = metrics.oob_excl_spurs_db;
    mine.is_this_run = true;
    rows.push_back(mine);
    std::stable_sort(rows.begin(), rows.end(), [](const SoaEntry& a, const SoaEntry& b) {
        if (a.f_c_ghz != b.f_c_ghz)
            return a.f_c_ghz < b.f_c_ghz;
        return a.il_db < b.il_db;
    });
    return rows;
}

} // namespace xfl
