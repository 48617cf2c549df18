#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/stack.hpp"

using namespace xfl;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LayerStack make_stack(std::vector<double> layers_nm, double v_h, double v_lat = 4000.0) {
    LayerStack s;
    int sign = +1;
    for (double t : layers_nm) {
        s.layers.push_back({t, sign});
        sign = -sign;
    }
    s.material = {v_h, v_lat};
    return s;
}

// independent oracle: back-solve v_h from one (h, N, lambda, f) anchor
double oracle_vh(double h_nm, int order, double lambda_um, double f_ghz, double v_lat) {
    const double lat = v_lat / (lambda_um * 1e-6);
    const double f = f_ghz * 1e9;
    return 2.0 * h_nm * 1e-9 * std::sqrt(f * f - lat * lat) / order;
}

// independent oracle: invert mode_frequency by bisection on thickness
double oracle_thickness(double f_ghz, const ModeSpec& mode, const AcousticConstants& c) {
    double lo = 1e-3, hi = 1e7; // frequency decreases with thickness
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mode_frequency_ghz(mid, mode, c) > f_ghz ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_SUITE("stack") {

TEST_CASE("mode frequency reproduces the shunt design row") {
    // v_h chosen by the inversion oracle so that (440 nm, N=12) sits at 47.7 GHz
    const double vh = oracle_vh(440.0, 12, 8.0, 47.7, 4000.0);
    CHECK(vh == doctest::Approx(3497.808).epsilon(1e-4));
    const LayerStack s = make_stack({110, 110, 110, 110}, vh);
    const double f = mode_frequency_ghz(s, {12, 8.0});
    CHECK(f == doctest::Approx(47.70).epsilon(1e-9));
    // lateral term contributes less than 0.01 GHz here
    const double f_pure = mode_frequency_ghz(s, {12, kInf});
    CHECK(f - f_pure < 0.01);
    CHECK(f - f_pure > 0.0);
}

TEST_CASE("lambda to infinity collapses to the pure thickness overtone") {
    const AcousticConstants c{3500.0, 4000.0};
    const double f = mode_frequency_ghz(200.0, {5, kInf}, c);
    CHECK(f == 5 * 3500.0 / (2.0 * 200e-9) * 1e-9); // exact
}

TEST_CASE("110 nm A3 equals 440 nm S12 at the same velocity") {
    const AcousticConstants c{3497.808, 4000.0};
    const double f3 = mode_frequency_ghz(110.0, {3, 8.0}, c);
    const double f12 = mode_frequency_ghz(440.0, {12, 8.0}, c);
    CHECK(f3 == doctest::Approx(f12).epsilon(1e-12)); // same N/h ratio
    CHECK(f3 > 47.0);
    CHECK(f3 < 51.0);
}

TEST_CASE("thickness_for_frequency matches the bisection oracle") {
    const AcousticConstants c{3529.687, 4000.0};
    const ModeSpec a3{3, 8.0};
    const double h = thickness_for_frequency_nm(50.0, a3, c);
    CHECK(h == doctest::Approx(oracle_thickness(50.0, a3, c)).epsilon(1e-9));
    CHECK(h > 105.0);
    CHECK(h < 110.0); // paper-scale answer, ~106 nm
}

TEST_CASE("thickness_for_frequency round-trips over random inputs") {
    std::mt19937_64 eng(42);
    std::uniform_real_distribution<double> uh(20.0, 2000.0), uv(2000.0, 8000.0),
        ul(1.0, 100.0);
    std::uniform_int_distribution<int> un(1, 20);
    for (int i = 0; i < 100; ++i) {
        const AcousticConstants c{uv(eng), uv(eng)};
        const ModeSpec mode{un(eng), ul(eng)};
        const double h = uh(eng);
        const double f = mode_frequency_ghz(h, mode, c);
        const double h2 = thickness_for_frequency_nm(f, mode, c);
        CHECK(h2 == doctest::Approx(h).epsilon(1e-9));
    }
}

TEST_CASE("frequency at the lateral cutoff is infeasible") {
    const AcousticConstants c{3500.0, 4000.0};
    const double cutoff_ghz = 4000.0 / 8e-6 * 1e-9; // 0.5 GHz
    CHECK_THROWS_AS(thickness_for_frequency_nm(cutoff_ghz, {3, 8.0}, c), Error);
    CHECK_THROWS_AS(thickness_for_frequency_nm(0.25, {3, 8.0}, c), Error);
}

TEST_CASE("calibration against the design-table rows") {
    SUBCASE("shunt row gives about 3498 m/s") {
        const CalibrationPoint p{440.0, 12, 8.0, 47.7};
        const auto res = calibrate_velocity(std::span(&p, 1), 4000.0);
        CHECK(res.constants.v_thickness ==
              doctest::Approx(oracle_vh(440, 12, 8, 47.7, 4000)).epsilon(1e-6));
        CHECK(res.constants.v_thickness == doctest::Approx(3497.81).epsilon(1e-4));
        CHECK(std::abs(res.residuals_ghz[0]) < 1e-6);
    }
    SUBCASE("series row gives about 3530 m/s") {
        const CalibrationPoint p{427.0, 12, 8.0, 49.6};
        const auto res = calibrate_velocity(std::span(&p, 1), 4000.0);
        CHECK(res.constants.v_thickness == doctest::Approx(3529.69).epsilon(1e-4));
    }
    SUBCASE("two identical points leave zero residual") {
        const CalibrationPoint pts[2] = {{440, 12, 8, 47.7}, {440, 12, 8, 47.7}};
        const auto res = calibrate_velocity(pts, 4000.0);
        CHECK(std::abs(res.residuals_ghz[0]) < 1e-6);
        CHECK(std::abs(res.residuals_ghz[1]) < 1e-6);
    }
}

TEST_CASE("two-velocity calibration recovers synthetic constants") {
    const AcousticConstants truth{3500.0, 4200.0};
    std::vector<CalibrationPoint> pts;
    for (double lambda : {2.0, 5.0, 20.0}) {
        for (double h : {100.0, 300.0}) {
            pts.push_back({h, 3, lambda, mode_frequency_ghz(h, {3, lambda}, truth)});
        }
    }
    const auto res = calibrate_velocity(pts, std::nullopt);
    CHECK(res.constants.v_thickness == doctest::Approx(3500.0).epsilon(1e-3));
    CHECK(res.constants.v_lateral == doctest::Approx(4200.0).epsilon(1e-3));
}

TEST_CASE("underdetermined calibrations are rejected") {
    CHECK_THROWS_AS(calibrate_velocity({}, 4000.0), Error);
    const CalibrationPoint one{440, 12, 8, 47.7};
    CHECK_THROWS_AS(calibrate_velocity(std::span(&one, 1), std::nullopt), Error);
    // same lambda and same N/h: the two terms cannot be separated
    const CalibrationPoint degenerate[2] = {{440, 12, 8, 47.7}, {220, 6, 8, 47.7}};
    CHECK_THROWS_AS(calibrate_velocity(degenerate, std::nullopt), Error);
}

TEST_CASE("sensitivity matches the paper-scale figures") {
    // velocity placing A3 of a 110 nm film at exactly 50 GHz
    const double vh = 2.0 * 110e-9 * 50e9 / 3.0;
    const AcousticConstants c{vh, 4000.0};
    SUBCASE("single 110 nm layer near 50 GHz loses ~0.45 GHz per nm") {
        const double d = frequency_sensitivity(110.0, {3, kInf}, c);
        CHECK(d == doctest::Approx(-50.0 / 110.0).epsilon(1e-12)); // -f/h exactly
        CHECK(d == doctest::Approx(-0.4545).epsilon(1e-3));
    }
    SUBCASE("4-layer 440 nm stack is four times less sensitive") {
        const double d1 = frequency_sensitivity(110.0, {3, kInf}, c);
        const double d4 = frequency_sensitivity(440.0, {12, kInf}, c);
        CHECK(d4 == doctest::Approx(-0.1136).epsilon(1e-3));
        CHECK(d1 / d4 == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("sensitivity matches central finite differences") {
    const AcousticConstants c{3500.0, 4000.0};
    for (double h : {60.0, 110.0, 440.0, 900.0}) {
        for (int n : {1, 3, 12}) {
            for (double lambda : {2.0, 8.0, 50.0}) {
                const ModeSpec mode{n, lambda};
                const double analytic = frequency_sensitivity(h, mode, c);
                const double step = 0.01;
                const double fd = (mode_frequency_ghz(h + step, mode, c) -
                                   mode_frequency_ghz(h - step, mode, c)) /
                                  (2.0 * step);
                CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("trim depth for the filter detuning") {
    const double delta_f = 1.9; // series minus shunt fs
    SUBCASE("4-layer 440 nm needs a mid-teens trim") {
        const LayerStack s = make_stack({110, 110, 110, 110}, 3497.808);
        const double trim = trim_depth_for_offset_nm(s, {12, 8.0}, delta_f);
        CHECK(trim > 16.0);
        CHECK(trim < 17.0);
        // bisection oracle: f(h - trim) - f(h) = delta_f
        const double f0 = mode_frequency_ghz(s, {12, 8.0});
        const double f1 = mode_frequency_ghz(440.0 - trim, {12, 8.0}, s.material);
        CHECK(f1 - f0 == doctest::Approx(delta_f).epsilon(1e-9));
    }
    SUBCASE("single 110 nm layer needs ~4 nm") {
        const LayerStack s = make_stack({110}, 3497.808);
        const double trim = trim_depth_for_offset_nm(s, {3, 8.0}, delta_f);
        CHECK(trim == doctest::Approx(4.2).epsilon(0.1));
    }
    SUBCASE("zero shift needs zero trim") {
        const LayerStack s = make_stack({110, 110, 110, 110}, 3497.808);
        CHECK(trim_depth_for_offset_nm(s, {12, 8.0}, 0.0) == 0.0);
    }
    SUBCASE("electrode offset calibrates to a chosen trim") {
        const LayerStack s = make_stack({110, 110, 110, 110}, 3497.808);
        const double off = electrode_offset_for_trim_nm(s, {12, 8.0}, delta_f, 13.0);
        CHECK(off == doctest::Approx(-54.5).epsilon(0.05));
        CHECK(trim_depth_for_offset_nm(s, {12, 8.0}, delta_f, off) ==
              doctest::Approx(13.0).epsilon(1e-9));
    }
}

TEST_CASE("coupled overtone orders follow the poling parity rule") {
    SUBCASE("4-layer stack couples at 4, 12, 20") {
        const LayerStack s = make_stack({110, 110, 110, 110}, 3500.0);
        const auto orders = coupled_overtone_orders(s, 20);
        std::vector<int> strong;
        for (const auto& [n, cls] : orders)
            if (cls == CouplingClass::strong)
                strong.push_back(n);
        CHECK(strong == std::vector<int>{4, 12, 20});
    }
    SUBCASE("bi-layer couples at twice the single-layer family") {
        const LayerStack s = make_stack({100, 100}, 3500.0);
        const auto orders = coupled_overtone_orders(s, 10);
        std::vector<int> strong;
        for (const auto& [n, cls] : orders)
            if (cls == CouplingClass::strong)
                strong.push_back(n);
        CHECK(strong == std::vector<int>{2, 6, 10});
    }
    SUBCASE("single layer couples at odd harmonics") {
        const LayerStack s = make_stack({100}, 3500.0);
        const auto orders = coupled_overtone_orders(s, 7);
        std::vector<int> strong;
        for (const auto& [n, cls] : orders)
            if (cls == CouplingClass::strong)
                strong.push_back(n);
        CHECK(strong == std::vector<int>{1, 3, 5, 7});
    }
    SUBCASE("non-uniform layers unlock the adjacent orders") {
        const LayerStack s = make_stack({124, 110, 110, 107}, 3500.0);
        const auto orders = coupled_overtone_orders(s, 14);
        CHECK(orders[10].second == CouplingClass::partially_unsuppressed); // order 11
        CHECK(orders[11].second == CouplingClass::strong);                 // order 12
        CHECK(orders[12].second == CouplingClass::partially_unsuppressed); // order 13
        CHECK(orders[13].second == CouplingClass::weak);                   // order 14
    }
    SUBCASE("non-P3F stack is rejected") {
        LayerStack s = make_stack({110, 110, 110}, 3500.0);
        s.layers[1].orientation = +1;
        CHECK_THROWS_AS(coupled_overtone_orders(s, 10), Error);
    }
}

TEST_CASE("dispersion is monotone in thickness and order") {
    const AcousticConstants c{3500.0, 4000.0};
    double prev = mode_frequency_ghz(100.0, {3, 8.0}, c);
    for (double h = 110.0; h <= 300.0; h += 10.0) {
        const double f = mode_frequency_ghz(h, {3, 8.0}, c);
        CHECK(f < prev);
        prev = f;
    }
    for (int n = 1; n < 12; ++n) {
        CHECK(mode_frequency_ghz(200.0, {n + 1, 8.0}, c) >
              mode_frequency_ghz(200.0, {n, 8.0}, c));
    }
}

TEST_CASE("scaling thickness and wavelength together scales frequency inversely") {
    const AcousticConstants c{3500.0, 4000.0};
    const double f1 = mode_frequency_ghz(110.0, {3, 8.0}, c);
    for (double s : {2.0, 4.0, 0.5}) {
        const double f2 = mode_frequency_ghz(110.0 * s, {3, 8.0 * s}, c);
        CHECK(f2 == f1 / s); // exact for power-of-two scale factors
    }
}

TEST_CASE("equal-layer P3F overtone equals the single layer at reduced order") {
    const AcousticConstants c{3497.808, 4000.0};
    const LayerStack four = make_stack({110, 110, 110, 110}, c.v_thickness);
    const LayerStack one = make_stack({110}, c.v_thickness);
    for (int n : {1, 3, 5}) {
        CHECK(mode_frequency_ghz(four, {4 * n, 8.0}) ==
              doctest::Approx(mode_frequency_ghz(one, {n, 8.0})).epsilon(1e-12));
    }
}

TEST_CASE("validation and lint") {
    CHECK_THROWS_AS(mode_frequency_ghz(0.0, {3, 8.0}, {3500.0, 4000.0}), Error);
    CHECK_THROWS_AS(mode_frequency_ghz(100.0, {0, 8.0}, {3500.0, 4000.0}), Error);
    CHECK_THROWS_AS(mode_frequency_ghz(100.0, {3, -1.0}, {3500.0, 4000.0}), Error);
    CHECK_THROWS_AS(mode_frequency_ghz(100.0, {3, 8.0}, {-3500.0, 4000.0}), Error);

    const LayerStack slow = make_stack({110}, 500.0); // implausible but legal
    CHECK(mode_frequency_ghz(slow, {1, 8.0}) > 0.0);
    CHECK(!lint(slow).empty());
    const LayerStack fine = make_stack({110}, 3500.0);
    CHECK(lint(fine).empty());
}

} // TEST_SUITE
