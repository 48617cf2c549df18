#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/ladder.hpp"
#include "core/metrics.hpp"

using namespace xfl;

namespace {

MbvdParams series_params(double q = 80.0) {
    return synthesize_mbvd({49.6, 0.048, q, 37.0, {}, 0.0, 0.0});
}
MbvdParams shunt_params(double q = 80.0) {
    return synthesize_mbvd({47.7, 0.075, q, 80.0, {}, 0.0, 0.0});
}

FilterDesign paper_design(double q = 80.0, std::vector<SpurSpec> series_spurs = {}) {
    ResonatorSpec se{49.6, 0.048, q, 37.0, std::move(series_spurs), 0.0, 0.0};
    ResonatorSpec sh{47.7, 0.075, q, 80.0, {}, 0.0, 0.0};
    FilterDesign d;
    d.elements.push_back({LadderElement::Placement::series, synthesize_mbvd(se), 0.0});
    d.elements.push_back({LadderElement::Placement::shunt, synthesize_mbvd(sh), 0.0});
    d.elements.push_back({LadderElement::Placement::series, synthesize_mbvd(se), 0.0});
    return d;
}

const SweepGrid kPaperGrid{40.0, 60.0, 4001, SweepGrid::Spacing::linear};

} // namespace

TEST_SUITE("ladder") {

TEST_CASE("sweep grids") {
    const auto lin = SweepGrid{40.0, 60.0, 5, SweepGrid::Spacing::linear}.frequencies();
    CHECK(lin.front() == 40.0);
    CHECK(lin.back() == 60.0);
    CHECK(lin[2] == 50.0);
    const auto log = SweepGrid{1.0, 100.0, 3, SweepGrid::Spacing::logarithmic}.frequencies();
    CHECK(log[1] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS((SweepGrid{40.0, 60.0, 1}).frequencies(), Error);
    CHECK_THROWS_AS((SweepGrid{60.0, 40.0, 11}).frequencies(), Error);
}

TEST_CASE("shunt element near its parallel resonance is nearly transparent") {
    // lossless shunt at fp: Y = 0 up to rounding, ABCD = identity
    ResonatorSpec sh{47.7, 0.075, std::numeric_limits<double>::infinity(), 80.0, {}, 0.0, 0.0};
    const MbvdParams p = synthesize_mbvd(sh);
    const double fp = 47.7 * std::sqrt(1.0 + p.branches[0].cm_ff / p.c0_ff);
    const Abcd m = element_abcd({LadderElement::Placement::shunt, p, 0.0}, fp);
    CHECK(m.a == cplx(1.0));
    CHECK(m.b == cplx(0.0));
    CHECK(m.d == cplx(1.0));
    CHECK(std::abs(m.c) < 1e-9 * 2 * M_PI * fp * 1e9 * 80e-15); // tiny vs the raw wC0
}

TEST_CASE("series element impedance dips at the series resonance") {
    const LadderElement e{LadderElement::Placement::series, series_params(), 0.0};
    // oracle: the element's B entry is 1/Y from the admittance module
    const cplx b_at_fs = element_abcd(e, 49.6).b;
    CHECK(b_at_fs == 1.0 / admittance(e.resonator, 49.6));
    CHECK(std::abs(b_at_fs) < 0.5 * std::abs(element_abcd(e, 45.0).b));
    CHECK(std::abs(b_at_fs) < 0.3 * std::abs(element_abcd(e, 43.0).b));
}

TEST_CASE("series parasitic inductance adds its reactance to the through path") {
    const LadderElement bare{LadderElement::Placement::series, series_params(), 0.0};
    const LadderElement loaded{LadderElement::Placement::series, series_params(), 0.1};
    const double f = 50.0;
    const cplx diff = element_abcd(loaded, f).b - element_abcd(bare, f).b;
    const double expected = 2 * M_PI * f * 1e9 * 0.1e-9;
    CHECK(diff.real() == doctest::Approx(0.0).scale(expected));
    CHECK(diff.imag() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("shunt parasitic inductance resonates with the static capacitance") {
    // series L in the shunt leg forms an LC short: transmission notch.
    // Below fs the motional branch adds Cm/(1 - (f/fs)^2) to the load.
    const double l_nh = 0.5;
    const MbvdParams p = shunt_params();
    FilterDesign d;
    d.elements.push_back({LadderElement::Placement::shunt, p, l_nh});
    double f_em = 25.0;
    for (int it = 0; it < 4; ++it) {
        const double ratio = f_em / 47.7;
        const double c_eff =
            (p.c0_ff + p.branches[0].cm_ff / (1.0 - ratio * ratio)) * 1e-15;
        f_em = 1.0 / (2 * M_PI * std::sqrt(l_nh * 1e-9 * c_eff)) * 1e-9;
    }
    const SweepGrid grid{5.0, 45.0, 4001, SweepGrid::Spacing::linear};
    const SweepResult s = simulate(d, grid);
    std::size_t imin = 0;
    for (std::size_t i = 1; i < s.f_ghz.size(); ++i)
        if (std::abs(s.s21[i]) < std::abs(s.s21[imin]))
            imin = i;
    CHECK(s.f_ghz[imin] == doctest::Approx(f_em).epsilon(0.01));
}

TEST_CASE("cascade identities") {
    const LadderElement sh1{LadderElement::Placement::shunt, shunt_params(), 0.0};
    const LadderElement sh2{LadderElement::Placement::shunt, series_params(), 0.0};
    const double f = 44.0;

    SUBCASE("single element cascades to itself") {
        const Abcd one = cascade(std::span(&sh1, 1), f);
        const Abcd direct = element_abcd(sh1, f);
        CHECK(one.c == direct.c);
    }
    SUBCASE("two shunt elements merge into one") {
        const LadderElement both[2] = {sh1, sh2};
        const Abcd m = cascade(both, f);
        CHECK(m.a == cplx(1.0));
        CHECK(m.b == cplx(0.0));
        CHECK(m.c == admittance(sh1.resonator, f) + admittance(sh2.resonator, f));
        CHECK(m.d == cplx(1.0));
    }
    SUBCASE("three-element ladder keeps determinant one across the sweep") {
        const FilterDesign d = paper_design();
        for (double fr : kPaperGrid.frequencies()) {
            const Abcd m = cascade(d.elements, fr);
            CHECK(std::abs(m.a * m.d - m.b * m.c - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("s-parameter conversion basics") {
    SUBCASE("identity network is a matched through") {
        const SMatrix s = s_params({1.0, 0.0, 0.0, 1.0}, 50.0);
        CHECK(s.s21 == cplx(1.0));
        CHECK(s.s11 == cplx(0.0));
        CHECK(s.s12 == cplx(1.0));
    }
    SUBCASE("series resistor equal to z0") {
        const SMatrix s = s_params({1.0, 50.0, 0.0, 1.0}, 50.0);
        CHECK(s.s21.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(s.s11.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(s.s21.imag() == 0.0);
    }
    SUBCASE("invalid port impedance") {
        CHECK_THROWS_AS(s_params({1.0, 0.0, 0.0, 1.0}, 0.0), Error);
    }
}

TEST_CASE("reciprocity over random ladders") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> ufs(30.0, 70.0), uk2(0.02, 0.2), uq(20.0, 200.0),
        uc0(20.0, 150.0);
    for (int trial = 0; trial < 20; ++trial) {
        FilterDesign d;
        const int n = 1 + static_cast<int>(eng() % 5);
        for (int e = 0; e < n; ++e) {
            ResonatorSpec s{ufs(eng), uk2(eng), uq(eng), uc0(eng), {}, 0.0, 0.0};
            d.elements.push_back({eng() % 2 == 0 ? LadderElement::Placement::series
                                                 : LadderElement::Placement::shunt,
                                  synthesize_mbvd(s), 0.0});
        }
        const double f = ufs(eng);
        const SMatrix s = s_params(cascade(d.elements, f), 50.0);
        CHECK(std::abs(s.s12 - s.s21) < 1e-12 * std::abs(s.s21) + 1e-15);
    }
}

TEST_CASE("simulate stores s12 as the identical s21 value") {
    const SweepResult s = simulate(paper_design(), kPaperGrid);
    for (std::size_t i = 0; i < s.f_ghz.size(); ++i) {
        CHECK(s.s12[i].real() == s.s21[i].real());
        CHECK(s.s12[i].imag() == s.s21[i].imag());
    }
}

TEST_CASE("passivity holds across the paper sweep") {
    const SweepResult s = simulate(paper_design(), kPaperGrid);
    for (std::size_t i = 0; i < s.f_ghz.size(); ++i) {
        CHECK(std::abs(s.s11[i]) <= 1.0 + 1e-9);
        CHECK(std::abs(s.s21[i]) <= 1.0 + 1e-9);
    }
}

TEST_CASE("lossless ladder conserves energy to 1e-9") {
    const SweepResult s = simulate(paper_design(std::numeric_limits<double>::infinity()),
                                   kPaperGrid);
    for (std::size_t i = 0; i < s.f_ghz.size(); ++i) {
        const double total = std::norm(s.s11[i]) + std::norm(s.s21[i]);
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("series-resonator spurs add out-of-band transmission tones") {
    const SweepResult clean = simulate(paper_design(), kPaperGrid);
    const SweepResult spurred = simulate(
        paper_design(80.0, {{45.467, 0.015, 80.0}, {53.733, 0.010, 80.0}}), kPaperGrid);
    auto db_at = [&](const SweepResult& s, double f) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < s.f_ghz.size(); ++i)
            if (std::abs(s.f_ghz[i] - f) < std::abs(s.f_ghz[best] - f))
                best = i;
        return 20.0 * std::log10(std::abs(s.s21[best]));
    };
    CHECK(db_at(spurred, 53.733) - db_at(clean, 53.733) > 1.0);
    CHECK(db_at(spurred, 45.467) - db_at(clean, 45.467) > 0.05);
}

TEST_CASE("grid refinement leaves the extracted metrics settled") {
    const FilterDesign d = paper_design();
    const FilterMetrics coarse =
        extract_metrics(simulate(d, {40.0, 60.0, 2001, SweepGrid::Spacing::linear}));
    const FilterMetrics fine =
        extract_metrics(simulate(d, {40.0, 60.0, 4001, SweepGrid::Spacing::linear}));
    CHECK(std::abs(fine.f_center_ghz - coarse.f_center_ghz) / fine.f_center_ghz < 1e-3);
    CHECK(std::abs(fine.il_db - coarse.il_db) / fine.il_db < 1e-3);
    CHECK(std::abs(fine.fbw_3db_pct - coarse.fbw_3db_pct) / fine.fbw_3db_pct < 1e-3);
}

TEST_CASE("validation") {
    FilterDesign d;
    CHECK_THROWS_AS(validate(d), Error);
    d = paper_design();
    d.z0_ohm = -50.0;
    CHECK_THROWS_AS(validate(d), Error);
    d = paper_design();
    d.elements[0].parasitic_l_nh = -1.0;
    CHECK_THROWS_AS(validate(d), Error);
    CHECK_THROWS_AS(cascade({}, 50.0), Error);
}

} // TEST_SUITE
