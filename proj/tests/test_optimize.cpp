#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/optimize.hpp"

using namespace xfl;

namespace {

DesignTemplate paper_template(double q = 80.0) {
    DesignTemplate t;
    t.resonators.push_back({49.6, 0.048, q, 37.0, {}, 0.0, 0.0}); // series role
    t.resonators.push_back({47.7, 0.075, q, 80.0, {}, 0.0, 0.0}); // shunt role
    t.elements = {{LadderElement::Placement::series, 0},
                  {LadderElement::Placement::shunt, 1},
                  {LadderElement::Placement::series, 0}};
    t.parasitic_l_nh = {0.0, 0.0, 0.0};
    t.z0_ohm = 50.0;
    return t;
}

const SweepGrid kEvalGrid{46.0, 53.0, 1401, SweepGrid::Spacing::linear};
const Objective kObjective{3.3, 1.0, 2.0, 0.5};

Bounds pct_bounds(const DesignTemplate& t, double pct) {
    const DesignVariables nominal = nominal_variables(t);
    Bounds b;
    for (double c0 : nominal.c0_ff) {
        b.lo.push_back(c0 * (1.0 - pct));
        b.hi.push_back(c0 * (1.0 + pct));
    }
    b.lo.push_back(nominal.delta_f_ghz * (1.0 - pct));
    b.hi.push_back(nominal.delta_f_ghz * (1.0 + pct));
    return b;
}

} // namespace

TEST_SUITE("optimize") {

TEST_CASE("nominal variables read the template") {
    const DesignVariables v = nominal_variables(paper_template());
    CHECK(v.c0_ff == std::vector<double>{37.0, 80.0});
    CHECK(v.delta_f_ghz == doctest::Approx(1.9).epsilon(1e-12));
}

TEST_CASE("frequency offset shifts series resonators and their spurs") {
    DesignTemplate t = paper_template();
    t.resonators[0].spurs.push_back({45.467, 0.015, 80.0});
    DesignVariables v = nominal_variables(t);
    v.delta_f_ghz = 2.4; // +0.5 on the series side
    const FilterDesign d = instantiate(t, v);
    const double fs_series = branch_fs_ghz(d.elements[0].resonator.branches[0]);
    const double fs_shunt = branch_fs_ghz(d.elements[1].resonator.branches[0]);
    CHECK(fs_series == doctest::Approx(50.1).epsilon(1e-9));
    CHECK(fs_shunt == doctest::Approx(47.7).epsilon(1e-12));
    const double fs_spur = branch_fs_ghz(d.elements[0].resonator.branches[1]);
    CHECK(fs_spur == doctest::Approx(45.467 * 50.1 / 49.6).epsilon(1e-9));
}

TEST_CASE("a resonator placed both series and shunt is rejected") {
    DesignTemplate t = paper_template();
    t.elements[1] = {LadderElement::Placement::shunt, 0};
    CHECK_THROWS_AS(validate(t), Error);
}

TEST_CASE("cost of the nominal design is finite and IL-dominated") {
    const double cost =
        evaluate_design(nominal_variables(paper_template()), paper_template(), kEvalGrid,
                        kObjective);
    CHECK(cost > 3.0); // IL alone is ~3.7 dB
    CHECK(cost < 10.0);
}

TEST_CASE("designs without a passband cost the penalty") {
    // series resonances far above the grid and a vanishing shunt leave a
    // monotone high-pass slope: the |S21| peak sits on the boundary
    DesignVariables v = nominal_variables(paper_template());
    v.delta_f_ghz = 25.0;
    v.c0_ff[1] = 0.001;
    CHECK(evaluate_design(v, paper_template(), kEvalGrid, kObjective) == 1e6);
    v = nominal_variables(paper_template());
    v.c0_ff[0] = -1.0;
    CHECK(evaluate_design(v, paper_template(), kEvalGrid, kObjective) == 1e6);
}

TEST_CASE("evaluation is a pure function") {
    const DesignVariables v = nominal_variables(paper_template());
    const double a = evaluate_design(v, paper_template(), kEvalGrid, kObjective);
    const double b = evaluate_design(v, paper_template(), kEvalGrid, kObjective);
    CHECK(a == b);
}

TEST_CASE("lossless insertion loss improves monotonically toward the matching optimum") {
    const DesignTemplate t = paper_template(std::numeric_limits<double>::infinity());
    const Objective il_only{3.3, 1.0, 0.0, 0.0};
    DesignVariables v = nominal_variables(t);
    double best = 1e300;
    double worst = 0.0;
    // scale both capacitances together: pure impedance-level matching knob
    for (double scale = 0.6; scale <= 2.6; scale += 0.25) {
        v.c0_ff = {37.0 * scale, 80.0 * scale};
        const double cost = evaluate_design(v, t, kEvalGrid, il_only);
        best = std::min(best, cost);
        worst = std::max(worst, cost);
    }
    CHECK(best < 0.2);  // near-lossless at the matched level
    CHECK(worst > best + 0.1);
}

TEST_CASE("optimizer improves on the nominal start and keeps a monotone trace") {
    OptimizeOptions opt;
    opt.n_starts = 4;
    opt.max_iter = 80;
    opt.seed = 99;
    const DesignTemplate t = paper_template();
    const Bounds b = pct_bounds(t, 0.2);
    const OptimizeResult r = optimize(t, b, kEvalGrid, kObjective, opt);
    const double nominal_cost =
        evaluate_design(nominal_variables(t), t, kEvalGrid, kObjective);
    CHECK(r.best_cost <= nominal_cost);
    for (std::size_t i = 1; i < r.cost_trace.size(); ++i)
        CHECK(r.cost_trace[i] <= r.cost_trace[i - 1] + 1e-15);
    for (std::size_t i = 0; i < b.lo.size() - 1; ++i) {
        CHECK(r.best.c0_ff[i] >= b.lo[i] - 1e-12);
        CHECK(r.best.c0_ff[i] <= b.hi[i] + 1e-12);
    }
    CHECK(r.best_metrics.il_db > 0.0);
}

TEST_CASE("collapsed bounds box returns the nominal point untouched") {
    const DesignTemplate t = paper_template();
    const DesignVariables nominal = nominal_variables(t);
    Bounds b;
    b.lo = {nominal.c0_ff[0], nominal.c0_ff[1], nominal.delta_f_ghz};
    b.hi = b.lo;
    OptimizeOptions opt;
    opt.n_starts = 3;
    const OptimizeResult r = optimize(t, b, kEvalGrid, kObjective, opt);
    CHECK(r.best.c0_ff == nominal.c0_ff);
    CHECK(r.best.delta_f_ghz == nominal.delta_f_ghz);
    CHECK(r.cost_trace.size() == 1);
}

TEST_CASE("fixed seed reproduces the optimization bit for bit") {
    OptimizeOptions opt;
    opt.n_starts = 3;
    opt.max_iter = 40;
    opt.seed = 2024;
    const DesignTemplate t = paper_template();
    const Bounds b = pct_bounds(t, 0.25);
    const OptimizeResult r1 = optimize(t, b, kEvalGrid, kObjective, opt);
    const OptimizeResult r2 = optimize(t, b, kEvalGrid, kObjective, opt);
    CHECK(r1.best_cost == r2.best_cost);
    CHECK(r1.best.delta_f_ghz == r2.best.delta_f_ghz);
    CHECK(r1.best.c0_ff == r2.best.c0_ff);
    CHECK(r1.cost_trace == r2.cost_trace);
    CHECK(r1.best_start == r2.best_start);
}

TEST_CASE("bounds validation") {
    const DesignTemplate t = paper_template();
    Bounds b = pct_bounds(t, 0.2);
    b.lo.pop_back();
    CHECK_THROWS_AS(optimize(t, b, kEvalGrid, kObjective, {}), Error);
    b = pct_bounds(t, 0.2);
    std::swap(b.lo[0], b.hi[0]);
    CHECK_THROWS_AS(optimize(t, b, kEvalGrid, kObjective, {}), Error);
    CHECK_THROWS_AS(
        evaluate_design(nominal_variables(t), t, kEvalGrid, Objective{3.3, 0.0, 0.0, 0.0}),
        Error);
}

} // TEST_SUITE
