#include "doctest.h"

#include <cmath>
#include <vector>

#include "esbgk/diagnostics.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/harness.hpp"

using namespace esbgk;

TEST_CASE("ladder construction couples dt to dx level by level") {
    RefinementLadder lad = make_ladder(LadderCoupling::DxEqualsDt, 0.5, {5, 10, 20, 40, 80}, 8, 0.5);
    REQUIRE(lad.levels.size() == 5);
    CHECK(lad.final_time == 0.5);
    int want_steps[] = {5, 10, 20, 40, 80};
    for (std::size_t k = 0; k < lad.levels.size(); ++k) {
        const LadderLevel& lv = lad.levels[k];
        CHECK(lv.n_steps == want_steps[k]);
        CHECK(lv.dt == 0.5 / want_steps[k]);
        // dt = dx means n_cells = n_steps / final_time
        CHECK(lv.n_cells == 2 * want_steps[k]);
        CHECK(lv.dt == 1.0 / static_cast<double>(lv.n_cells));
        CHECK(lv.j_half == 8);
        CHECK(lv.dv == 0.5);
    }
}

TEST_CASE("ladder construction on a fixed spatial grid") {
    RefinementLadder lad =
        make_ladder(LadderCoupling::FixedDvRefineDt, 0.25, {4, 8, 16}, 6, 0.5, 32);
    REQUIRE(lad.levels.size() == 3);
    for (const LadderLevel& lv : lad.levels) {
        CHECK(lv.n_cells == 32);
        CHECK(lv.dv == 0.5);
    }
    CHECK(lad.levels[0].dt == 0.0625);
    CHECK(lad.levels[2].dt == 0.015625);
}

TEST_CASE("ladder construction rejects inconsistent requests") {
    // 5 steps over 0.3 would need 16.67 cells
    CHECK_THROWS_AS(make_ladder(LadderCoupling::DxEqualsDt, 0.3, {5, 10}, 8, 0.5), ConfigError);
    // refinement must not coarsen
    CHECK_THROWS_AS(make_ladder(LadderCoupling::DxEqualsDt, 0.5, {10, 5}, 8, 0.5), ConfigError);
    // at least two levels
    CHECK_THROWS_AS(make_ladder(LadderCoupling::DxEqualsDt, 0.5, {10}, 8, 0.5), ConfigError);
    CHECK_THROWS_AS(make_ladder(LadderCoupling::DxEqualsDt, 0.0, {5, 10}, 8, 0.5), ConfigError);
    // one step over unit time gives a single cell
    CHECK_THROWS_AS(make_ladder(LadderCoupling::DxEqualsDt, 1.0, {1, 10}, 8, 0.5), ConfigError);
}

TEST_CASE("self-convergence needs nested spatial grids") {
    // cells 10, 24, 40: the middle level does not divide the reference
    RefinementLadder lad = make_ladder(LadderCoupling::DxEqualsDt, 0.5, {5, 12, 20}, 4, 0.75);
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);
    CHECK_THROWS_AS(self_converge(lad, ic, 1.0, 0.0, 6.0), LatticeNotNested);
}

TEST_CASE("repeated levels give a degenerate report, not a throw") {
    RefinementLadder lad = make_ladder(LadderCoupling::DxEqualsDt, 0.5, {8, 8, 8, 8}, 4, 0.75);
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);
    ConvergenceReport rep = self_converge(lad, ic, 1.0, -0.4, 6.0);
    CHECK(rep.degenerate);
    CHECK(std::isnan(rep.fitted_order));
    REQUIRE(rep.levels.size() == 3);
    for (const LevelResult& lv : rep.levels) CHECK(lv.error == 0.0);
}

TEST_CASE("two usable levels are too few for a fit") {
    RefinementLadder lad = make_ladder(LadderCoupling::DxEqualsDt, 0.5, {4, 8, 16}, 4, 0.75);
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);
    ConvergenceReport rep = self_converge(lad, ic, 1.0, -0.4, 6.0);
    CHECK(rep.degenerate);
    CHECK(std::isnan(rep.fitted_order));
    REQUIRE(rep.levels.size() == 2);
    CHECK(rep.levels[0].error > rep.levels[1].error);
}

TEST_CASE("coupled refinement approaches first order") {
    RefinementLadder lad = make_ladder(LadderCoupling::DxEqualsDt, 0.5, {4, 8, 16, 32}, 6, 0.5);
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);
    ConvergenceReport rep = self_converge(lad, ic, 1.0, -0.4, 6.0);
    CHECK(!rep.degenerate);
    REQUIRE(rep.levels.size() == 3);
    CHECK(rep.reference.n_steps == 32);
    for (std::size_t k = 0; k < rep.levels.size(); ++k) {
        CHECK(rep.levels[k].error > 0.0);
        if (k > 0) {
            // halving dt and dx should cut the error meaningfully
            CHECK(rep.levels[k].error < 0.75 * rep.levels[k - 1].error);
            CHECK(rep.levels[k].local_order > 0.4);
        } else {
            CHECK(std::isnan(rep.levels[k].local_order));
        }
        CHECK(rep.levels[k].tail_mass > 0.0);
        CHECK(rep.levels[k].tail_mass < 1e-1);
    }
    CHECK(rep.fitted_order > 0.5);
    CHECK(rep.fitted_order < 2.0);
    CHECK(rep.q_weight == 6.0);
    CHECK(rep.final_time == 0.5);
}

TEST_CASE("relaxation with a spherical target matches the classical path") {
    GridPair g = make_grids(16, 8, 0.5);
    InitialCondition ic = smooth_wave(1.0, 0.3, 1, {0.0, 0.0, 0.0}, 1.0);
    DistributionGrid f0 = sample_ic(ic, g);
    double scale = weighted_sup_norm(f0, 6.0);
    double dev = bgk_equivalence(g, ic, 1.0, 0.0625, 6.0, 5);
    CHECK(dev >= 0.0);
    CHECK(dev <= 1e-12 * scale);
}

TEST_CASE("stiff-limit probe collapses the state onto its local Gaussian") {
    GridPair g = make_grids(8, 12, 0.5);
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);

    SchemeParams loose = make_scheme_params(1.0, -0.4, 0.01, 6.0, 3);
    CHECK_THROWS_AS(euler_limit_probe(ic, g, loose), ParamOutOfRange);

    SchemeParams stiff = make_scheme_params(1e-8, -0.4, 0.01, 6.0, 3);
    std::vector<double> resid = euler_limit_probe(ic, g, stiff);
    REQUIRE(resid.size() == 3);
    DistributionGrid f0 = sample_ic(ic, g);
    double scale = weighted_sup_norm(f0, 6.0);
    // after one update the distance to the fitted Gaussian is O(kappa/dt)
    // plus quadrature noise
    for (double r : resid) {
        CHECK(r >= 0.0);
        CHECK(r < 1e-4 * scale);
    }
    CHECK(resid[0] < 1e-5 * scale);
}
