#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "esbgk/diagnostics.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/grid.hpp"
#include "esbgk/transport.hpp"
#include "oracle.hpp"

using namespace esbgk;

TEST_CASE("foot table worked examples") {
    // dx = 1/8; pick dv so selected nodes give v*dt = 2*dx and 0.5*dx
    GridPair g = make_grids(8, 2, 1.0);  // v1 in {-2,-1,0,1,2}
    double dt = 0.25;                    // v = 1: theta = v*dt/dx = 2

    FootTable t = build_foot_table(g.spatial, g.velocity, dt);
    REQUIRE(t.entries.size() == 5);

    // v = 1: foot x_i - 2*dx, exact node: s_offset = -2, alpha = 0
    CHECK(t.entry(3).s_offset == -2);
    CHECK(t.entry(3).alpha == 0.0);
    // v = 2: offset -4
    CHECK(t.entry(4).s_offset == -4);
    CHECK(t.entry(4).alpha == 0.0);
    // v = 0: identity
    CHECK(t.entry(2).s_offset == 0);
    CHECK(t.entry(2).alpha == 0.0);
    // v = -1: foot x_i + 2*dx
    CHECK(t.entry(1).s_offset == 2);
    CHECK(t.entry(1).alpha == 0.0);

    // half-cell shift: v*dt = 0.5*dx puts the foot mid-interval to the left,
    // s_offset = -1 and alpha = 1/2
    FootTable h = build_foot_table(g.spatial, g.velocity, 0.0625);
    CHECK(h.entry(3).s_offset == -1);
    CHECK(h.entry(3).alpha == 0.5);
    // and for v = -1 the foot is mid-interval to the right: s = i, alpha = 1/2
    CHECK(h.entry(1).s_offset == 0);
    CHECK(h.entry(1).alpha == 0.5);

    // quarter-cell: v*dt = 0.25*dx, foot in [x_{i-1}, x_i), right weight 3/4
    FootTable q = build_foot_table(g.spatial, g.velocity, 0.03125);
    CHECK(q.entry(3).s_offset == -1);
    CHECK(q.entry(3).alpha == 0.75);
}

TEST_CASE("alpha always lies in [0, 1)") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> udt(1e-4, 2.0);
    std::uniform_real_distribution<double> udv(0.05, 1.5);
    for (int trial = 0; trial < 200; ++trial) {
        GridPair g = make_grids(16, 8, udv(rng));
        FootTable t = build_foot_table(g.spatial, g.velocity, udt(rng));
        for (const FootEntry& e : t.entries) {
            CHECK(e.alpha >= 0.0);
            CHECK(e.alpha < 1.0);
        }
    }
}

TEST_CASE("integer shifts reproduce the state exactly") {
    GridPair g = make_grids(8, 2, 1.0);
    double dt = 0.25;  // every |v|*dt is a whole number of cells
    DistributionGrid f = oracle::perturbed_maxwellian(g, 99);
    FootTable t = build_foot_table(g.spatial, g.velocity, dt);
    DistributionGrid out = reconstruct(f, t);

    std::size_t stride = g.velocity.total_nodes();
    int n = g.velocity.nodes_per_axis();
    for (int i = 0; i < 8; ++i)
        for (int a = 0; a < n; ++a) {
            int src = wrap_index(i + t.entry(a).s_offset, 8);
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    std::size_t node = f.node_index(a, b, c);
                    CHECK(out.values[i * stride + node] == f.values[src * stride + node]);
                }
        }
}

TEST_CASE("linear data is interpolated exactly away from the wrap seam") {
    // f(x_i) = x_i at one velocity column; half-cell shift to the left
    GridPair g = make_grids(16, 1, 0.125);  // v1 in {-0.125, 0, 0.125}
    double dt = 0.25;                       // v*dt = 0.03125 = 0.5*dx for v = 0.125
    DistributionGrid f = make_distribution(g);
    std::size_t stride = g.velocity.total_nodes();
    std::size_t node = f.node_index(2, 1, 1);  // v1 = +0.125
    for (int i = 0; i < 16; ++i) f.values[i * stride + node] = g.spatial.coord(i);

    FootTable t = build_foot_table(g.spatial, g.velocity, dt);
    REQUIRE(t.entry(2).alpha == 0.5);
    DistributionGrid out = reconstruct(f, t);
    for (int i = 1; i < 16; ++i) {
        double want = 0.5 * (g.spatial.coord(i - 1) + g.spatial.coord(i));
        CHECK(out.values[i * stride + node] == doctest::Approx(want).epsilon(1e-16));
    }
    // cell 0 wraps to cell 15 and is *not* the linear extension
    CHECK(out.values[0 * stride + node] == 0.5 * (g.spatial.coord(15) + g.spatial.coord(0)));
}

TEST_CASE("smooth data: interpolation error within the second-order bound") {
    // f(x) = sin(2 pi x) on 64 cells, generic fractional shift; the linear
    // interpolant of a C2 function is off by at most max|f''| dx^2 / 8
    GridPair g = make_grids(64, 1, 0.1);
    double dt = 0.7;  // v = 0.1: theta = 0.7*0.1*64 = 4.48, alpha = 0.52
    DistributionGrid f = make_distribution(g);
    std::size_t stride = g.velocity.total_nodes();
    std::size_t node = f.node_index(2, 1, 1);  // v1 = +0.1
    for (int i = 0; i < 64; ++i)
        f.values[i * stride + node] = std::sin(2.0 * oracle::kPi * g.spatial.coord(i));

    FootTable t = build_foot_table(g.spatial, g.velocity, dt);
    DistributionGrid out = reconstruct(f, t);

    double bound = std::pow(2.0 * oracle::kPi, 2) * g.spatial.dx * g.spatial.dx / 8.0;
    for (int i = 0; i < 64; ++i) {
        double foot = g.spatial.coord(i) - 0.1 * dt;
        double exact = std::sin(2.0 * oracle::kPi * foot);
        CHECK(std::fabs(out.values[i * stride + node] - exact) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("reconstruction is a convex combination entrywise") {
    GridPair g = make_grids(8, 3, 0.4);
    DistributionGrid f = oracle::perturbed_maxwellian(g, 123);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> udt(0.01, 1.5);
    std::size_t stride = g.velocity.total_nodes();
    int n = g.velocity.nodes_per_axis();
    for (int trial = 0; trial < 10; ++trial) {
        FootTable t = build_foot_table(g.spatial, g.velocity, udt(rng));
        DistributionGrid out = reconstruct(f, t);
        for (int i = 0; i < 8; ++i)
            for (int a = 0; a < n; ++a) {
                int s = wrap_index(i + t.entry(a).s_offset, 8);
                int sp = wrap_index(s + 1, 8);
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) {
                        std::size_t node = f.node_index(a, b, c);
                        double lo = std::min(f.values[s * stride + node],
                                             f.values[sp * stride + node]);
                        double hi = std::max(f.values[s * stride + node],
                                             f.values[sp * stride + node]);
                        double v = out.values[i * stride + node];
                        CHECK(v >= lo);
                        CHECK(v <= hi);
                    }
            }
    }
}

TEST_CASE("transport never expands the norms") {
    GridPair g = make_grids(12, 4, 0.5);
    DistributionGrid f = oracle::perturbed_maxwellian(g, 2718);
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> udt(0.001, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        FootTable t = build_foot_table(g.spatial, g.velocity, udt(rng));
        DistributionGrid out = reconstruct(f, t);
        NormSet before = norm_set(f, 6.0);
        NormSet after = norm_set(out, 6.0);
        CHECK(after.sup <= before.sup);
        CHECK(after.weighted_sup <= before.weighted_sup);
    }
}

TEST_CASE("exact transported initial data for separable profiles") {
    // f0(x,v) = g(x) M(v): the transported state is g(x_i - v1*dt) M(v)
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);
    GridPair g = make_grids(8, 2, 0.75);
    double dt = 0.17;
    DistributionGrid f = reconstruct_initial(ic, g, dt);
    CHECK(f.time_index == 0);
    std::size_t stride = g.velocity.total_nodes();
    int n = g.velocity.nodes_per_axis();
    for (int i = 0; i < 8; ++i)
        for (int a = 0; a < n; ++a) {
            double foot = g.spatial.coord(i) - g.velocity.coord(a) * dt;
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    double want = eval_ic(ic, foot, g.velocity.coord(a), g.velocity.coord(b),
                                          g.velocity.coord(c));
                    CHECK(f.values[i * stride + f.node_index(a, b, c)] == want);
                }
        }
}

TEST_CASE("lattice reconstruction approaches the exact transport at second order") {
    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);
    GridPair g = make_grids(32, 2, 0.75);
    double dt = 0.009;
    DistributionGrid f0 = sample_ic(ic, g);
    FootTable t = build_foot_table(g.spatial, g.velocity, dt);
    DistributionGrid lattice = reconstruct(f0, t);
    DistributionGrid exact = reconstruct_initial(ic, g, dt);

    // max_x |d2/dx2 f0| = rho0 delta (2 pi k)^2 max_v M(v)
    double m_peak = std::pow(2.0 * oracle::kPi, -1.5);
    double bound = 0.2 * std::pow(2.0 * oracle::kPi, 2) * m_peak * g.spatial.dx * g.spatial.dx /
                   8.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < lattice.values.size(); ++k)
        worst = std::max(worst, std::fabs(lattice.values[k] - exact.values[k]));
    CHECK(worst <= bound * (1.0 + 1e-10));
    CHECK(worst > 0.0);  // the two routes genuinely differ
}

TEST_CASE("foot table rejects mismatched grids and absurd offsets") {
    GridPair g = make_grids(8, 2, 1.0);
    GridPair other = make_grids(16, 2, 1.0);
    FootTable t = build_foot_table(g.spatial, g.velocity, 0.25);
    DistributionGrid f = make_distribution(other);
    for (double& v : f.values) v = 1.0;
    DistributionGrid out;
    CHECK_THROWS_AS(reconstruct(f, t, out), GridMismatch);

    // a foot billions of cells away signals a broken dt, not a physical run
    CHECK_THROWS_AS(build_foot_table(g.spatial, g.velocity, 1e12), ParamOutOfRange);
}
