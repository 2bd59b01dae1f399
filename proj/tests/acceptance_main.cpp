// Structural acceptance gate for the solver: ten checks, one line each, with
// the measured quantity and its bound. Exit status is the number of failures.
//
//   esbgk_acceptance            run everything
//   esbgk_acceptance --only 3   run a single check (3..6 share one time loop)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "esbgk/cli.hpp"
#include "esbgk/config.hpp"
#include "esbgk/diagnostics.hpp"
#include "esbgk/gaussian.hpp"
#include "esbgk/harness.hpp"
#include "esbgk/io.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/stepper.hpp"
#include "esbgk/transport.hpp"

using namespace esbgk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

InitialCondition default_wave() { return smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0); }

// 1. With a spherical target (nu = 0) the scheme must reproduce the
//    independently coded classical relaxation path.
Outcome check_bgk_reduction() {
    Outcome out{1, "nu-zero-matches-classical-bgk", false, "", 0.0};
    GridPair g = make_grids(32, 12, 0.375);
    InitialCondition ic = default_wave();
    DistributionGrid f0 = sample_ic(ic, g);
    double tol = 1e-12 * weighted_sup_norm(f0, 6.0);
    double dev = bgk_equivalence(g, ic, 1.0, 1.0 / 32.0, 6.0, 10);
    out.pass = dev <= tol;
    out.detail = fmt("max weighted dev %.3e <= %.3e over 10 steps", dev, tol);
    return out;
}

// 2. A spatially uniform Maxwellian is a fixed point of the update, up to the
//    measured quadrature tolerance, across the relaxation-parameter range.
Outcome check_fixed_point() {
    Outcome out{2, "maxwellian-fixed-point", false, "", 0.0};
    GridPair g = make_grids(4, 16, 0.375);
    InitialCondition ic = uniform_maxwellian(1.0, {0.0, 0.0, 0.0}, 1.0);
    DistributionGrid f0 = sample_ic(ic, g);

    double worst_dev = 0.0, worst_tol = 0.0;
    for (double nu : {-0.4, 0.0, 0.5}) {
        for (double kappa : {1e-3, 1.0, 1e3}) {
            SchemeParams p = make_scheme_params(kappa, nu, 0.01, 6.0, 1);
            QuadTolerance qt = measure_quad_tolerance(f0, p);
            double tol = std::max(qt.eps(), qt.pointwise_resid);
            worst_tol = std::max(worst_tol, tol);

            StepContext ctx = make_step_context(g, p, 1);
            DistributionGrid f1 = make_distribution(g);
            StepReport rep;
            step(f0, p, ctx, f1, rep);
            const std::vector<double>& w = ctx.weight;
            double dev = 0.0;
            for (std::size_t k = 0; k < f1.values.size(); ++k)
                dev = std::max(dev,
                               std::fabs(f1.values[k] - f0.values[k]) * w[k % w.size()]);
            worst_dev = std::max(worst_dev, dev);
            if (dev > tol) {
                out.detail = fmt("dev %.3e > tol %.3e", dev, tol) +
                             fmt(" at nu = %g, kappa = %g", nu, kappa);
                return out;
            }
        }
    }
    out.pass = worst_tol <= 1e-6;
    out.detail = fmt("worst dev %.3e within tol, worst tol %.3e <= 1e-06", worst_dev, worst_tol);
    return out;
}

// Shared 100-step run on the reference configuration (64 cells, J = 16,
// dv = 0.375, dt = dx, kappa = 1, nu = -0.4). Checks 3..6 all consume it.
struct LongRunStats {
    double budget = 0.0;          // 10x the measured quadrature tolerance
    double worst_mass = 0.0;      // relative drift
    double worst_momentum = 0.0;  // absolute, scaled by mass*sqrt(T0)
    double worst_energy = 0.0;    // relative drift
    long positivity_violations = 0;
    double min_f = 0.0;
    long expansion_violations = 0;
    double worst_eig_overshoot = 0.0;  // relative to the cell temperature
    double worst_det_overshoot = 0.0;  // relative to temperature cubed
    bool ran = false;
};

LongRunStats long_run() {
    LongRunStats st;
    GridPair g = make_grids(64, 16, 0.375);
    SchemeParams p = make_scheme_params(1.0, -0.4, 1.0 / 64.0, 6.0, 100);
    DistributionGrid f = sample_ic(default_wave(), g);

    QuadTolerance qt = measure_quad_tolerance(f, p);
    st.budget = 10.0 * qt.eps();

    Totals t0 = conserved_totals(f);
    std::array<double, 3> u0;
    double usq = 0.0;
    for (int k = 0; k < 3; ++k) {
        u0[k] = t0.momentum[k] / t0.mass;
        usq += u0[k] * u0[k];
    }
    double temp0 = (t0.energy / t0.mass - usq) / 3.0;
    double mom_scale = t0.mass * std::sqrt(temp0);

    StepContext ctx = make_step_context(g, p, 1);
    DistributionGrid f_next = make_distribution(g);
    StepReport rep;
    st.min_f = std::numeric_limits<double>::infinity();

    for (int n = 0; n < p.n_steps; ++n) {
        double prev_sup = weighted_sup_norm(f, p.q_weight);
        step(f, p, ctx, f_next, rep);

        st.worst_mass = std::max(st.worst_mass, std::fabs(rep.mass - t0.mass) / t0.mass);
        for (int k = 0; k < 3; ++k)
            st.worst_momentum = std::max(
                st.worst_momentum, std::fabs(rep.momentum[k] - t0.momentum[k]) / mom_scale);
        st.worst_energy =
            std::max(st.worst_energy, std::fabs(rep.energy - t0.energy) / t0.energy);

        for (std::size_t k = 0; k < f_next.values.size(); ++k)
            if (f_next.values[k] < p.keep * ctx.f_tilde.values[k]) ++st.positivity_violations;
        st.min_f = std::min(st.min_f, rep.min_value);

        if (rep.tilde_norm_q > prev_sup) ++st.expansion_violations;

        double lo_f = std::min(1.0 - p.nu_eff, 1.0 + 2.0 * p.nu_eff);
        double hi_f = std::max(1.0 - p.nu_eff, 1.0 + 2.0 * p.nu_eff);
        for (const MacroFields& m : ctx.tilde_fields) {
            double lo = lo_f * m.temp, hi = hi_f * m.temp;
            for (double e : m.tensor_nu.eigenvalues()) {
                st.worst_eig_overshoot =
                    std::max({st.worst_eig_overshoot, (lo - e) / m.temp, (e - hi) / m.temp});
            }
            double det = m.tensor_nu.det();
            double t3 = m.temp * m.temp * m.temp;
            st.worst_det_overshoot = std::max(
                {st.worst_det_overshoot, (lo * lo * lo - det) / t3, (det - hi * hi * hi) / t3});
        }

        std::swap(f, f_next);
    }
    st.ran = true;
    return st;
}

Outcome check_conservation(const LongRunStats& st) {
    Outcome out{3, "conservation-drift", false, "", 0.0};
    double worst = std::max({st.worst_mass, st.worst_momentum, st.worst_energy});
    out.pass = worst <= st.budget;
    out.detail = fmt("max drift %.3e <= %.3e (mass/momentum/energy, 100 steps)", worst, st.budget);
    return out;
}

Outcome check_positivity(const LongRunStats& st) {
    Outcome out{4, "relaxation-floor-positivity", false, "", 0.0};
    out.pass = st.positivity_violations == 0 && st.min_f > 0.0;
    out.detail = fmt("floor violations %g, min f %.3e > 0",
                     static_cast<double>(st.positivity_violations), st.min_f);
    return out;
}

Outcome check_non_expansion(const LongRunStats& st) {
    Outcome out{5, "transport-non-expansion", false, "", 0.0};
    out.pass = st.expansion_violations == 0;
    out.detail = fmt("reconstructions above the prior norm: %g of %g",
                     static_cast<double>(st.expansion_violations), 100.0);
    return out;
}

Outcome check_tensor_sandwich(const LongRunStats& st) {
    Outcome out{6, "tensor-eigenvalue-sandwich", false, "", 0.0};
    double worst = std::max(st.worst_eig_overshoot, st.worst_det_overshoot);
    out.pass = worst <= 1e-10;
    out.detail = fmt("worst relative overshoot %.3e <= 1e-10 (eig %.3e", worst,
                     st.worst_eig_overshoot) +
                 fmt(", det %.3e)", st.worst_det_overshoot, 0.0);
    return out;
}

// 7. The interpolation offsets depend only on the velocity node, so rebuilding
//    the foot table once per step must reproduce identical bits every time.
Outcome check_foot_constancy() {
    Outcome out{7, "foot-map-constancy", false, "", 0.0};
    GridPair g = make_grids(64, 16, 0.375);
    double dt = 1.0 / 64.0;
    FootTable first = build_foot_table(g.spatial, g.velocity, dt);
    long mismatches = 0;
    for (int iterate = 1; iterate < 10; ++iterate) {
        FootTable again = build_foot_table(g.spatial, g.velocity, dt);
        for (std::size_t a = 0; a < first.entries.size(); ++a) {
            if (std::memcmp(&again.entries[a].alpha, &first.entries[a].alpha,
                            sizeof(double)) != 0 ||
                again.entries[a].s_offset != first.entries[a].s_offset)
                ++mismatches;
        }
    }
    bool in_range = true;
    for (const FootEntry& e : first.entries)
        if (!(e.alpha >= 0.0 && e.alpha < 1.0)) in_range = false;
    out.pass = mismatches == 0 && in_range;
    out.detail = fmt("%g of %g alpha recomputations changed bits",
                     static_cast<double>(mismatches),
                     static_cast<double>(9 * first.entries.size()));
    return out;
}

// 8. Joint dt = dx refinement self-converges at first order.
Outcome check_convergence_order() {
    Outcome out{8, "first-order-self-convergence", false, "", 0.0};
    RefinementLadder lad =
        make_ladder(LadderCoupling::DxEqualsDt, 0.5, {5, 10, 20, 40, 80}, 12, 0.375);
    ConvergenceReport rep = self_converge(lad, default_wave(), 1.0, -0.4, 6.0);
    out.pass = !rep.degenerate && rep.fitted_order >= 0.8 && rep.fitted_order <= 1.3;
    std::string orders;
    for (const LevelResult& lv : rep.levels)
        if (!std::isnan(lv.local_order)) orders += fmt(" %.3g", lv.local_order, 0.0);
    out.detail =
        fmt("fitted order %.4g in [0.8, 1.3]", rep.fitted_order, 0.0) + " (local:" + orders + ")";
    return out;
}

// 9. In the stiff limit one update lands on the Gaussian of the transported
//    moments.
Outcome check_stiff_projection() {
    Outcome out{9, "stiff-limit-projection", false, "", 0.0};
    GridPair g = make_grids(32, 16, 0.375);
    SchemeParams p = make_scheme_params(1e-8, -0.4, 1.0 / 32.0, 6.0, 1);
    DistributionGrid f0 = sample_ic(default_wave(), g);
    double tol = 1e-6 * weighted_sup_norm(f0, p.q_weight);

    StepContext ctx = make_step_context(g, p, 1);
    DistributionGrid f1 = make_distribution(g);
    StepReport rep;
    step(f0, p, ctx, f1, rep);

    std::vector<double> gauss(g.velocity.total_nodes());
    const std::vector<double>& w = ctx.weight;
    double dev = 0.0;
    for (int i = 0; i < g.spatial.n_cells; ++i) {
        fill_gaussian(prepare(ctx.tilde_fields[static_cast<std::size_t>(i)]), g.velocity, gauss);
        auto cell = f1.cell(i);
        for (std::size_t n = 0; n < gauss.size(); ++n)
            dev = std::max(dev, std::fabs(cell[n] - gauss[n]) * w[n]);
    }
    out.pass = dev <= tol;
    out.detail = fmt("||f1 - gaussian(transported moments)|| %.3e <= %.3e", dev, tol);
    return out;
}

// 10. Two identical runs leave byte-identical artifacts; a third run with two
//     worker threads must match as well.
Outcome check_reproducibility() {
    Outcome out{10, "bitwise-reproducible-artifacts", false, "", 0.0};
    fs::path root = fs::temp_directory_path() / "esbgk_acceptance_repro";
    fs::remove_all(root);

    RunConfig cfg = parse_config("{}");  // the defaults are the long-run configuration
    finalize_config(cfg);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    std::vector<std::string> states, csvs;
    for (int r = 0; r < 3; ++r) {
        RunConfig c = cfg;
        c.output.dir = (root / ("run" + std::to_string(r))).string();
        c.threads = r == 2 ? 2 : 1;
        if (cmd_run(c) != 0) {
            out.detail = "run command failed";
            return out;
        }
        states.push_back(slurp(fs::path(c.output.dir) / "state.bin"));
        csvs.push_back(slurp(fs::path(c.output.dir) / "diagnostics.csv"));
    }
    bool same = states[0] == states[1] && states[0] == states[2] && csvs[0] == csvs[1] &&
                csvs[0] == csvs[2] && !states[0].empty() && !csvs[0].empty();
    out.pass = same;
    out.detail = fmt("state %g bytes, csv %g bytes, three runs identical",
                     static_cast<double>(states[0].size()), static_cast<double>(csvs[0].size()));
    fs::remove_all(root);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 2;
        }
    }
    auto wanted = [&](int id) { return only == 0 || only == id; };

    std::vector<Outcome> results;
    auto timed = [&](Outcome (*fn)()) {
        double t = now_seconds();
        Outcome o = fn();
        o.seconds = now_seconds() - t;
        results.push_back(o);
    };

    if (wanted(1)) timed(check_bgk_reduction);
    if (wanted(2)) timed(check_fixed_point);
    if (wanted(3) || wanted(4) || wanted(5) || wanted(6)) {
        double t = now_seconds();
        LongRunStats st = long_run();
        double elapsed = now_seconds() - t;
        Outcome group[] = {check_conservation(st), check_positivity(st),
                           check_non_expansion(st), check_tensor_sandwich(st)};
        for (Outcome& o : group) {
            if (!wanted(o.id)) continue;
            o.seconds = elapsed;
            results.push_back(o);
            elapsed = 0.0;  // charge the shared run to the first reported line
        }
    }
    if (wanted(7)) timed(check_foot_constancy);
    if (wanted(8)) timed(check_convergence_order);
    if (wanted(9)) timed(check_stiff_projection);
    if (wanted(10)) timed(check_reproducibility);

    int failures = 0;
    for (const Outcome& o : results) {
        if (!o.pass) ++failures;
        std::printf("[%s] %2d %-32s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", o.id,
                    o.name.c_str(), o.detail.c_str(), o.seconds);
    }
    std::printf("%zu checks, %d failed\n", results.size(), failures);
    return failures;
}
