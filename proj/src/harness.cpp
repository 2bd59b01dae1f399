#include "esbgk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "esbgk/diagnostics.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"
#include "esbgk/kahan.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/transport.hpp"

namespace esbgk {

namespace {

LadderLevel build_level(LadderCoupling coupling, double final_time, int n_steps, int j_half,
                        double dv, int n_cells_fixed) {
    if (n_steps < 1) throw ConfigError("ladder level needs at least one step");
    LadderLevel lv;
    lv.n_steps = n_steps;
    lv.dt = final_time / n_steps;
    lv.j_half = j_half;
    lv.dv = dv;
    if (coupling == LadderCoupling::DxEqualsDt) {
        // dx = dt forces n_cells = n_steps / final_time; demand it lands on an integer.
        double cells = n_steps / final_time;
        long long rounded = std::llround(cells);
        if (rounded < 2 || std::fabs(static_cast<double>(rounded) * final_time - n_steps) > 1e-9)
            throw ConfigError("n_steps/final_time = " + std::to_string(cells) +
                              " is not a whole cell count >= 2");
        lv.n_cells = static_cast<int>(rounded);
    } else {
        if (n_cells_fixed < 2) throw ConfigError("fixed-grid ladder needs n_cells >= 2");
        lv.n_cells = n_cells_fixed;
    }
    return lv;
}

}  // namespace

RefinementLadder make_ladder(LadderCoupling coupling, double final_time,
                             const std::vector<int>& steps_per_level, int j_half, double dv,
                             int n_cells_fixed) {
    if (!(final_time > 0.0)) throw ConfigError("ladder final_time must be positive");
    if (steps_per_level.size() < 2) throw ConfigError("ladder needs at least two levels");
    RefinementLadder ladder;
    ladder.coupling = coupling;
    ladder.final_time = final_time;
    for (std::size_t l = 0; l < steps_per_level.size(); ++l) {
        if (l > 0 && steps_per_level[l] < steps_per_level[l - 1])
            throw ConfigError("ladder step counts must be non-decreasing");
        ladder.levels.push_back(
            build_level(coupling, final_time, steps_per_level[l], j_half, dv, n_cells_fixed));
    }
    return ladder;
}

ConvergenceReport self_converge(const RefinementLadder& ladder, const InitialCondition& ic,
                                double kappa, double nu, double q_weight, int threads) {
    if (ladder.levels.size() < 2) throw ConfigError("self-convergence needs two or more levels");
    const LadderLevel& ref = ladder.levels.back();
    for (const LadderLevel& lv : ladder.levels) {
        if (lv.j_half != ref.j_half || lv.dv != ref.dv)
            throw LatticeNotNested("velocity lattice must be shared across ladder levels");
        if (ref.n_cells % lv.n_cells != 0)
            throw LatticeNotNested("level with " + std::to_string(lv.n_cells) +
                                   " cells does not divide the reference's " +
                                   std::to_string(ref.n_cells));
    }

    ConvergenceReport report;
    report.coupling = ladder.coupling;
    report.final_time = ladder.final_time;
    report.q_weight = q_weight;
    report.reference = ref;

    std::vector<DistributionGrid> states;
    states.reserve(ladder.levels.size());
    for (const LadderLevel& lv : ladder.levels) {
        GridPair grids = make_grids(lv.n_cells, lv.j_half, lv.dv);
        SchemeParams p = make_scheme_params(kappa, nu, lv.dt, q_weight, lv.n_steps);
        states.push_back(run(ic, grids, p, threads));
    }

    const DistributionGrid& fine = states.back();
    const std::vector<double> weight = weighted_norm_table(fine.velocity, q_weight);
    const std::size_t stride = fine.velocity.total_nodes();

    for (std::size_t l = 0; l + 1 < states.size(); ++l) {
        const DistributionGrid& coarse = states[l];
        const LadderLevel& lv = ladder.levels[l];
        LevelResult res;
        res.n_steps = lv.n_steps;
        res.dt = lv.dt;
        res.dx = coarse.spatial.dx;
        res.dv = lv.dv;
        res.n_cells = lv.n_cells;

        int refine = fine.spatial.n_cells / coarse.spatial.n_cells;
        double err = 0.0;
        for (int i = 0; i < coarse.spatial.n_cells; ++i) {
            const double* fc = coarse.values.data() + static_cast<std::size_t>(i) * stride;
            const double* ff =
                fine.values.data() + static_cast<std::size_t>(i) * refine * stride;
            for (std::size_t n = 0; n < stride; ++n)
                err = std::max(err, std::fabs(fc[n] - ff[n]) * weight[n]);
        }
        res.error = err;

        double nu_eff_l = effective_nu(kappa, nu, lv.dt);
        double tail = 0.0;
        for (int i = 0; i < coarse.spatial.n_cells; ++i)
            tail = std::max(tail, tail_mass(compute_moments(coarse.cell(i), coarse.velocity,
                                                            nu_eff_l), coarse.velocity));
        res.tail_mass = tail;

        if (l == 0) {
            res.local_order = std::numeric_limits<double>::quiet_NaN();
        } else {
            const LevelResult& prev = report.levels.back();
            res.local_order = (res.error > 0.0 && prev.error > 0.0)
                                  ? std::log(prev.error / res.error) / std::log(prev.dt / res.dt)
                                  : std::numeric_limits<double>::quiet_NaN();
        }
        report.levels.push_back(res);
    }

    report.degenerate = report.levels.size() < 3;
    for (const LevelResult& res : report.levels)
        if (!(res.error > 0.0)) report.degenerate = true;

    if (report.degenerate) {
        report.fitted_order = std::numeric_limits<double>::quiet_NaN();
    } else {
        // Least-squares slope of log error against log dt over the coarse levels.
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        double n = static_cast<double>(report.levels.size());
        for (const LevelResult& res : report.levels) {
            double x = std::log(res.dt);
            double y = std::log(res.error);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

double bgk_equivalence(const GridPair& grids, const InitialCondition& ic, double kappa, double dt,
                       double q_weight, int n_steps, int threads) {
    SchemeParams p = make_scheme_params(kappa, 0.0, dt, q_weight, n_steps);
    DistributionGrid f_es = sample_ic(ic, grids);
    DistributionGrid f_bgk = f_es;
    DistributionGrid next_es = make_distribution(grids);
    DistributionGrid next_bgk = make_distribution(grids);
    StepContext ctx = make_step_context(grids, p, threads);
    const std::vector<double> weight = weighted_norm_table(grids.velocity, q_weight);

    double worst = 0.0;
    StepReport rep;
    for (int n = 0; n < n_steps; ++n) {
        step(f_es, p, ctx, next_es, rep);
        step_bgk_reference(f_bgk, p, ctx.table, next_bgk);
        std::swap(f_es, next_es);
        std::swap(f_bgk, next_bgk);
        for (std::size_t k = 0; k < f_es.values.size(); ++k) {
            std::size_t node = k % weight.size();
            worst = std::max(worst,
                             std::fabs(f_es.values[k] - f_bgk.values[k]) * weight[node]);
        }
    }
    return worst;
}

std::vector<double> euler_limit_probe(const InitialCondition& ic, const GridPair& grids,
                                      const SchemeParams& p, int threads) {
    if (!(p.kappa <= 1e-4 * p.dt))
        throw ParamOutOfRange("relaxation probe needs kappa <= 1e-4 * dt, got kappa = " +
                              std::to_string(p.kappa));
    const std::vector<double> weight = weighted_norm_table(grids.velocity, p.q_weight);
    std::vector<double> residuals;
    residuals.reserve(static_cast<std::size_t>(p.n_steps));
    std::vector<double> gauss(grids.velocity.total_nodes());

    auto observer = [&](const DistributionGrid& f, const StepReport&,
                        const std::vector<MacroFields>&) {
        double resid = 0.0;
        for (int i = 0; i < f.spatial.n_cells; ++i) {
            std::span<const double> cell = f.cell(i);
            MacroFields m = compute_moments(cell, f.velocity, p.nu_eff);
            GaussianParams g = prepare(m);
            fill_gaussian(g, f.velocity, gauss);
            for (std::size_t n = 0; n < gauss.size(); ++n)
                resid = std::max(resid, std::fabs(cell[n] - gauss[n]) * weight[n]);
        }
        residuals.push_back(resid);
    };
    run(ic, grids, p, threads, observer);
    return residuals;
}

}  // namespace esbgk
