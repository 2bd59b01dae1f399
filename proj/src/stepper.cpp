#include "esbgk/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "esbgk/gaussian.hpp"
#include "esbgk/kahan.hpp"

namespace esbgk {

SchemeParams make_scheme_params(double kappa, double nu, double dt, double q_weight, int n_steps) {
    SchemeParams p;
    p.kappa = kappa;
    p.nu = nu;
    p.dt = dt;
    p.q_weight = q_weight;
    p.n_steps = n_steps;

    p.nu_eff = effective_nu(kappa, nu, dt);  // validates kappa, nu, dt
    p.a_nu = collision_frequency(nu);
    if (!(q_weight > 5.0) || !std::isfinite(q_weight))
        throw ParamOutOfRange("q_weight must be > 5, got " + std::to_string(q_weight));
    if (n_steps < 0)
        throw ParamOutOfRange("n_steps must be >= 0, got " + std::to_string(n_steps));

    const double relax = p.a_nu * dt;
    p.blend = relax / (kappa + relax);
    p.keep = 1.0 - p.blend;
    if (!(p.blend > 0.0) || !(p.blend < 1.0))
        throw ParamOutOfRange("degenerate blend coefficient " + std::to_string(p.blend));
    return p;
}

StepContext make_step_context(const GridPair& grids, const SchemeParams& p, int threads) {
    StepContext ctx;
    ctx.table = build_foot_table(grids.spatial, grids.velocity, p.dt);
    ctx.weight = weighted_norm_table(grids.velocity, p.q_weight);
    ctx.f_tilde = make_distribution(grids);
    ctx.threads = std::max(1, std::min(threads, grids.spatial.n_cells));
    ctx.gauss.assign(static_cast<std::size_t>(ctx.threads),
                     std::vector<double>(grids.velocity.total_nodes()));
    ctx.tilde_fields.resize(static_cast<std::size_t>(grids.spatial.n_cells));
    return ctx;
}

namespace {

struct CellStats {
    double mass = 0.0;
    double mom1 = 0.0, mom2 = 0.0, mom3 = 0.0;
    double energy = 0.0;
    double min_value = std::numeric_limits<double>::infinity();
    double sup_w = 0.0;
    double tilde_w = 0.0;
    double gauss_w = 0.0;
    double min_eig = 0.0;
    double cancel = 0.0;
    bool finite = true;
};

void relax_cell(const DistributionGrid& ft, const SchemeParams& p, StepContext& ctx, int i,
                int tid, DistributionGrid& f_next, CellStats& st) {
    const VelocityGrid& vg = ft.velocity;
    const int n = vg.nodes_per_axis();
    auto cell_ft = ft.cell(i);

    MacroFields m = compute_moments(cell_ft, vg, p.nu_eff);
    ctx.tilde_fields[static_cast<std::size_t>(i)] = m;

    GaussianParams g = prepare(m);
    auto& gbuf = ctx.gauss[static_cast<std::size_t>(tid)];
    fill_gaussian(g, vg, gbuf);

    auto dst = f_next.cell(i);
    KahanSum mass, mom1, mom2, mom3, energy;
    KahanSum r0, r1x, r1y, r1z, r2;

    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) {
        const double v1 = vg.coord(a);
        for (int b = 0; b < n; ++b) {
            const double v2 = vg.coord(b);
            for (int c = 0; c < n; ++c, ++idx) {
                const double v3 = vg.coord(c);
                const double vsq = v1 * v1 + v2 * v2 + v3 * v3;

                const double fv = cell_ft[idx];
                const double gv = gbuf[idx];
                const double lo = std::min(fv, gv);
                const double hi = std::max(fv, gv);
                double out = p.keep * fv + p.blend * gv;
                // guard the exact entrywise convexity of the blend against a
                // final-ulp rounding
                if (out > hi) out = hi;
                if (out < lo) out = lo;
                dst[idx] = out;

                mass.add(out);
                mom1.add(out * v1);
                mom2.add(out * v2);
                mom3.add(out * v3);
                energy.add(out * vsq);

                const double dm = gv - fv;
                r0.add(dm);
                r1x.add(dm * v1);
                r1y.add(dm * v2);
                r1z.add(dm * v3);
                r2.add(dm * vsq);

                const double w = ctx.weight[idx];
                st.min_value = std::min(st.min_value, out);
                st.sup_w = std::max(st.sup_w, std::fabs(out) * w);
                st.tilde_w = std::max(st.tilde_w, std::fabs(fv) * w);
                st.gauss_w = std::max(st.gauss_w, std::fabs(gv) * w);
            }
        }
    }

    const double dv3 = vg.cell_volume();
    st.mass = mass.value();
    st.mom1 = mom1.value();
    st.mom2 = mom2.value();
    st.mom3 = mom3.value();
    st.energy = energy.value();
    st.min_eig = g.tensor.min_eigenvalue();
    st.cancel = std::max({std::fabs(r0.value()), std::fabs(r1x.value()), std::fabs(r1y.value()),
                          std::fabs(r1z.value()), std::fabs(r2.value())}) *
                dv3;
    st.finite = std::isfinite(st.mass) && std::isfinite(st.energy) && std::isfinite(st.sup_w) &&
                std::isfinite(st.min_value);
}

}  // namespace

void step_transported(const DistributionGrid& ft, const SchemeParams& p, StepContext& ctx,
                      DistributionGrid& f_next, StepReport& rep) {
    if (!(ft.spatial == ctx.table.spatial) || !(ft.velocity == ctx.table.velocity))
        throw GridMismatch("step context built for different grids");

    const int nc = ft.spatial.n_cells;
    f_next.spatial = ft.spatial;
    f_next.velocity = ft.velocity;
    f_next.values.resize(ft.values.size());
    f_next.time_index = ft.time_index + 1;

    std::vector<CellStats> stats(static_cast<std::size_t>(nc));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nc));

    auto work = [&](int begin, int end, int tid) {
        for (int i = begin; i < end; ++i) {
            try {
                relax_cell(ft, p, ctx, i, tid, f_next, stats[static_cast<std::size_t>(i)]);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
                return;
            }
        }
    };

    if (ctx.threads <= 1) {
        work(0, nc, 0);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (nc + ctx.threads - 1) / ctx.threads;
        for (int t = 0; t < ctx.threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(nc, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end, t);
        }
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < nc; ++i)
        if (errors[static_cast<std::size_t>(i)]) std::rethrow_exception(errors[static_cast<std::size_t>(i)]);

    // serial reduction in cell order: totals and extrema are thread-count
    // independent
    KahanSum mass, mom1, mom2, mom3, energy;
    rep = StepReport{};
    rep.step = f_next.time_index;
    rep.time = static_cast<double>(f_next.time_index) * p.dt;
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.tensor_min_eig = std::numeric_limits<double>::infinity();
    bool finite = true;
    for (int i = 0; i < nc; ++i) {
        const CellStats& st = stats[static_cast<std::size_t>(i)];
        mass.add(st.mass);
        mom1.add(st.mom1);
        mom2.add(st.mom2);
        mom3.add(st.mom3);
        energy.add(st.energy);
        rep.min_value = std::min(rep.min_value, st.min_value);
        rep.sup_norm_q = std::max(rep.sup_norm_q, st.sup_w);
        rep.tilde_norm_q = std::max(rep.tilde_norm_q, st.tilde_w);
        rep.gaussian_norm_q = std::max(rep.gaussian_norm_q, st.gauss_w);
        rep.tensor_min_eig = std::min(rep.tensor_min_eig, st.min_eig);
        rep.cancel_resid = std::max(rep.cancel_resid, st.cancel);
        finite = finite && st.finite;
    }
    const double measure = ft.velocity.cell_volume() * ft.spatial.dx;
    rep.mass = mass.value() * measure;
    rep.momentum = {mom1.value() * measure, mom2.value() * measure, mom3.value() * measure};
    rep.energy = energy.value() * measure;

    if (!finite || !std::isfinite(rep.mass) || !std::isfinite(rep.energy))
        throw NonFiniteState("non-finite state after update " + std::to_string(rep.step));
}

void step(const DistributionGrid& f, const SchemeParams& p, StepContext& ctx,
          DistributionGrid& f_next, StepReport& rep) {
    if (ctx.table.dt != p.dt) throw GridMismatch("foot table built for a different dt");
    reconstruct(f, ctx.table, ctx.f_tilde);
    step_transported(ctx.f_tilde, p, ctx, f_next, rep);
}

void step_bgk_reference(const DistributionGrid& f, const SchemeParams& p, const FootTable& table,
                        DistributionGrid& f_next) {
    DistributionGrid ft = reconstruct(f, table);

    const VelocityGrid& vg = f.velocity;
    const int n = vg.nodes_per_axis();
    const double dv3 = vg.cell_volume();
    constexpr double two_pi = 6.283185307179586476925287;

    f_next.spatial = f.spatial;
    f_next.velocity = f.velocity;
    f_next.values.resize(f.values.size());
    f_next.time_index = f.time_index + 1;

    // classical BGK blend: collision frequency 1
    const double denom = p.kappa + p.dt;
    const double blend = p.dt / denom;
    const double keep = 1.0 - blend;

    for (int i = 0; i < f.spatial.n_cells; ++i) {
        auto cell = ft.cell(i);
        KahanSum s0, s1x, s1y, s1z, s2;
        std::size_t idx = 0;
        for (int a = 0; a < n; ++a) {
            const double v1 = vg.coord(a);
            for (int b = 0; b < n; ++b) {
                const double v2 = vg.coord(b);
                for (int c = 0; c < n; ++c, ++idx) {
                    const double v3 = vg.coord(c);
                    const double fv = cell[idx];
                    s0.add(fv);
                    s1x.add(fv * v1);
                    s1y.add(fv * v2);
                    s1z.add(fv * v3);
                    s2.add(fv * (v1 * v1 + v2 * v2 + v3 * v3));
                }
            }
        }
        const double mass = s0.value();
        const double rho = mass * dv3;
        if (rho <= kRhoFloor) throw VacuumCell("vacuum cell in reference update");
        const double u1 = s1x.value() / mass;
        const double u2 = s1y.value() / mass;
        const double u3 = s1z.value() / mass;
        const double temp = (s2.value() / mass - (u1 * u1 + u2 * u2 + u3 * u3)) / 3.0;
        if (!(temp > 0.0)) throw TensorNotSPD("nonpositive temperature in reference update", temp);

        const double norm = rho * std::pow(two_pi * temp, -1.5);
        auto dst = f_next.cell(i);
        idx = 0;
        for (int a = 0; a < n; ++a) {
            const double d1 = vg.coord(a) - u1;
            for (int b = 0; b < n; ++b) {
                const double d2 = vg.coord(b) - u2;
                for (int c = 0; c < n; ++c, ++idx) {
                    const double d3 = vg.coord(c) - u3;
                    const double mx =
                        norm * std::exp(-(d1 * d1 + d2 * d2 + d3 * d3) / (2.0 * temp));
                    const double fv = cell[idx];
                    const double lo = std::min(fv, mx);
                    const double hi = std::max(fv, mx);
                    double out = keep * fv + blend * mx;
                    if (out > hi) out = hi;
                    if (out < lo) out = lo;
                    dst[idx] = out;
                }
            }
        }
    }
}

namespace {

DistributionGrid run_loop(DistributionGrid f, const InitialCondition* ic, const GridPair& grids,
                          const SchemeParams& p, int threads, const StepObserver& obs) {
    if (p.n_steps == 0) return f;
    StepContext ctx = make_step_context(grids, p, threads);
    DistributionGrid f_next = make_distribution(grids);
    StepReport rep;

    for (int nstep = 0; nstep < p.n_steps; ++nstep) {
        try {
            if (nstep == 0 && ic != nullptr) {
                DistributionGrid ft0 = reconstruct_initial(*ic, grids, p.dt);
                step_transported(ft0, p, ctx, f_next, rep);
            } else {
                step(f, p, ctx, f_next, rep);
            }
        } catch (Error& e) {
            e.step_index = nstep;
            throw;
        }
        std::swap(f, f_next);
        if (obs) obs(f, rep, ctx.tilde_fields);
    }
    return f;
}

}  // namespace

DistributionGrid run(const InitialCondition& ic, const GridPair& grids, const SchemeParams& p,
                     int threads, const StepObserver& obs) {
    return run_loop(sample_ic(ic, grids), &ic, grids, p, threads, obs);
}

DistributionGrid run_lattice(DistributionGrid f0, const SchemeParams& p, int threads,
                             const StepObserver& obs) {
    const GridPair grids{f0.spatial, f0.velocity};
    return run_loop(std::move(f0), nullptr, grids, p, threads, obs);
}

}  // namespace esbgk
