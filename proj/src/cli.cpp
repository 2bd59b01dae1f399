#include "esbgk/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "esbgk/diagnostics.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/harness.hpp"
#include "esbgk/io.hpp"
#include "esbgk/stepper.hpp"

#include "json.hpp"

namespace esbgk {

namespace {

std::string utc_now() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

nlohmann::json totals_json(const Totals& t) {
    return {{"mass", t.mass}, {"momentum", t.momentum}, {"energy", t.energy}};
}

}  // namespace

int cmd_run(const RunConfig& cfg) {
    GridPair grids = make_grids(cfg.n_cells, cfg.j_half, cfg.dv);
    SchemeParams p = make_scheme_params(cfg.kappa, cfg.nu, cfg.dt, cfg.q_weight, cfg.n_steps);
    const std::filesystem::path dir(cfg.output.dir);
    std::filesystem::create_directories(dir);

    DistributionGrid f0 = sample_ic(cfg.ic, grids);
    QuadTolerance quad = measure_quad_tolerance(f0, p);
    Totals t0 = conserved_totals(f0);

    StabilityLedger ledger;
    ledger.q = p.q_weight;
    ledger.dv = grids.velocity.dv;
    DiagnosticsCsv csv;

    auto observer = [&](const DistributionGrid& f_now, const StepReport& rep,
                        const std::vector<MacroFields>& tilde_fields) {
        ledger_update(ledger, rep, tilde_fields, grids.velocity, p);
        csv.add_row(rep, ledger.rows.back(), h_functional(f_now));
        if (cfg.output.state_cadence > 0 && rep.step % cfg.output.state_cadence == 0 &&
            rep.step != p.n_steps)
            dump_state(f_now, p, (dir / ("state_" + std::to_string(rep.step) + ".bin")).string());
    };

    DistributionGrid f = run(cfg.ic, grids, p, cfg.threads, observer);
    Totals t_final = conserved_totals(f);

    dump_state(f, p, (dir / "state.bin").string());
    csv.write((dir / "diagnostics.csv").string());

    // The only output with a timestamp; state and CSV stay byte-reproducible.
    nlohmann::json meta = {
        {"created_utc", utc_now()},
        {"seed", cfg.seed},
        {"threads", cfg.threads},
        {"quad_residuals",
         {{"mass", quad.mass_resid},
          {"momentum", quad.momentum_resid},
          {"energy", quad.energy_resid},
          {"pointwise", quad.pointwise_resid},
          {"eps", quad.eps()}}},
        {"initial_totals", totals_json(t0)},
        {"final_totals", totals_json(t_final)},
        {"config", nlohmann::json::parse(config_json(cfg))},
    };
    atomic_write_text((dir / "run_meta.json").string(), meta.dump(2) + "\n");

    std::printf("ran %d steps to t = %.6g: mass %.12g -> %.12g, min f %.3e\n", p.n_steps,
                p.n_steps * p.dt, t0.mass, t_final.mass,
                ledger.rows.empty() ? 0.0 : f.values[0]);
    std::printf("wrote %s\n", (dir / "diagnostics.csv").string().c_str());
    return 0;
}

int cmd_converge(const RunConfig& cfg) {
    RefinementLadder ladder =
        make_ladder(cfg.converge.coupling, cfg.converge.final_time, cfg.converge.steps_per_level,
                    cfg.j_half, cfg.dv, cfg.converge.n_cells_fixed);
    ConvergenceReport report =
        self_converge(ladder, cfg.ic, cfg.kappa, cfg.nu, cfg.q_weight, cfg.threads);

    const std::filesystem::path dir(cfg.output.dir);
    std::filesystem::create_directories(dir);
    atomic_write_text((dir / "convergence.json").string(), convergence_json(report));
    atomic_write_text((dir / "convergence.csv").string(), convergence_csv(report));

    std::printf("%-8s %-12s %-12s %-12s %s\n", "steps", "dt", "error", "order", "tail_mass");
    for (const LevelResult& lv : report.levels)
        std::printf("%-8d %-12.5g %-12.5g %-12.4g %.3e\n", lv.n_steps, lv.dt, lv.error,
                    lv.local_order, lv.tail_mass);
    if (report.degenerate)
        std::printf("degenerate ladder, no order fit\n");
    else
        std::printf("fitted order %.4g over %zu levels\n", report.fitted_order,
                    report.levels.size());
    std::printf("wrote %s\n", (dir / "convergence.json").string().c_str());
    return report.degenerate ? 1 : 0;
}

namespace {

bool check_line(bool ok, const char* name, const std::string& detail) {
    std::printf("[%s] %-28s %s\n", ok ? " OK " : "FAIL", name, detail.c_str());
    return ok;
}

std::string fmt(const char* pattern, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

int cmd_check(const RunConfig& cfg) {
    GridPair grids = make_grids(cfg.n_cells, cfg.j_half, cfg.dv);
    const int n_check = std::max(1, std::min(cfg.n_steps, 20));
    SchemeParams p = make_scheme_params(cfg.kappa, cfg.nu, cfg.dt, cfg.q_weight, n_check);

    DistributionGrid f = sample_ic(cfg.ic, grids);
    const DistributionGrid f0 = f;
    QuadTolerance quad = measure_quad_tolerance(f0, p);
    Totals t0 = conserved_totals(f0);
    const double temp_scale = std::max(t0.energy / (3.0 * t0.mass), 1e-300);
    const double norm0 = weighted_sup_norm(f0, p.q_weight);

    StepContext ctx = make_step_context(grids, p, cfg.threads);
    DistributionGrid f_next = make_distribution(grids);
    StepReport rep;

    double worst_drift = 0.0;
    long long positivity_viol = 0;
    double min_f = std::numeric_limits<double>::infinity();
    int expansion_viol = 0;
    double prev_sup = norm0;
    double worst_sandwich = 0.0;

    for (int n = 0; n < n_check; ++n) {
        step(f, p, ctx, f_next, rep);

        Totals t = conserved_totals(f_next);
        double drift = std::fabs(t.mass - t0.mass) / t0.mass;
        for (int k = 0; k < 3; ++k)
            drift = std::max(drift, std::fabs(t.momentum[k] - t0.momentum[k]) /
                                        (t0.mass * std::sqrt(temp_scale)));
        drift = std::max(drift, std::fabs(t.energy - t0.energy) / t0.energy);
        worst_drift = std::max(worst_drift, drift);

        for (std::size_t k = 0; k < f_next.values.size(); ++k) {
            double floor_k = p.keep * ctx.f_tilde.values[k];
            if (f_next.values[k] < floor_k) ++positivity_viol;
            min_f = std::min(min_f, f_next.values[k]);
        }

        if (rep.tilde_norm_q > prev_sup) ++expansion_viol;
        prev_sup = rep.sup_norm_q;

        const double lo_f = std::min(1.0 - p.nu_eff, 1.0 + 2.0 * p.nu_eff);
        const double hi_f = std::max(1.0 - p.nu_eff, 1.0 + 2.0 * p.nu_eff);
        for (const MacroFields& m : ctx.tilde_fields) {
            std::array<double, 3> eig = m.tensor_nu.eigenvalues();
            double lo = lo_f * m.temp, hi = hi_f * m.temp;
            double over = std::max(lo - eig[0], eig[2] - hi) / std::max(m.temp, 1e-300);
            double det = m.tensor_nu.det();
            double dover = std::max(lo * lo * lo - det, det - hi * hi * hi) /
                           std::max(m.temp * m.temp * m.temp, 1e-300);
            worst_sandwich = std::max({worst_sandwich, over, dover});
        }

        std::swap(f.values, f_next.values);
        f.time_index = f_next.time_index;
    }

    double bgk_dev = bgk_equivalence(grids, cfg.ic, cfg.kappa, p.dt, p.q_weight,
                                     std::min(n_check, 5), cfg.threads);

    DistributionGrid serial = run_lattice(f0, p, 1);
    DistributionGrid threaded = run_lattice(f0, p, 2);
    bool bitwise = std::memcmp(serial.values.data(), threaded.values.data(),
                               serial.values.size() * sizeof(double)) == 0;

    bool ok = true;
    ok &= check_line(worst_drift <= 10.0 * quad.eps(), "conservation drift",
                     fmt("max %.3e, budget %.3e", worst_drift, 10.0 * quad.eps()));
    ok &= check_line(positivity_viol == 0 && min_f > 0.0, "positivity floor",
                     fmt("min f %.3e, violations %.0f", min_f,
                         static_cast<double>(positivity_viol)));
    ok &= check_line(expansion_viol == 0, "transport non-expansion",
                     fmt("%.0f violations over %.0f steps", static_cast<double>(expansion_viol),
                         static_cast<double>(n_check)));
    ok &= check_line(worst_sandwich <= 1e-10, "tensor eigenvalue bounds",
                     fmt("worst overshoot %.3e, allowed %.1e", worst_sandwich, 1e-10));
    ok &= check_line(bgk_dev <= 1e-12 * norm0, "classical limit at nu = 0",
                     fmt("deviation %.3e, allowed %.3e", bgk_dev, 1e-12 * norm0));
    ok &= check_line(bitwise, "thread determinism",
                     bitwise ? "byte-identical across 1 and 2 threads" : "states differ");
    return ok ? 0 : 1;
}

}  // namespace esbgk
