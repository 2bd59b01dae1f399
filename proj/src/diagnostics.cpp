#include "esbgk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "esbgk/gaussian.hpp"
#include "esbgk/kahan.hpp"

namespace esbgk {

namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr double kSqrt2 = 1.414213562373095048801689;
}  // namespace

NormSet norm_set(const DistributionGrid& f, double q) {
    const std::vector<double> w = weighted_norm_table(f.velocity, q);
    NormSet n;
    n.q = q;
    const std::size_t nv = f.velocity.total_nodes();
    for (int i = 0; i < f.spatial.n_cells; ++i) {
        auto cell = f.cell(i);
        for (std::size_t k = 0; k < nv; ++k) {
            const double a = std::fabs(cell[k]);
            n.sup = std::max(n.sup, a);
            n.weighted_sup = std::max(n.weighted_sup, a * w[k]);
        }
    }
    return n;
}

double weighted_sup_norm(const DistributionGrid& f, double q) {
    return norm_set(f, q).weighted_sup;
}

Totals conserved_totals(const DistributionGrid& f) {
    const VelocityGrid& vg = f.velocity;
    const int n = vg.nodes_per_axis();
    KahanSum s0, s1x, s1y, s1z, s2;
    for (int i = 0; i < f.spatial.n_cells; ++i) {
        auto cell = f.cell(i);
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
    }
    const double measure = vg.cell_volume() * f.spatial.dx;
    Totals t;
    t.mass = s0.value() * measure;
    t.momentum = {s1x.value() * measure, s1y.value() * measure, s1z.value() * measure};
    t.energy = s2.value() * measure;
    return t;
}

double tail_mass(const MacroFields& m, const VelocityGrid& vg) {
    const double lam = std::max(m.tensor_nu.eigenvalues()[2], 0.0);
    if (lam == 0.0) return 0.0;  // point mass sits inside any box with v_max >= |U|
    const double sigma = std::sqrt(lam);
    const double vmax = vg.v_max();

    double inside = 1.0;
    for (int c = 0; c < 3; ++c) {
        const double zhi = (vmax - m.u[static_cast<std::size_t>(c)]) / sigma;
        const double zlo = (-vmax - m.u[static_cast<std::size_t>(c)]) / sigma;
        // Phi(zhi) - Phi(zlo), computed with erfc for far tails
        const double p = 0.5 * (std::erfc(-zhi / kSqrt2) - std::erfc(-zlo / kSqrt2));
        inside *= std::max(p, 0.0);
    }
    return m.rho * std::max(1.0 - inside, 0.0);
}

HValue h_functional(const DistributionGrid& f) {
    KahanSum s;
    HValue h;
    for (double v : f.values) {
        if (v > 0.0) {
            s.add(v * std::log(v));
        } else {
            h.excluded += 1;
        }
    }
    h.value = s.value() * f.velocity.cell_volume() * f.spatial.dx;
    return h;
}

void ledger_update(StabilityLedger& ledger, const StepReport& rep,
                   const std::vector<MacroFields>& tilde_fields, const VelocityGrid& vg,
                   const SchemeParams& p) {
    if (ledger.rows.empty()) {
        ledger.q = p.q_weight;
        ledger.dv = vg.dv;
    }

    LedgerRow row;
    row.step = rep.step;
    row.time = rep.time;
    row.tensor_min_eig = rep.tensor_min_eig;
    row.tilde_norm = rep.tilde_norm_q;
    row.gaussian_norm = rep.gaussian_norm_q;
    row.gaussian_ratio = rep.gaussian_norm_q / rep.tilde_norm_q;

    const double q = p.q_weight;
    const double fn = rep.tilde_norm_q;
    double inf = std::numeric_limits<double>::infinity();
    row.min_rho = inf;
    row.min_temp = inf;
    row.radius_density = inf;
    row.radius_energy = inf;
    row.radius_flow = inf;

    for (const MacroFields& m : tilde_fields) {
        row.min_rho = std::min(row.min_rho, m.rho);
        row.max_rho = std::max(row.max_rho, m.rho);
        row.min_temp = std::min(row.min_temp, m.temp);
        row.max_temp = std::max(row.max_temp, m.temp);
        const double usq = m.u[0] * m.u[0] + m.u[1] * m.u[1] + m.u[2] * m.u[2];
        row.max_abs_u = std::max(row.max_abs_u, std::sqrt(usq));

        // optimizing radii of the discrete moment bounds; the small-dv regime
        // needs each to stay above dv
        const double r1 = std::pow(3.0 * m.rho * m.temp / (8.0 * kPi * fn), 1.0 / 5.0);
        const double r2 = std::pow(kPi / (q - 5.0) * fn / m.rho, 1.0 / (q - 3.0));
        const double r3 = std::pow(std::sqrt(3.0) * std::pow(m.rho, 1.0 / q) *
                                       std::sqrt(3.0 * m.temp + usq) * std::sqrt(m.temp) /
                                       std::pow(8.0 * kPi * fn, 1.0 / q),
                                   q / (q + 3.0));
        row.radius_density = std::min(row.radius_density, r1);
        row.radius_energy = std::min(row.radius_energy, r2);
        row.radius_flow = std::min(row.radius_flow, r3);

        row.tail_mass_max = std::max(row.tail_mass_max, tail_mass(m, vg));
    }

    ledger.rows.push_back(row);
}

double QuadTolerance::eps() const {
    return std::max({mass_resid, momentum_resid, energy_resid});
}

QuadTolerance measure_quad_tolerance(const DistributionGrid& f0, const SchemeParams& p) {
    const VelocityGrid& vg = f0.velocity;
    const int n = vg.nodes_per_axis();
    const double dv3 = vg.cell_volume();
    const std::vector<double> w = weighted_norm_table(vg, p.q_weight);
    std::vector<double> gbuf(vg.total_nodes());

    QuadTolerance qt;
    for (int i = 0; i < f0.spatial.n_cells; ++i) {
        auto cell = f0.cell(i);
        const MacroFields m = compute_moments(cell, vg, p.nu_eff);
        const GaussianParams g = prepare(m);
        fill_gaussian(g, vg, gbuf);

        KahanSum r0, r1x, r1y, r1z, r2;
        double pw = 0.0;
        std::size_t idx = 0;
        for (int a = 0; a < n; ++a) {
            const double v1 = vg.coord(a);
            for (int b = 0; b < n; ++b) {
                const double v2 = vg.coord(b);
                for (int c = 0; c < n; ++c, ++idx) {
                    const double v3 = vg.coord(c);
                    const double dm = gbuf[idx] - cell[idx];
                    r0.add(dm);
                    r1x.add(dm * v1);
                    r1y.add(dm * v2);
                    r1z.add(dm * v3);
                    r2.add(dm * (v1 * v1 + v2 * v2 + v3 * v3));
                    pw = std::max(pw, std::fabs(dm) * w[idx]);
                }
            }
        }
        const double usq = m.u[0] * m.u[0] + m.u[1] * m.u[1] + m.u[2] * m.u[2];
        const double mom_scale = m.rho * std::sqrt(std::max(m.temp, 1e-300));
        const double en_scale = m.rho * (3.0 * m.temp + usq);
        qt.mass_resid = std::max(qt.mass_resid, std::fabs(r0.value()) * dv3 / m.rho);
        const double mr = std::max({std::fabs(r1x.value()), std::fabs(r1y.value()),
                                    std::fabs(r1z.value())}) *
                          dv3 / mom_scale;
        qt.momentum_resid = std::max(qt.momentum_resid, mr);
        qt.energy_resid = std::max(qt.energy_resid, std::fabs(r2.value()) * dv3 / en_scale);
        qt.pointwise_resid = std::max(qt.pointwise_resid, pw);
    }
    return qt;
}

}  // namespace esbgk
