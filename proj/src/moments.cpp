#include "esbgk/moments.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "esbgk/kahan.hpp"

namespace esbgk {

double collision_frequency(double nu) {
    if (!(nu >= -0.5) || !(nu < 1.0))
        throw ParamOutOfRange("nu must lie in [-1/2, 1), got " + std::to_string(nu));
    return 1.0 / (1.0 - nu);
}

double effective_nu(double kappa, double nu, double dt) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw ParamOutOfRange("kappa must be positive and finite, got " + std::to_string(kappa));
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ParamOutOfRange("dt must be positive and finite, got " + std::to_string(dt));
    if (!(nu > -0.5) || !(nu < 1.0))
        throw ParamOutOfRange("nu must lie in (-1/2, 1), got " + std::to_string(nu));
    return kappa * nu / (kappa + dt);
}

SymTensor3 tensor_from_T_theta(double temp, const SymTensor3& theta, double nu_eff) {
    const double w = 1.0 - nu_eff;
    SymTensor3 t;
    t.a11 = w * temp + nu_eff * theta.a11;
    t.a22 = w * temp + nu_eff * theta.a22;
    t.a33 = w * temp + nu_eff * theta.a33;
    t.a12 = nu_eff * theta.a12;
    t.a13 = nu_eff * theta.a13;
    t.a23 = nu_eff * theta.a23;
    return t;
}

MacroFields compute_moments(std::span<const double> cell, const VelocityGrid& vg, double nu_eff) {
    const int n = vg.nodes_per_axis();
    if (cell.size() != vg.total_nodes())
        throw GridMismatch("cell slice size does not match velocity grid");

    std::vector<double> vc(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) vc[static_cast<std::size_t>(a)] = vg.coord(a);

    KahanSum s0, s1x, s1y, s1z, s11, s22, s33, s12, s13, s23;
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) {
        const double v1 = vc[static_cast<std::size_t>(a)];
        for (int b = 0; b < n; ++b) {
            const double v2 = vc[static_cast<std::size_t>(b)];
            for (int c = 0; c < n; ++c, ++idx) {
                const double v3 = vc[static_cast<std::size_t>(c)];
                const double f = cell[idx];
                s0.add(f);
                s1x.add(f * v1);
                s1y.add(f * v2);
                s1z.add(f * v3);
                s11.add(f * v1 * v1);
                s22.add(f * v2 * v2);
                s33.add(f * v3 * v3);
                s12.add(f * v1 * v2);
                s13.add(f * v1 * v3);
                s23.add(f * v2 * v3);
            }
        }
    }

    const double mass = s0.value();
    MacroFields m;
    m.rho = mass * vg.cell_volume();
    if (!std::isfinite(m.rho)) {
        for (double f : cell)
            if (!std::isfinite(f)) throw NonFiniteInput("NaN/Inf in distribution slice");
        throw NonFiniteInput("non-finite moment sum");
    }
    if (m.rho <= kRhoFloor)
        throw VacuumCell("cell density " + std::to_string(m.rho) + " at or below vacuum floor");

    m.u = {s1x.value() / mass, s1y.value() / mass, s1z.value() / mass};

    // Centered tensor from raw second moments; must agree with the direct
    // centered sum to roundoff (checked in tests against a two-pass oracle).
    m.theta.a11 = s11.value() / mass - m.u[0] * m.u[0];
    m.theta.a22 = s22.value() / mass - m.u[1] * m.u[1];
    m.theta.a33 = s33.value() / mass - m.u[2] * m.u[2];
    m.theta.a12 = s12.value() / mass - m.u[0] * m.u[1];
    m.theta.a13 = s13.value() / mass - m.u[0] * m.u[2];
    m.theta.a23 = s23.value() / mass - m.u[1] * m.u[2];

    m.temp = m.theta.trace() / 3.0;
    if (!std::isfinite(m.temp) || !std::isfinite(m.u[0]) || !std::isfinite(m.u[1]) ||
        !std::isfinite(m.u[2]))
        throw NonFiniteInput("non-finite macroscopic fields");

    m.tensor_nu = tensor_from_T_theta(m.temp, m.theta, nu_eff);
    return m;
}

}  // namespace esbgk
