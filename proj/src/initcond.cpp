#include "esbgk/initcond.hpp"

#include <cmath>
#include <string>

namespace esbgk {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

void check_temp(double t, const char* name) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw ParamOutOfRange(std::string(name) + " must be positive and finite, got " +
                              std::to_string(t));
}

void check_rho(double r, const char* name) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw ParamOutOfRange(std::string(name) + " must be positive and finite, got " +
                              std::to_string(r));
}

void check_vel(const std::array<double, 3>& u) {
    for (double c : u)
        if (!std::isfinite(c)) throw ParamOutOfRange("bulk velocity must be finite");
}

double maxwellian(double rho, const std::array<double, 3>& u, double temp, double v1, double v2,
                  double v3) {
    const double d1 = v1 - u[0];
    const double d2 = v2 - u[1];
    const double d3 = v3 - u[2];
    const double tt = kTwoPi * temp;
    return rho / std::sqrt(tt * tt * tt) * std::exp(-(d1 * d1 + d2 * d2 + d3 * d3) / (2.0 * temp));
}

}  // namespace

InitialCondition uniform_maxwellian(double rho0, const std::array<double, 3>& u0, double temp0) {
    check_rho(rho0, "rho0");
    check_vel(u0);
    check_temp(temp0, "temp0");
    InitialCondition ic;
    ic.kind = ICKind::UniformMaxwellian;
    ic.rho0 = rho0;
    ic.u0 = u0;
    ic.temp0 = temp0;
    return ic;
}

InitialCondition smooth_wave(double rho0, double delta, int wave_k,
                             const std::array<double, 3>& u0, double temp0) {
    check_rho(rho0, "rho0");
    check_vel(u0);
    check_temp(temp0, "temp0");
    // |delta| < rho0/2 keeps positivity analytic, with margin to spare.
    if (!(std::fabs(delta) < rho0 / 2.0))
        throw ParamOutOfRange("wave amplitude |delta| must be < rho0/2, got " +
                              std::to_string(delta));
    InitialCondition ic;
    ic.kind = ICKind::SmoothWave;
    ic.rho0 = rho0;
    ic.delta = delta;
    ic.wave_k = wave_k;
    ic.u0 = u0;
    ic.temp0 = temp0;
    return ic;
}

InitialCondition anisotropic_gaussian(double rho0, const std::array<double, 3>& u0,
                                      const std::array<double, 3>& temp_axes) {
    check_rho(rho0, "rho0");
    check_vel(u0);
    check_temp(temp_axes[0], "temp_axes[0]");
    check_temp(temp_axes[1], "temp_axes[1]");
    check_temp(temp_axes[2], "temp_axes[2]");
    InitialCondition ic;
    ic.kind = ICKind::AnisotropicGaussian;
    ic.rho0 = rho0;
    ic.u0 = u0;
    ic.temp_axes = temp_axes;
    return ic;
}

InitialCondition two_maxwellian_mix(double rho_a, const std::array<double, 3>& u_a, double temp_a,
                                    double rho_b, const std::array<double, 3>& u_b, double temp_b) {
    check_rho(rho_a, "rho_a");
    check_rho(rho_b, "rho_b");
    check_vel(u_a);
    check_vel(u_b);
    check_temp(temp_a, "temp_a");
    check_temp(temp_b, "temp_b");
    InitialCondition ic;
    ic.kind = ICKind::TwoMaxwellianMix;
    ic.rho0 = rho_a;
    ic.u0 = u_a;
    ic.temp0 = temp_a;
    ic.rho_b = rho_b;
    ic.u_b = u_b;
    ic.temp_b = temp_b;
    return ic;
}

double eval_ic(const InitialCondition& ic, double x, double v1, double v2, double v3) {
    switch (ic.kind) {
        case ICKind::UniformMaxwellian:
            return maxwellian(ic.rho0, ic.u0, ic.temp0, v1, v2, v3);
        case ICKind::SmoothWave: {
            const double rho =
                ic.rho0 * (1.0 + ic.delta * std::sin(kTwoPi * static_cast<double>(ic.wave_k) * x));
            return maxwellian(rho, ic.u0, ic.temp0, v1, v2, v3);
        }
        case ICKind::AnisotropicGaussian: {
            const double d1 = v1 - ic.u0[0];
            const double d2 = v2 - ic.u0[1];
            const double d3 = v3 - ic.u0[2];
            const double norm = ic.rho0 / std::sqrt(kTwoPi * ic.temp_axes[0] * kTwoPi *
                                                    ic.temp_axes[1] * kTwoPi * ic.temp_axes[2]);
            return norm * std::exp(-0.5 * (d1 * d1 / ic.temp_axes[0] + d2 * d2 / ic.temp_axes[1] +
                                           d3 * d3 / ic.temp_axes[2]));
        }
        case ICKind::TwoMaxwellianMix:
            return maxwellian(ic.rho0, ic.u0, ic.temp0, v1, v2, v3) +
                   maxwellian(ic.rho_b, ic.u_b, ic.temp_b, v1, v2, v3);
    }
    throw ParamOutOfRange("unknown initial condition kind");
}

DistributionGrid sample_ic(const InitialCondition& ic, const GridPair& grids) {
    DistributionGrid f = make_distribution(grids);
    const int n = f.velocity.nodes_per_axis();
    std::size_t idx = 0;
    for (int i = 0; i < f.spatial.n_cells; ++i) {
        const double x = f.spatial.coord(i);
        for (int a = 0; a < n; ++a) {
            const double v1 = f.velocity.coord(a);
            for (int b = 0; b < n; ++b) {
                const double v2 = f.velocity.coord(b);
                for (int c = 0; c < n; ++c, ++idx) {
                    f.values[idx] = eval_ic(ic, x, v1, v2, f.velocity.coord(c));
                }
            }
        }
    }
    return f;
}

}  // namespace esbgk
