#pragma once

#include <array>

#include "esbgk/grid.hpp"

namespace esbgk {

enum class ICKind {
    UniformMaxwellian,
    SmoothWave,
    AnisotropicGaussian,
    TwoMaxwellianMix,
};

// Catalog of smooth 1-periodic initial data, strictly positive in v with a
// Gaussian envelope. Construct through the factory functions, which validate.
struct InitialCondition {
    ICKind kind = ICKind::UniformMaxwellian;

    double rho0 = 1.0;
    std::array<double, 3> u0 = {0.0, 0.0, 0.0};
    double temp0 = 1.0;

    // SmoothWave: rho(x) = rho0*(1 + delta*sin(2*pi*wave_k*x))
    double delta = 0.0;
    int wave_k = 1;

    // AnisotropicGaussian: per-axis temperatures
    std::array<double, 3> temp_axes = {1.0, 1.0, 1.0};

    // TwoMaxwellianMix second component
    double rho_b = 0.0;
    std::array<double, 3> u_b = {0.0, 0.0, 0.0};
    double temp_b = 1.0;
};

InitialCondition uniform_maxwellian(double rho0, const std::array<double, 3>& u0, double temp0);
InitialCondition smooth_wave(double rho0, double delta, int wave_k,
                             const std::array<double, 3>& u0, double temp0);
InitialCondition anisotropic_gaussian(double rho0, const std::array<double, 3>& u0,
                                      const std::array<double, 3>& temp_axes);
InitialCondition two_maxwellian_mix(double rho_a, const std::array<double, 3>& u_a, double temp_a,
                                    double rho_b, const std::array<double, 3>& u_b, double temp_b);

// Pointwise f0(x, v); analytic in x, so any real x is accepted (1-periodic by
// construction). Strictly positive.
double eval_ic(const InitialCondition& ic, double x, double v1, double v2, double v3);

// Exact node sampling: f(i,j) = f0(x_i, v_j), time_index = 0.
DistributionGrid sample_ic(const InitialCondition& ic, const GridPair& grids);

}  // namespace esbgk
