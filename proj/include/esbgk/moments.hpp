#pragma once

#include <array>
#include <span>

#include "esbgk/grid.hpp"
#include "esbgk/sym_tensor.hpp"

namespace esbgk {

// Density below this is vacuum, reported as an error rather than clamped.
inline constexpr double kRhoFloor = 1e-30;

// Macroscopic fields of one spatial cell. theta is the centered second-moment
// (pressure) tensor per unit density, temp = trace(theta)/3 exactly as stored,
// tensor_nu = (1-nu_eff)*temp*Id + nu_eff*theta.
struct MacroFields {
    double rho = 0.0;
    std::array<double, 3> u = {0.0, 0.0, 0.0};
    double temp = 0.0;
    SymTensor3 theta;
    SymTensor3 tensor_nu;
};

// 1/(1 - nu), monotone increasing; nu in [-1/2, 1).
double collision_frequency(double nu);

// kappa*nu/(kappa + dt); kappa, dt > 0, nu in (-1/2, 1). Result keeps nu's
// sign and shrinks toward 0 as dt grows.
double effective_nu(double kappa, double nu, double dt);

SymTensor3 tensor_from_T_theta(double temp, const SymTensor3& theta, double nu_eff);

// Discrete moments of one cell: rho = sum f dv^3, rho*U = sum f v dv^3,
// theta from raw second moments minus U x U, temp = trace/3. Summation is
// compensated and runs in lexicographic node order.
MacroFields compute_moments(std::span<const double> cell, const VelocityGrid& vg, double nu_eff);

}  // namespace esbgk
