#pragma once

#include <array>
#include <span>

#include "esbgk/grid.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/sym_tensor.hpp"

namespace esbgk {

// Anisotropic Gaussian rho/sqrt(det(2*pi*tensor)) * exp(-(v-u).tensor^-1.(v-u)/2)
// with the inverse, determinant and normalization cached at prepare() time.
struct GaussianParams {
    double rho = 0.0;
    std::array<double, 3> u = {0.0, 0.0, 0.0};
    SymTensor3 tensor;
    SymTensor3 inv;
    double det = 0.0;
    double norm_const = 0.0;
};

// SPD gate: smallest eigenvalue must exceed 1e-14 * trace. Throws TensorNotSPD
// (carrying the offending eigenvalue), VacuumCell, NonFiniteInput.
GaussianParams prepare(double rho, const std::array<double, 3>& u, const SymTensor3& tensor);

inline GaussianParams prepare(const MacroFields& m) { return prepare(m.rho, m.u, m.tensor_nu); }

double eval(const GaussianParams& g, double v1, double v2, double v3);

// Writes the Gaussian at every lattice node of one cell, lexicographic order,
// strictly positive results in sane regimes (no renormalization: discrete
// moments of the output differ from (rho, u, tensor) by quadrature error only).
void fill_gaussian(const GaussianParams& g, const VelocityGrid& vg, std::span<double> out);

}  // namespace esbgk
