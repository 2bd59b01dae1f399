#include "esbgk/gaussian.hpp"

#include <cmath>
#include <string>

namespace esbgk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

GaussianParams prepare(double rho, const std::array<double, 3>& u, const SymTensor3& tensor) {
    if (!std::isfinite(rho) || !std::isfinite(u[0]) || !std::isfinite(u[1]) ||
        !std::isfinite(u[2]) || !std::isfinite(tensor.a11) || !std::isfinite(tensor.a22) ||
        !std::isfinite(tensor.a33) || !std::isfinite(tensor.a12) || !std::isfinite(tensor.a13) ||
        !std::isfinite(tensor.a23))
        throw NonFiniteInput("non-finite Gaussian parameters");
    if (rho <= kRhoFloor)
        throw VacuumCell("Gaussian density " + std::to_string(rho) + " at or below vacuum floor");

    const double floor = 1e-14 * tensor.trace();
    const double min_eig = tensor.min_eigenvalue();
    if (!(min_eig > floor) || !std::isfinite(min_eig))
        throw TensorNotSPD("relaxation tensor not safely positive definite, min eigenvalue " +
                               std::to_string(min_eig),
                           min_eig);

    GaussianParams g;
    g.rho = rho;
    g.u = u;
    g.tensor = tensor;
    g.det = tensor.det();
    g.inv = tensor.inverse();
    g.norm_const = rho / std::sqrt(kTwoPi * kTwoPi * kTwoPi * g.det);
    return g;
}

double eval(const GaussianParams& g, double v1, double v2, double v3) {
    const double d1 = v1 - g.u[0];
    const double d2 = v2 - g.u[1];
    const double d3 = v3 - g.u[2];
    return g.norm_const * std::exp(-0.5 * g.inv.quadratic_form(d1, d2, d3));
}

void fill_gaussian(const GaussianParams& g, const VelocityGrid& vg, std::span<double> out) {
    const int n = vg.nodes_per_axis();
    if (out.size() != vg.total_nodes())
        throw GridMismatch("output slice size does not match velocity grid");

    // Shares eval()'s arithmetic so filled values equal eval at every node
    // bitwise; exp dominates the cost, hoisting would buy nothing.
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) {
        const double v1 = vg.coord(a);
        for (int b = 0; b < n; ++b) {
            const double v2 = vg.coord(b);
            for (int c = 0; c < n; ++c, ++idx) {
                out[idx] = eval(g, v1, v2, vg.coord(c));
            }
        }
    }
}

}  // namespace esbgk
