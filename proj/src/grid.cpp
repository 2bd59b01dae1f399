#include "esbgk/grid.hpp"

#include <cmath>
#include <string>

namespace esbgk {

int wrap_index(int i, int n_cells) {
    int r = i % n_cells;
    return r < 0 ? r + n_cells : r;
}

std::vector<double> weighted_norm_table(const VelocityGrid& vg, double q) {
    const int n = vg.nodes_per_axis();
    std::vector<double> w(vg.total_nodes());
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) {
        const double v1 = vg.coord(a);
        for (int b = 0; b < n; ++b) {
            const double v2 = vg.coord(b);
            for (int c = 0; c < n; ++c, ++idx) {
                const double v3 = vg.coord(c);
                const double speed = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
                w[idx] = std::pow(1.0 + speed, q);
            }
        }
    }
    return w;
}

GridPair make_grids(int n_cells, int j_half, double dv) {
    if (n_cells < 2)
        throw NonPositiveDimension("n_cells must be >= 2, got " + std::to_string(n_cells));
    if (j_half < 1)
        throw NonPositiveDimension("j_half must be >= 1, got " + std::to_string(j_half));
    if (!(dv > 0.0) || !std::isfinite(dv))
        throw NonPositiveDimension("dv must be positive and finite, got " + std::to_string(dv));

    GridPair g;
    g.spatial.n_cells = n_cells;
    g.spatial.dx = 1.0 / static_cast<double>(n_cells);
    g.velocity.j_half = j_half;
    g.velocity.dv = dv;
    return g;
}

DistributionGrid make_distribution(const GridPair& grids) {
    DistributionGrid f;
    f.spatial = grids.spatial;
    f.velocity = grids.velocity;
    f.values.assign(static_cast<std::size_t>(grids.spatial.n_cells) * grids.velocity.total_nodes(),
                    0.0);
    f.time_index = 0;
    return f;
}

void DistributionGrid::validate() const {
    double max_abs = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw NonFiniteInput("distribution contains NaN/Inf");
        double a = std::fabs(v);
        if (a > max_abs) max_abs = a;
    }
    const double neg_floor = -1e-14 * max_abs;
    for (double v : values) {
        if (v < neg_floor)
            throw NonFiniteInput("distribution has negative entries beyond roundoff: " +
                                 std::to_string(v));
    }
}

void check_same_grids(const DistributionGrid& a, const DistributionGrid& b) {
    if (!(a.spatial == b.spatial) || !(a.velocity == b.velocity))
        throw GridMismatch("operands live on different grids");
}

}  // namespace esbgk
