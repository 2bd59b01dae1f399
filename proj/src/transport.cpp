#include "esbgk/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace esbgk {

FootTable build_foot_table(const SpatialGrid& sg, const VelocityGrid& vg, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ParamOutOfRange("dt must be positive and finite, got " + std::to_string(dt));
    if (sg.n_cells < 2 || vg.j_half < 1)
        throw NonPositiveDimension("foot table needs valid grids");

    FootTable t;
    t.spatial = sg;
    t.velocity = vg;
    t.dt = dt;
    t.entries.resize(static_cast<std::size_t>(vg.nodes_per_axis()));

    // theta = v*dt/dx in cell units; computed via the dt/dx ratio so dt == dx
    // collapses to theta = v exactly.
    const double ratio = dt / sg.dx;
    for (int a = 0; a < vg.nodes_per_axis(); ++a) {
        const double theta = vg.coord(a) * ratio;
        const double m = std::floor(-theta);
        if (!(std::fabs(m) < 1e9))
            throw ParamOutOfRange("foot displacement too large: v*dt/dx = " +
                                  std::to_string(theta));
        double alpha = -theta - m;
        int off = static_cast<int>(m);
        if (alpha >= 1.0) {  // -theta a hair under an integer: snap to the pure shift
            alpha = 0.0;
            off += 1;
        }
        t.entries[static_cast<std::size_t>(a)] = FootEntry{off, alpha};
    }
    return t;
}

void reconstruct(const DistributionGrid& f, const FootTable& table, DistributionGrid& out) {
    if (!(f.spatial == table.spatial) || !(f.velocity == table.velocity))
        throw GridMismatch("foot table built for different grids");

    out.spatial = f.spatial;
    out.velocity = f.velocity;
    out.time_index = f.time_index;
    out.values.resize(f.values.size());

    const int n = f.velocity.nodes_per_axis();
    const std::size_t block = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const int nc = f.spatial.n_cells;

    for (int i = 0; i < nc; ++i) {
        auto dst = out.cell(i);
        for (int a = 0; a < n; ++a) {
            const FootEntry& e = table.entry(a);
            const int s = wrap_index(i + e.s_offset, nc);
            auto src_s = f.cell(s).subspan(static_cast<std::size_t>(a) * block, block);
            auto d = dst.subspan(static_cast<std::size_t>(a) * block, block);
            if (e.alpha == 0.0) {
                // pure shift; must not touch the right neighbor
                std::memcpy(d.data(), src_s.data(), block * sizeof(double));
                continue;
            }
            const int sp = wrap_index(i + e.s_offset + 1, nc);
            auto src_p = f.cell(sp).subspan(static_cast<std::size_t>(a) * block, block);
            const double w1 = e.alpha;
            const double w0 = 1.0 - e.alpha;
            for (std::size_t k = 0; k < block; ++k) {
                const double lo = std::min(src_s[k], src_p[k]);
                const double hi = std::max(src_s[k], src_p[k]);
                double v = w1 * src_p[k] + w0 * src_s[k];
                // guard the exact convexity of the interpolation against a
                // final-ulp rounding of the two-product form
                if (v > hi) v = hi;
                if (v < lo) v = lo;
                d[k] = v;
            }
        }
    }
}

DistributionGrid reconstruct(const DistributionGrid& f, const FootTable& table) {
    DistributionGrid out;
    reconstruct(f, table, out);
    return out;
}

DistributionGrid reconstruct_initial(const InitialCondition& ic, const GridPair& grids,
                                     double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ParamOutOfRange("dt must be positive and finite, got " + std::to_string(dt));

    DistributionGrid f = make_distribution(grids);
    const int n = f.velocity.nodes_per_axis();
    std::size_t idx = 0;
    for (int i = 0; i < f.spatial.n_cells; ++i) {
        const double xi = f.spatial.coord(i);
        for (int a = 0; a < n; ++a) {
            const double v1 = f.velocity.coord(a);
            const double x = xi - v1 * dt;  // ic is analytic and 1-periodic
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
