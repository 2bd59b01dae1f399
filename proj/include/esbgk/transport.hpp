#pragma once

#include <vector>

#include "esbgk/grid.hpp"
#include "esbgk/initcond.hpp"

namespace esbgk {

// Foot of the characteristic through (x_i, v_j1) after one dt, in index space:
// the foot lands in [x_s, x_{s+1}) with s = i + s_offset (periodic) and
// fractional position alpha = weight of the right node,
//   f~(i) = alpha*f(s+1) + (1-alpha)*f(s).
// Uniform grid makes both independent of i, and iterating the foot map keeps
// alpha constant.
struct FootEntry {
    int s_offset = 0;
    double alpha = 0.0;  // in [0, 1)
};

struct FootTable {
    SpatialGrid spatial;
    VelocityGrid velocity;
    double dt = 0.0;
    std::vector<FootEntry> entries;  // indexed by the v1 axis index a

    const FootEntry& entry(int a) const { return entries[static_cast<std::size_t>(a)]; }
};

// No CFL restriction: feet may cross many cells. Exact-multiple shifts give
// alpha = 0 and that path never reads the right node.
FootTable build_foot_table(const SpatialGrid& sg, const VelocityGrid& vg, double dt);

// Linear interpolation at the foot for every node; writes into out (resized
// to match f). Convex combination, so sup and weighted-sup norms never grow.
void reconstruct(const DistributionGrid& f, const FootTable& table, DistributionGrid& out);
DistributionGrid reconstruct(const DistributionGrid& f, const FootTable& table);

// Exact transported initial data: f~0(i,j) = f0(x_i - v_j1*dt, v_j). Used for
// the first step when the initial condition is available analytically.
DistributionGrid reconstruct_initial(const InitialCondition& ic, const GridPair& grids, double dt);

}  // namespace esbgk
