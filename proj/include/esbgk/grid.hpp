#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "esbgk/errors.hpp"

namespace esbgk {

// Uniform periodic grid on [0,1): x_i = i*dx, dx = 1/n_cells.
struct SpatialGrid {
    int n_cells = 0;
    double dx = 0.0;
    static constexpr double period = 1.0;

    double coord(int i) const { return dx * static_cast<double>(i); }
    bool operator==(const SpatialGrid&) const = default;
};

// Cubic velocity lattice, odd node count per axis: v_j = j*dv for
// j in [-j_half, j_half], so zero is always a node and the lattice is
// symmetric. v_max = j_half*dv.
struct VelocityGrid {
    int j_half = 0;
    double dv = 0.0;

    int nodes_per_axis() const { return 2 * j_half + 1; }
    std::size_t total_nodes() const {
        auto n = static_cast<std::size_t>(nodes_per_axis());
        return n * n * n;
    }
    double v_max() const { return dv * static_cast<double>(j_half); }
    // a is the zero-based axis index in [0, 2*j_half].
    double coord(int a) const { return dv * static_cast<double>(a - j_half); }
    double cell_volume() const { return dv * dv * dv; }
    bool operator==(const VelocityGrid&) const = default;
};

// Distribution values, row-major: spatial cell outer, then v1, v2, v3.
struct DistributionGrid {
    SpatialGrid spatial;
    VelocityGrid velocity;
    std::vector<double> values;
    int time_index = 0;

    std::size_t node_index(int a, int b, int c) const {
        auto n = static_cast<std::size_t>(velocity.nodes_per_axis());
        return (static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n +
               static_cast<std::size_t>(c);
    }
    std::span<double> cell(int i) {
        return std::span<double>(values).subspan(
            static_cast<std::size_t>(i) * velocity.total_nodes(), velocity.total_nodes());
    }
    std::span<const double> cell(int i) const {
        return std::span<const double>(values).subspan(
            static_cast<std::size_t>(i) * velocity.total_nodes(), velocity.total_nodes());
    }

    // All values finite; negativity only at roundoff scale (>= -1e-14 * max|f|).
    void validate() const;
};

// Periodic index wrap into [0, n_cells). Handles any int, including large
// negative offsets from fast feet.
int wrap_index(int i, int n_cells);

// (1 + |v_j|)^q per lattice node, lexicographic order. Shared by every
// weighted-norm computation so they agree bitwise.
std::vector<double> weighted_norm_table(const VelocityGrid& vg, double q);

struct GridPair {
    SpatialGrid spatial;
    VelocityGrid velocity;
};

// n_cells >= 2, j_half >= 1, dv > 0, all finite; throws NonPositiveDimension.
GridPair make_grids(int n_cells, int j_half, double dv);

DistributionGrid make_distribution(const GridPair& grids);

void check_same_grids(const DistributionGrid& a, const DistributionGrid& b);

}  // namespace esbgk
