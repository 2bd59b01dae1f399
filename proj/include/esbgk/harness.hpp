#pragma once

#include <vector>

#include "esbgk/grid.hpp"
#include "esbgk/initcond.hpp"
#include "esbgk/stepper.hpp"

namespace esbgk {

enum class LadderCoupling {
    DxEqualsDt,       // dt = final_time/n_steps and dx = dt jointly refine
    FixedDvRefineDt,  // dt refines on a fixed spatial grid
};

struct LadderLevel {
    int n_steps = 0;
    double dt = 0.0;
    int n_cells = 0;
    int j_half = 0;
    double dv = 0.0;
};

// Levels run coarse to fine; the finest is the reference. Every level covers
// final_time in a whole number of steps, and the velocity lattice is shared,
// so its truncation bias cancels in level differences.
struct RefinementLadder {
    LadderCoupling coupling = LadderCoupling::DxEqualsDt;
    double final_time = 0.0;
    std::vector<LadderLevel> levels;
};

RefinementLadder make_ladder(LadderCoupling coupling, double final_time,
                             const std::vector<int>& steps_per_level, int j_half, double dv,
                             int n_cells_fixed = 0);

struct LevelResult {
    int n_steps = 0;
    double dt = 0.0;
    double dx = 0.0;
    double dv = 0.0;
    int n_cells = 0;
    double error = 0.0;        // weighted-sup distance to the reference, shared nodes
    double local_order = 0.0;  // vs the previous level; NaN for the first
    double tail_mass = 0.0;    // max over cells at the final state
};

struct ConvergenceReport {
    LadderCoupling coupling = LadderCoupling::DxEqualsDt;
    double final_time = 0.0;
    double q_weight = 0.0;
    LadderLevel reference;
    std::vector<LevelResult> levels;  // excludes the reference
    double fitted_order = 0.0;        // NaN when degenerate
    bool degenerate = false;          // some error vanished or fewer than 3 levels
};

// Runs every level from the same initial condition and measures each coarse
// level against the finest at shared lattice nodes. Throws LatticeNotNested
// when a level's spatial grid does not divide the reference's.
ConvergenceReport self_converge(const RefinementLadder& ladder, const InitialCondition& ic,
                                double kappa, double nu, double q_weight, int threads = 1);

// Max weighted-sup deviation over n_steps between the nu = 0 scheme and the
// independent classical BGK path, both from the same sampled data.
double bgk_equivalence(const GridPair& grids, const InitialCondition& ic, double kappa, double dt,
                       double q_weight, int n_steps, int threads = 1);

// Residual ||f^n - M(moments(f^n))||_q after every step in the stiff limit.
// Requires kappa <= 1e-4 * dt.
std::vector<double> euler_limit_probe(const InitialCondition& ic, const GridPair& grids,
                                      const SchemeParams& p, int threads = 1);

}  // namespace esbgk
