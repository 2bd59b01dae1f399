#pragma once

#include <array>
#include <functional>
#include <vector>

#include "esbgk/grid.hpp"
#include "esbgk/initcond.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/transport.hpp"

namespace esbgk {

// Scheme constants. blend = a_nu*dt/(kappa + a_nu*dt) and keep = 1 - blend
// share one division, so keep + blend == 1 exactly as stored and the update
// f_next = keep*f~ + blend*M is a convex combination entrywise.
struct SchemeParams {
    double kappa = 1.0;
    double nu = -0.4;
    double dt = 0.015625;
    double q_weight = 6.0;
    int n_steps = 100;

    // derived at construction, never recomputed elsewhere
    double a_nu = 0.0;    // 1/(1-nu)
    double nu_eff = 0.0;  // kappa*nu/(kappa+dt)
    double blend = 0.0;
    double keep = 0.0;
};

// kappa, dt > 0; nu in (-1/2, 1); q_weight > 5; n_steps >= 0.
SchemeParams make_scheme_params(double kappa, double nu, double dt, double q_weight, int n_steps);

struct StepReport {
    int step = 0;       // time index after the update
    double time = 0.0;  // step * dt

    // conserved totals of f^{n+1} (dv^3 dx measure)
    double mass = 0.0;
    std::array<double, 3> momentum = {0.0, 0.0, 0.0};
    double energy = 0.0;

    double min_value = 0.0;        // over f^{n+1}
    double sup_norm_q = 0.0;       // ||f^{n+1}||, weight (1+|v|)^q
    double tilde_norm_q = 0.0;     // ||f~||
    double gaussian_norm_q = 0.0;  // ||M(f~)||
    double tensor_min_eig = 0.0;   // min over cells of min eig of tensor_nu
    // max over cells and phi in {1, v, |v|^2} of |sum_j (M - f~) phi dv^3|
    double cancel_resid = 0.0;
};

// Buffers and tables reused across steps. gauss holds one per-cell scratch
// slab per worker thread.
struct StepContext {
    FootTable table;
    std::vector<double> weight;
    DistributionGrid f_tilde;
    std::vector<std::vector<double>> gauss;
    std::vector<MacroFields> tilde_fields;  // moments of f~, per cell, last step
    int threads = 1;
};

StepContext make_step_context(const GridPair& grids, const SchemeParams& p, int threads = 1);

// One full update f^n -> f^{n+1}: lattice reconstruction, then per-cell
// relaxation toward the anisotropic Gaussian of the transported moments.
// Cells are independent; with threads > 1 they are processed in disjoint
// chunks and every reduction stays in cell order, so results are bitwise
// independent of the thread count.
void step(const DistributionGrid& f, const SchemeParams& p, StepContext& ctx,
          DistributionGrid& f_next, StepReport& rep);

// Relaxation half only, for callers that provide the transported state
// themselves (exact first-step sampling, tests).
void step_transported(const DistributionGrid& f_tilde, const SchemeParams& p, StepContext& ctx,
                      DistributionGrid& f_next, StepReport& rep);

// Classical BGK update with a scalar Maxwellian; independent arithmetic path
// kept free of the tensor machinery. Test oracle for the nu = 0 limit.
void step_bgk_reference(const DistributionGrid& f, const SchemeParams& p, const FootTable& table,
                        DistributionGrid& f_next);

using StepObserver = std::function<void(const DistributionGrid& f_now, const StepReport& rep,
                                        const std::vector<MacroFields>& tilde_fields)>;

// n_steps updates from analytically sampled initial data; the first update
// uses the exactly transported initial condition, later ones the lattice
// reconstruction. Aborts on the first error with the step index attached.
DistributionGrid run(const InitialCondition& ic, const GridPair& grids, const SchemeParams& p,
                     int threads = 1, const StepObserver& obs = {});

// Same loop from raw lattice data (every step reconstructs on the lattice).
DistributionGrid run_lattice(DistributionGrid f0, const SchemeParams& p, int threads = 1,
                             const StepObserver& obs = {});

}  // namespace esbgk
