#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "esbgk/grid.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/stepper.hpp"

namespace esbgk {

struct NormSet {
    double sup = 0.0;           // max |f|
    double weighted_sup = 0.0;  // max |f|*(1+|v|)^q
    double q = 0.0;
};

NormSet norm_set(const DistributionGrid& f, double q);
double weighted_sup_norm(const DistributionGrid& f, double q);

struct Totals {
    double mass = 0.0;
    std::array<double, 3> momentum = {0.0, 0.0, 0.0};
    double energy = 0.0;  // sum f |v|^2 dv^3 dx
};

// Fixed-order compensated sums over the whole state.
Totals conserved_totals(const DistributionGrid& f);

// Closed-form Gaussian mass outside the lattice box [-v_max, v_max]^3 for the
// cell's fields, bounding the tensor by its largest eigenvalue times the
// identity. Decreasing in v_max; returns rho when v_max = 0.
double tail_mass(const MacroFields& m, const VelocityGrid& vg);

struct HValue {
    double value = 0.0;       // sum f log f dv^3 dx over positive entries
    std::int64_t excluded = 0;  // count of entries <= 0 left out
};

HValue h_functional(const DistributionGrid& f);

// Per-step structural quantities monitored (not enforced): moment extrema of
// the transported state, tensor floor, norm-control ratio, and the measured
// optimizing radii of the discrete moment bounds (each must stay above dv for
// the stability regime to apply).
struct LedgerRow {
    int step = 0;
    double time = 0.0;
    double min_rho = 0.0, max_rho = 0.0;
    double min_temp = 0.0, max_temp = 0.0;
    double max_abs_u = 0.0;
    double tensor_min_eig = 0.0;
    double tilde_norm = 0.0;
    double gaussian_norm = 0.0;
    double gaussian_ratio = 0.0;  // ||M(f~)|| / ||f~||
    double radius_density = 0.0;  // (3 rho T / (8 pi ||f~||))^(1/5), min over cells
    double radius_energy = 0.0;   // (pi/(q-5) ||f~||/rho)^(1/(q-3)), min over cells
    double radius_flow = 0.0;     // q/(q+3) power form for rho|U|, min over cells
    double tail_mass_max = 0.0;
};

struct StabilityLedger {
    double q = 0.0;
    double dv = 0.0;
    std::vector<LedgerRow> rows;
};

void ledger_update(StabilityLedger& ledger, const StepReport& rep,
                   const std::vector<MacroFields>& tilde_fields, const VelocityGrid& vg,
                   const SchemeParams& p);

// fill_gaussian -> moments round-trip residuals on given data, maxima over
// cells. Moment residuals are relative to the cell's own scales (rho,
// rho*sqrt(T), rho*(3T+|U|^2)); pointwise_resid is the weighted-sup distance
// between the cell Gaussian and the data, meaningful when the data is locally
// Gaussian.
struct QuadTolerance {
    double mass_resid = 0.0;
    double momentum_resid = 0.0;
    double energy_resid = 0.0;
    double pointwise_resid = 0.0;

    double eps() const;  // max of the moment residuals
};

QuadTolerance measure_quad_tolerance(const DistributionGrid& f0, const SchemeParams& p);

}  // namespace esbgk
