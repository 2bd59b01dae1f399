#pragma once

#include <stdexcept>
#include <string>

namespace esbgk {

// Base for all solver errors. step_index is attached by run() when a step
// aborts, -1 otherwise.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    int step_index = -1;
};

// Grid sizes that cannot form a valid discretization (n_cells < 2, j_half < 1,
// dv <= 0, ...).
class NonPositiveDimension : public Error {
public:
    using Error::Error;
};

// Cell density at or below the vacuum floor. Vacuum is an error, not a clamp.
class VacuumCell : public Error {
public:
    using Error::Error;
};

// NaN or Inf found in caller-provided data.
class NonFiniteInput : public Error {
public:
    using Error::Error;
};

// NaN or Inf produced by the scheme itself; aborts the run.
class NonFiniteState : public Error {
public:
    using Error::Error;
};

// Scalar parameter outside its admissible range (nu, kappa, dt, q_weight, ...).
class ParamOutOfRange : public Error {
public:
    using Error::Error;
};

// Relaxation tensor not safely positive definite. Carries the offending
// minimum eigenvalue.
class TensorNotSPD : public Error {
public:
    TensorNotSPD(const std::string& msg, double min_eig_)
        : Error(msg), min_eig(min_eig_) {}
    double min_eig;
};

// Operands built on different grids.
class GridMismatch : public Error {
public:
    using Error::Error;
};

// Refinement levels whose lattices do not share nodes.
class LatticeNotNested : public Error {
public:
    using Error::Error;
};

// Bad or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace esbgk
