#pragma once

namespace esbgk {

// Compensated (Kahan) accumulator. Additions happen in a fixed caller-chosen
// order; combined with -ffp-contract=off this keeps reductions bitwise
// reproducible.
struct KahanSum {
    double sum = 0.0;
    double cor = 0.0;

    void add(double x) {
        const double y = x - cor;
        const double t = sum + y;
        cor = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace esbgk
