#pragma once

#include <array>

namespace esbgk {

// Symmetric 3x3 tensor, six stored entries.
struct SymTensor3 {
    double a11 = 0.0, a22 = 0.0, a33 = 0.0;
    double a12 = 0.0, a13 = 0.0, a23 = 0.0;

    static SymTensor3 isotropic(double t) { return {t, t, t, 0.0, 0.0, 0.0}; }

    double trace() const { return a11 + a22 + a33; }
    double det() const;

    // Ascending eigenvalues, closed form (trigonometric method). Exact for
    // diagonal input.
    std::array<double, 3> eigenvalues() const;
    double min_eigenvalue() const { return eigenvalues()[0]; }

    // Adjugate divided by det. Caller guarantees det != 0 (prepare() checks
    // SPD before calling).
    SymTensor3 inverse() const;

    // d . (this * d)
    double quadratic_form(double d1, double d2, double d3) const {
        return a11 * d1 * d1 + a22 * d2 * d2 + a33 * d3 * d3 +
               2.0 * (a12 * d1 * d2 + a13 * d1 * d3 + a23 * d2 * d3);
    }

    SymTensor3 operator+(const SymTensor3& o) const {
        return {a11 + o.a11, a22 + o.a22, a33 + o.a33, a12 + o.a12, a13 + o.a13, a23 + o.a23};
    }
    SymTensor3 operator-(const SymTensor3& o) const {
        return {a11 - o.a11, a22 - o.a22, a33 - o.a33, a12 - o.a12, a13 - o.a13, a23 - o.a23};
    }
    SymTensor3 operator*(double s) const {
        return {a11 * s, a22 * s, a33 * s, a12 * s, a13 * s, a23 * s};
    }
};

}  // namespace esbgk
