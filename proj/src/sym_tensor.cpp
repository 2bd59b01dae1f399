#include "esbgk/sym_tensor.hpp"

#include <algorithm>
#include <cmath>

namespace esbgk {

double SymTensor3::det() const {
    return a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
           a13 * (a12 * a23 - a22 * a13);
}

std::array<double, 3> SymTensor3::eigenvalues() const {
    const double p1 = a12 * a12 + a13 * a13 + a23 * a23;
    if (p1 == 0.0) {
        std::array<double, 3> e = {a11, a22, a33};
        std::sort(e.begin(), e.end());
        return e;
    }

    const double q = trace() / 3.0;
    const double p2 =
        (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + (a33 - q) * (a33 - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);

    const SymTensor3 b = {(a11 - q) / p, (a22 - q) / p, (a33 - q) / p,
                          a12 / p,       a13 / p,       a23 / p};
    double r = b.det() / 2.0;
    r = std::clamp(r, -1.0, 1.0);

    const double phi = std::acos(r) / 3.0;
    const double two_pi_3 = 2.0943951023931953;
    const double emax = q + 2.0 * p * std::cos(phi);
    const double emin = q + 2.0 * p * std::cos(phi + two_pi_3);
    const double emid = 3.0 * q - emax - emin;
    return {emin, emid, emax};
}

SymTensor3 SymTensor3::inverse() const {
    const double d = det();
    SymTensor3 inv;
    inv.a11 = (a22 * a33 - a23 * a23) / d;
    inv.a22 = (a11 * a33 - a13 * a13) / d;
    inv.a33 = (a11 * a22 - a12 * a12) / d;
    inv.a12 = (a13 * a23 - a12 * a33) / d;
    inv.a13 = (a12 * a23 - a13 * a22) / d;
    inv.a23 = (a12 * a13 - a11 * a23) / d;
    return inv;
}

}  // namespace esbgk
