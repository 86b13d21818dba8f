#pragma once

// Test-only reference computations, kept independent of the library's
// transform and solver paths.

#include <cmath>
#include <functional>
#include <numbers>

namespace fdlab::test_oracles {

/// Principal-value quadrature of the half-Laplacian on the line,
///   (-Lap)^{1/2} f (x) = (1/pi) PV int (f(x) - f(y)) / (x-y)^2 dy
/// rewritten with the symmetric difference (removable singularity at 0)
/// and an analytic tail assuming f vanishes beyond zmax:
///   (1/pi) int_0^zmax (2 f(x) - f(x+z) - f(x-z)) / z^2 dz + 2 f(x) / (pi zmax).
/// Plain midpoint rule; f is a closed form, no grids involved.
inline double half_laplacian_pv(const std::function<double(double)>& f, double x, double zmax,
                                int points) {
    const double dz = zmax / points;
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        double z = (i + 0.5) * dz;
        acc += (2.0 * f(x) - f(x + z) - f(x - z)) / (z * z);
    }
    return (acc * dz + 2.0 * f(x) / zmax) / std::numbers::pi;
}

/// Free-space Cauchy kernel, the s = 1/2, dim 1 heat-kernel slice at t = 1.
inline double cauchy_kernel(double x) { return 1.0 / (std::numbers::pi * (1.0 + x * x)); }

/// Its exact periodization on a circle of length L:
///   sum_m (1/pi) / (1 + (x + mL)^2) = (1/L) sinh(2 pi / L) / (cosh(2 pi / L) - cos(2 pi x / L)).
inline double cauchy_kernel_periodized(double x, double L) {
    double w = 2.0 * std::numbers::pi / L;
    return (1.0 / L) * std::sinh(w) / (std::cosh(w) - std::cos(w * x));
}

} // namespace fdlab::test_oracles
