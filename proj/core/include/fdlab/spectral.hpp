#pragma once

#include <string>
#include <vector>

#include "fdlab/fft.hpp"
#include "fdlab/field.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

/// Real, even Fourier multiplier over the r2c spectrum of a grid.
/// symbol[0] records the zero-mode action (0 for the fractional
/// Laplacian, 1 for the heat propagator).
struct MultiplierOp {
    TorusGrid grid;
    std::vector<double> symbol;

    ScalarField apply(const ScalarField& f) const;
};

MultiplierOp frac_laplacian_op(const TorusGrid& grid, const FractionalParams& p);
MultiplierOp heat_op(const TorusGrid& grid, double t, const FractionalParams& p, double eps);

/// (-Laplace)^s f via the |2 pi k / L|^{2s} multiplier; output has mean 0.
ScalarField frac_laplacian(const ScalarField& f, const FractionalParams& p);

/// Semigroup e^{-t((-Laplace)^s + eps (-Laplace))} f.  Mass (the zero
/// mode) is preserved exactly.  t < 0 is an error.
ScalarField heat_propagate(const ScalarField& f, double t, const FractionalParams& p,
                           double eps = 0.0);

/// d/dx_axis with the exact ik multiplier (Nyquist mode zeroed).
ScalarField spectral_gradient(const ScalarField& f, int axis);

/// u(x) -> u(x + shift), exact for content below the Nyquist mode.
ScalarField spectral_shift(const ScalarField& f, double shift0, double shift1 = 0.0);

/// y = 0 slice of the fractional heat kernel at time t on the torus
/// (inverse transform of e^{-t |kappa|^{2s}}).
ScalarField heat_kernel_slice(const TorusGrid& grid, double t, const FractionalParams& p);

struct HeatProfile {
    FractionalParams params;
    ScalarField profile; // H(x, 0) samples
    double mass;         // h^dim * sum, records the normalization
};

/// Self-similar profile H(.,0): heat kernel slice at t = 1.  The grid
/// must resolve the symbol to below 1e-12 at the Nyquist frequency.
HeatProfile heat_profile(const FractionalParams& p, const TorusGrid& grid);

/// Log-log slope of |H| against |x| over [rmin, rmax] (annulus means in
/// dim 2), for tail-exponent measurements.
double heat_profile_tail_slope(const HeatProfile& hp, double rmin, double rmax, int points = 9);

/// Sup discrepancy between h(t2,.) and the parabolic rescaling of
/// h(t1,.), the rescaled side evaluated by a direct Fourier sum at the
/// off-grid points.  Requires 0 < t1 <= t2 (dim 1).
double selfsimilar_check(const FractionalParams& p, double t1, double t2, const TorusGrid& grid);

/// Audit table "k0[,k1],symbol".
void write_multiplier_csv(const std::string& path, const MultiplierOp& op);

} // namespace fdlab
