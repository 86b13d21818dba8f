#pragma once

#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

/// Scale-banded Holder seminorm.
///
/// For exponent in (0, 1]: sup over node pairs at torus distance in
/// [scale/2, scale] of |u(x)-u(x')| / |x-x'|^exponent.
/// For exponent in (1, 2]: the same quotient with exponent-1 applied to
/// the components of the spectral gradient of u.
///
/// In dim 2 the sup runs over a deterministic subsample of lattice
/// offsets (all offsets in dim 1 unless there are more than 64, which are
/// then thinned evenly).  Throws std::invalid_argument when the band
/// contains no representable pair.
double holder_seminorm(const ScalarField& field, double exponent, double scale);

/// sup |u(x)-u(x')| over the same pair band; the raw modulus used by the
/// exponent-measurement fits.
double band_oscillation(const ScalarField& field, double scale);

struct FitResult {
    double slope = 0.0;
    double r2 = 0.0;
    double stderr_slope = 0.0;
};

/// Least-squares fit of log(value) against log(scale).  Requires at least
/// three strictly positive pairs.
FitResult fit_exponent(const std::vector<double>& scales, const std::vector<double>& values);

} // namespace fdlab
