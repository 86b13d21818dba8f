#pragma once

#include <cstdint>

#include "fdlab/field.hpp"

namespace fdlab {

/// Lacunary (Weierstrass-type) synthesis target.  The field is
///   sum_{j=0}^{J-1} amplitude * lambda^{-beta j} cos(lambda^j 2 pi (d_j.x)/L + theta_j)
/// with phases theta_j (and, for dim 2, lattice directions d_j) drawn from
/// the seeded stream.  Asymptotically the sum is C^beta and nothing better.
///
/// beta*J*log(lambda) should be large enough that the last term falls
/// below grid resolution; this is the caller's choice and not enforced.
struct HolderSynthConfig {
    double beta = 0.5;     // target Holder exponent, (0, 1]
    int lambda = 2;        // integer lacunary base > 1
    int terms = 6;         // J
    std::uint64_t seed = 0;
    double amplitude = 1.0;

    void validate() const;
};

/// Deterministic given cfg.seed; same seed gives a bitwise-identical field.
/// Throws ResolutionError when lambda^(J-1) exceeds n/2 on the grid.
ScalarField synth_holder(const HolderSynthConfig& cfg, const TorusGrid& grid);

/// Band-limited random smooth field: independent amplitudes on modes with
/// |k| <= max_mode, normalized to the requested sup-norm.  Used for smooth
/// initial data and forcings in the experiments.
ScalarField synth_smooth(const TorusGrid& grid, int max_mode, double sup, std::uint64_t seed);

} // namespace fdlab
