#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdlab {

/// Exponent triple (s, a = 1-2s, alpha) plus the spatial dimension.
///
/// s is the diffusion order/2, restricted to the supercritical/critical
/// range (0, 1/2].  a = 1-2s is always derived, never stored, so the
/// pair cannot drift out of sync.  alpha in (0, 2s) is the extra drift
/// regularity used by the exponent experiments.
struct FractionalParams {
    double s = 0.25;
    double alpha = 0.125;
    int dim = 1;

    double a() const { return 1.0 - 2.0 * s; }

    static FractionalParams make(double s, double alpha, int dim) {
        if (!std::isfinite(s) || s <= 0.0 || s > 0.5)
            throw std::invalid_argument("FractionalParams: s must lie in (0, 0.5], got " +
                                        std::to_string(s));
        if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 2.0 * s)
            throw std::invalid_argument("FractionalParams: alpha must lie in (0, 2s), got " +
                                        std::to_string(alpha));
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("FractionalParams: dim must be 1 or 2");
        FractionalParams p;
        p.s = s;
        p.alpha = alpha;
        p.dim = dim;
        return p;
    }
};

} // namespace fdlab
