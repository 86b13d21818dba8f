#include "fdlab/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fdlab/errors.hpp"
#include "fdlab/rng.hpp"

namespace fdlab {

void HolderSynthConfig::validate() const {
    if (!std::isfinite(beta) || beta <= 0.0 || beta > 1.0)
        throw std::invalid_argument("HolderSynthConfig: beta must lie in (0, 1]");
    if (lambda < 2) throw std::invalid_argument("HolderSynthConfig: lambda must be an integer > 1");
    if (terms < 1) throw std::invalid_argument("HolderSynthConfig: need at least one term");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("HolderSynthConfig: amplitude not finite");
}

ScalarField synth_holder(const HolderSynthConfig& cfg, const TorusGrid& grid) {
    cfg.validate();

    double top_freq = std::pow(static_cast<double>(cfg.lambda), cfg.terms - 1);
    if (top_freq > grid.n / 2)
        throw ResolutionError("synth_holder: lambda^(J-1) = " + std::to_string(top_freq) +
                              " exceeds representable modes n/2 = " + std::to_string(grid.n / 2));

    ScalarField out(grid);
    if (cfg.amplitude == 0.0) return out;

    SplitMix64 rng(cfg.seed);
    const double two_pi = 2.0 * std::numbers::pi;
    // Lattice directions keep every term exactly periodic in dim 2.
    static const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};

    double freq = 1.0;
    for (int j = 0; j < cfg.terms; ++j, freq *= cfg.lambda) {
        double amp = cfg.amplitude * std::pow(static_cast<double>(cfg.lambda), -cfg.beta * j);
        double phase = rng.uniform(0.0, two_pi);
        int d0 = 1, d1 = 0;
        if (grid.dim == 2) {
            const int* d = dirs[rng.below(4)];
            d0 = d[0];
            d1 = d[1];
        }
        double w = freq * two_pi / grid.length;
        if (grid.dim == 1) {
            for (int i = 0; i < grid.n; ++i)
                out.values[i] += amp * std::cos(w * grid.coord(i) + phase);
        } else {
            for (int i0 = 0; i0 < grid.n; ++i0) {
                double x0 = grid.coord(i0);
                for (int i1 = 0; i1 < grid.n; ++i1) {
                    double arg = w * (d0 * x0 + d1 * grid.coord(i1)) + phase;
                    out.values[grid.index(i0, i1)] += amp * std::cos(arg);
                }
            }
        }
    }
    return out;
}

ScalarField synth_smooth(const TorusGrid& grid, int max_mode, double sup, std::uint64_t seed) {
    if (max_mode < 1 || max_mode > grid.n / 2)
        throw std::invalid_argument("synth_smooth: max_mode out of range");
    SplitMix64 rng(seed);
    ScalarField out(grid);
    const double two_pi = 2.0 * std::numbers::pi;

    if (grid.dim == 1) {
        for (int k = 1; k <= max_mode; ++k) {
            double amp = rng.uniform(-1.0, 1.0);
            double phase = rng.uniform(0.0, two_pi);
            double w = two_pi * k / grid.length;
            for (int i = 0; i < grid.n; ++i)
                out.values[i] += amp * std::cos(w * grid.coord(i) + phase);
        }
    } else {
        for (int k0 = 0; k0 <= max_mode; ++k0) {
            for (int k1 = (k0 == 0 ? 1 : -max_mode); k1 <= max_mode; ++k1) {
                double amp = rng.uniform(-1.0, 1.0);
                double phase = rng.uniform(0.0, two_pi);
                double w = two_pi / grid.length;
                for (int i0 = 0; i0 < grid.n; ++i0) {
                    double x0 = grid.coord(i0);
                    for (int i1 = 0; i1 < grid.n; ++i1) {
                        double arg = w * (k0 * x0 + k1 * grid.coord(i1)) + phase;
                        out.values[grid.index(i0, i1)] += amp * std::cos(arg);
                    }
                }
            }
        }
    }
    double s = out.sup_norm();
    if (s > 0.0 && sup > 0.0) {
        double scale = sup / s;
        for (double& v : out.values) v *= scale;
    }
    return out;
}

} // namespace fdlab
