#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fdlab/extension.hpp"
#include "fdlab/field.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

/// A saved evolution restricted to [-1, 0] with each slice extended into
/// the strip; the input the flatness measurements work on.
struct ExtendedTrajectory {
    FractionalParams params;
    std::vector<double> times; // ascending, last entry 0
    std::vector<ExtendedField> fields;
    // c with c * (raw boundary flux) = (-Laplace)^s; ties the measured time
    // slope to the layer coefficient, D'(t) = dD/dt / |c|.  The default is
    // the unit-flux strip normalization (c = -1) used by closed-form tests.
    double calibration = -1.0;
};

struct Trajectory; // evolution.hpp

ExtendedTrajectory extend_trajectory(const Trajectory& traj, const FractionalParams& p,
                                     const GradedYGrid& ygrid,
                                     TopBoundary top = TopBoundary::mode_decay);

/// Per-scale best fit of the ansatz A.x + D(t) + D'(t) y^{1-a}/(1-a) over
/// the parabolic half-cylinders [-r^{2sk}, 0] x B+_{r^k}, with D freely
/// valued on the window's time slices and D' tied to D by local
/// differentiation.  deviation[k] is the sup-norm misfit; the decay slope
/// is fitted across scales carrying at least min_samples points.
struct FlatnessReport {
    double ratio = 0.5;
    std::vector<double> scales;
    std::vector<std::array<double, 2>> slope_a;
    std::vector<std::vector<double>> level_d;      // D_k on the window slices
    std::vector<std::vector<double>> level_dprime; // derived D'_k
    std::vector<double> deviation;                 // e_k >= 0
    std::vector<std::size_t> samples;
    double slope = 0.0;
    double r2 = 0.0;
    bool has_slope = false;
    int requested_scales = 0;
    bool truncated = false; // stopped before K scales (grid resolution)
};

FlatnessReport flatness_profile(const ExtendedTrajectory& u, const FractionalParams& p,
                                double ratio, int num_scales, bool fit_plane = true,
                                std::size_t min_samples = 100);

} // namespace fdlab
