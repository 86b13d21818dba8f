#pragma once

#include <cstdint>
#include <vector>

#include "fdlab/flatness.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

/// Fully resolved experiment parameters.  Field names mirror the config
/// file keys (section_key); every value has a working default.
struct ExperimentConfig {
    // [params]
    double s = 0.25;
    double alpha = 0.125;
    int dim = 1;
    // [grid]
    int grid_n = 256;
    double grid_length = 6.283185307179586476925286766559;
    int strip_m = 64;
    double strip_height = 1.0;
    double strip_gamma = 0.0; // 0: use the default grading 2/(1-a)
    // [drift]
    double drift_beta = 0.0; // 0: use 1 - 2s + alpha
    int drift_lambda = 2;
    int drift_terms = 6;
    double drift_amplitude = 0.1;
    std::uint64_t seed = 7;
    // [forcing] and [init]
    double forcing_amplitude = 0.05;
    int forcing_modes = 2;
    double init_amplitude = 1.0;
    int init_modes = 4;
    // [run]
    double tfinal = 1.0;
    double cfl = 0.4;
    double dt_max = 2e-3;
    double save_dt = 0.01;
    double eps = 0.0;
    // [flatness]
    double flatness_ratio = 0.5;
    int flatness_scales = 4;
    std::size_t min_samples = 100;
    // [experiment]
    int theorem = 1;
    std::vector<double> deltas = {0.1, 0.05, 0.025};
    // [acceptance] declared desk tolerances
    double exponent_tol = 0.25;
    double slope_slack = 0.2;
    double theorem2_floor = 0.7;

    FractionalParams params() const;
    TorusGrid grid() const;
    GradedYGrid strip() const;
    double drift_exponent() const; // resolved drift Holder class
};

struct ExponentReport {
    double claimed_exponent = 0.0;
    double measured_exponent = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0; // slope +- 2 stderr over the fitted scales
    double r2 = 0.0;
    double achieved_drift_ratio = 0.0; // sup |b*| / |x|^{1-2s+alpha} after the flow change
    std::vector<double> sweep_delta;   // theorem-2 delta sweep
    std::vector<double> sweep_exponent;
    FlatnessReport flatness;
};

/// Full pipeline behind the C^{1,alpha} claim: synthesize b in
/// C^{1-2s+alpha}, evolve on [-1,0], apply the backward-flow change of
/// variables u*(t,x) = u(t, x + V(t)) - S(t), extend the slices, measure
/// flatness decay at the origin.
ExponentReport theorem1_experiment(const ExperimentConfig& cfg);

/// The critical-exponent variant: b exactly C^{1-2s} with seminorm delta,
/// plane forced to zero in the ansatz, swept over cfg.deltas (measured
/// exponent reported at the smallest delta).
ExponentReport theorem2_experiment(const ExperimentConfig& cfg);

struct HolderReport {
    double space_exponent = 0.0;
    double time_exponent = 0.0;
    double threshold = 0.05;
    bool pass = false;
    std::vector<double> space_scales, space_moduli;
    std::vector<double> time_scales, time_moduli;
};

/// Positivity of the Holder exponent of the solution under b in C^{1-2s}
/// with O(1) seminorm, measured on the interior window [-1/2, 0].
HolderReport holder_estimate_experiment(const ExperimentConfig& cfg);

} // namespace fdlab
