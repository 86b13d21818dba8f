#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/params.hpp"
#include "fdlab/synth.hpp"

namespace fdlab {

/// Vector field b(t, x).  Backed either by a closed form (exact
/// evaluation, needed for high-order flow convergence) or by sampled time
/// slices interpolated bilinearly in (t, x).  No divergence structure is
/// assumed or used anywhere.
class DriftField {
public:
    using Analytic = std::function<std::array<double, 2>(double t, double x0, double x1)>;

    static DriftField zero(int dim);
    static DriftField constant(int dim, std::array<double, 2> c);
    static DriftField analytic(int dim, Analytic fn, double sup_bound,
                               double holder_exponent = 1.0);
    /// One slice per component, constant in time.
    static DriftField steady(std::vector<ScalarField> components, double holder_exponent);
    /// times ascending; comps[slice][component].
    static DriftField sampled(std::vector<double> times,
                              std::vector<std::vector<ScalarField>> comps,
                              double holder_exponent);
    /// Lacunary synthesis per component on the grid, steady in time.
    static DriftField synthesize(const TorusGrid& grid, const HolderSynthConfig& cfg);

    std::array<double, 2> eval(double t, double x0, double x1 = 0.0) const;
    /// Component values on grid nodes at time t (linear in t for sampled).
    ScalarField component_at(double t, int comp, const TorusGrid& grid) const;

    int dim() const { return dim_; }
    double sup_norm() const { return sup_; }
    double holder_exponent() const { return holder_; }
    bool is_zero() const { return zero_; }
    DriftField scaled(double factor) const;

private:
    DriftField() = default;
    int dim_ = 1;
    bool zero_ = true;
    double sup_ = 0.0;
    double holder_ = 1.0;
    Analytic fn_;
    std::vector<double> times_;
    std::vector<std::vector<ScalarField>> slices_;
    double interp_node(const ScalarField& f, double x0, double x1) const;
};

/// Scalar forcing f(t, x) with the same two backings.
class ForcingField {
public:
    using Analytic = std::function<double(double t, double x0, double x1)>;

    static ForcingField zero();
    static ForcingField steady(ScalarField f);
    static ForcingField analytic(Analytic fn, double sup_bound);

    ScalarField sample(double t, const TorusGrid& grid) const;
    double eval_origin(double t) const; // f(t, 0), used by the flow integral
    double sup_norm() const { return sup_; }
    bool is_zero() const { return zero_; }
    ForcingField scaled(double factor) const;

private:
    ForcingField() = default;
    bool zero_ = true;
    double sup_ = 0.0;
    Analytic fn_;
    bool has_field_ = false;
    ScalarField field_;
};

struct EvolutionState {
    double time = -1.0;
    ScalarField u;
    FractionalParams params;
    double eps = 0.0;     // artificial viscosity
    double cfl_max = 0.4; // advective CFL bound checked at every step
    double last_dt = 0.0;
};

struct StepOptions {
    bool disable_diffusion = false; // test hook: pure transport stepping
};

/// One accepted step of u_t + b.grad u + (-Lap)^s u - eps Lap u = f:
/// second-order upwind transport and explicit forcing integrated exactly
/// against the diffusion semigroup (exponential Euler).  Throws CflError
/// carrying the admissible step when dt violates the CFL record.
EvolutionState step(const EvolutionState& st, const DriftField& b, const ScalarField& f_now,
                    double dt, const StepOptions& opt = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<ScalarField> fields;
};

struct IvpOptions {
    double t0 = -1.0;
    double cfl_max = 0.4;
    double dt_max = 5e-3;
    double save_dt = 0.0; // 0: keep endpoints only
    double blowup_factor = 10.0;
};

struct IvpResult {
    EvolutionState final_state;
    std::vector<double> series_t, series_sup, series_min, series_max, series_mean, series_energy;
    // oscillation over pair bands at L/8, L/16, L/32, sampled at save times
    std::vector<double> band_t;
    std::array<std::vector<double>, 3> band_osc;
    Trajectory saved;
};

IvpResult solve_ivp(const ScalarField& u0, const DriftField& b, const ForcingField& f, double T,
                    const FractionalParams& p, double eps, const IvpOptions& opt = {});

/// Perturbation experiment: run the drifted problem with b, f
/// rescaled to sup norm delta against the driftless zero-forcing problem
/// from the same data, over a unit window; returns the sup space-time
/// difference on the shared save grid.
double perturbation_experiment(const ScalarField& u0, const DriftField& b, const ForcingField& f,
                               double delta, const FractionalParams& p, double eps,
                               const IvpOptions& opt = {});

} // namespace fdlab
