#pragma once

#include <array>
#include <cstddef>

#include "fdlab/params.hpp"

namespace fdlab {

/// The explicit comparison functions, by where they control boundary
/// behavior:
///   sphere_boundary   C (1-|X|^2)^alpha + |X - X0|^alpha,  supersolution in B1+
///   flat_boundary     |X - (x0,0)|^alpha + C y^alpha,      supersolution for y in (0,1)
///   caloric_u         |x-x0|^2 + dim/(1+a) (-y^2 + 2 y^{1-a}) + c_t (t+1),
///                     a caloric solution of the extended heat flow
enum class BarrierTag { sphere_boundary, flat_boundary, caloric_u };

struct BarrierParams {
    double alpha = 0.5;
    std::array<double, 2> x0{0.0, 0.0}; // flat/caloric base point
    std::array<double, 2> sphere_x{0.0, 0.0};
    double sphere_y = 1.0; // X0 = (sphere_x, sphere_y), |X0| = 1, sphere_y > 0
    FractionalParams frac;
};

struct BarrierSpec {
    BarrierTag tag;
    BarrierParams par;
    double constant = 1.0; // C found by bisection (1 for caloric_u)

    double value(std::array<double, 2> x, double y, double t = 0.0) const;

    /// Exact closed-form reduction y^{-a} div(y^a grad B) = Lap B + (a/y) dB/dy,
    /// split affinely in the constant: returns c_part * C + rest.
    void reduced_operator_parts(std::array<double, 2> x, double y, double& c_part,
                                double& rest) const;
    double reduced_operator(std::array<double, 2> x, double y) const;
};

/// Builds the barrier and, for the sign-based tags, finds the smallest
/// C in [1, 2^10] making the sampled operator non-positive (bisection on
/// a fixed lattice).  Throws NoCertificateError when the range is
/// exhausted, std::invalid_argument on constraint violations
/// (sphere needs alpha in (0,1) and y0 > 0; flat needs alpha in (0,1-a)).
BarrierSpec make_barrier(BarrierTag tag, const BarrierParams& par);

struct VerificationReport {
    double max_operator_value = 0.0;
    std::size_t samples = 0;
    double h = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Samples the closed-form reduced operator on an h-lattice over the
/// validity region minus 2h collars around the singular set (X0 and
/// {y=0}).  For caloric_u the report instead carries the maximum of the
/// discrete interior and boundary-flux residuals at resolution h.
VerificationReport verify_supersolution(const BarrierSpec& spec, double h);

/// Finite-difference cross-check of the closed-form reduction at one
/// point (centered differences, spacing fd_h).
double fd_reduced_operator(const BarrierSpec& spec, std::array<double, 2> x, double y,
                           double fd_h);

} // namespace fdlab
