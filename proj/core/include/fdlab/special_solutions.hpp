#pragma once

#include <array>

#include "fdlab/grid.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

/// The closed-form solutions of div(y^a grad u) = 0 that play the role of
/// the first harmonic polynomials, with their boundary flux lim y^a du/dy:
///   plane        A.x                          -> 0
///   layer        y^{1-a}/(1-a)                -> 1
///   layer_plane  y^{1-a}/(1-a) A.x            -> A.x
///   quadratic    |x|^2 - dim/(1+a) y^2        -> 0
enum class SpecialTag { plane, layer, layer_plane, quadratic };

struct SpecialSolution {
    SpecialTag tag;
    FractionalParams params;
    std::array<double, 2> slope{1.0, 0.0}; // the vector A where applicable

    double value(std::array<double, 2> x, double y) const;
    double expected_dtn(std::array<double, 2> x) const;
};

SpecialSolution make_special(SpecialTag tag, const FractionalParams& p,
                             std::array<double, 2> slope = {1.0, 0.0});

struct SpecialCheck {
    double residual_sup;  // discrete interior operator on the closed form
    double dtn_error_sup; // boundary-flux quotient vs the listed datum
};

/// Evaluate the production discretization (flux form in y, centered
/// second differences in x) on the closed form over a local patch
/// [-halfwidth, halfwidth]^dim x [0, Y].  Machine-zero residuals mean the
/// scheme reproduces the solution identically.
SpecialCheck check_special(const SpecialSolution& sol, int nx, double halfwidth,
                           const GradedYGrid& ygrid);

} // namespace fdlab
