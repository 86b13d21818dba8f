#pragma once

#include <array>
#include <vector>

#include "fdlab/evolution.hpp"

namespace fdlab {

/// Backward characteristic through the space-time origin together with
/// the accumulated source along it:
///   V(0) = 0,  V'(t) = b(t, V(t))      on [-1, 0]
///   S(t) = integral_t^0 f(s, 0) ds  (so S(0) = 0, S'(t) = -f(t, 0)).
struct FlowPath {
    std::vector<double> times; // ascending, times.back() == 0
    std::vector<std::array<double, 2>> positions;
    std::vector<double> source_integral;

    std::array<double, 2> position(double t) const; // linear interpolation
    double source(double t) const;
};

/// Classical 4-stage Runge-Kutta integration backward in time on [-1, 0];
/// S rides the same quadrature clock.  Pass f = nullptr when there is no
/// forcing (S is then identically zero).
FlowPath flow_ode(const DriftField& b, const ForcingField* f = nullptr, int steps = 256);

} // namespace fdlab
