#pragma once

#include <cstddef>
#include <vector>

#include "fdlab/grid.hpp"

namespace fdlab {

/// Real values over the nodes of a TorusGrid.  Layout is row-major with
/// the last axis contiguous: value(i0, i1) = values[i0*n + i1] for dim 2.
struct ScalarField {
    TorusGrid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const TorusGrid& g, double fill = 0.0)
        : grid(g), values(g.num_nodes(), fill) {}
    ScalarField(const TorusGrid& g, std::vector<double> v);

    double& at(int i0, int i1 = 0) { return values[grid.index(i0, i1)]; }
    double at(int i0, int i1 = 0) const { return values[grid.index(i0, i1)]; }

    double min() const;
    double max() const;
    double mean() const;
    double sup_norm() const;
    double oscillation() const { return max() - min(); }
    bool finite() const;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);
double sup_distance(const ScalarField& a, const ScalarField& b);
/// <f, g> h^dim, the grid approximation of the L2 pairing.
double inner_product(const ScalarField& a, const ScalarField& b);

/// Values over TorusGrid x GradedYGrid nodes.  Slice j (all x at height
/// y_j) is contiguous; slice 0 is the trace.
struct ExtendedField {
    TorusGrid xgrid;
    GradedYGrid ygrid;
    std::vector<double> values;

    ExtendedField() = default;
    ExtendedField(const TorusGrid& xg, const GradedYGrid& yg, double fill = 0.0)
        : xgrid(xg), ygrid(yg), values(xg.num_nodes() * yg.num_levels(), fill) {}

    std::size_t slice_size() const { return xgrid.num_nodes(); }
    double* slice(int j) { return values.data() + slice_size() * j; }
    const double* slice(int j) const { return values.data() + slice_size() * j; }
    double& at(int j, int i0, int i1 = 0) { return values[slice_size() * j + xgrid.index(i0, i1)]; }
    double at(int j, int i0, int i1 = 0) const {
        return values[slice_size() * j + xgrid.index(i0, i1)];
    }

    ScalarField trace() const;
    ScalarField slice_field(int j) const;
};

} // namespace fdlab
