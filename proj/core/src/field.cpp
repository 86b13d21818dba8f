#include "fdlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdlab {

ScalarField::ScalarField(const TorusGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.num_nodes())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }

double ScalarField::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double ScalarField::sup_norm() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::fabs(v));
    return s;
}

bool ScalarField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {
void check_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("field arithmetic: grids differ");
}
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    ScalarField r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    ScalarField r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    return r;
}

ScalarField operator*(double c, const ScalarField& a) {
    ScalarField r = a;
    for (double& v : r.values) v *= c;
    return r;
}

double sup_distance(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        s = std::max(s, std::fabs(a.values[i] - b.values[i]));
    return s;
}

double inner_product(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    double h = a.grid.spacing();
    return s * (a.grid.dim == 1 ? h : h * h);
}

ScalarField ExtendedField::trace() const { return slice_field(0); }

ScalarField ExtendedField::slice_field(int j) const {
    ScalarField f(xgrid);
    const double* src = slice(j);
    std::copy(src, src + slice_size(), f.values.begin());
    return f;
}

} // namespace fdlab
