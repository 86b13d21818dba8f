#include "fdlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdlab {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

TorusGrid TorusGrid::make(int dim, int n, double length) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("TorusGrid: dim must be 1 or 2");
    if (n < 8 || !power_of_two(n))
        throw std::invalid_argument("TorusGrid: n must be a power of two >= 8, got " +
                                    std::to_string(n));
    if (!std::isfinite(length) || length <= 0.0)
        throw std::invalid_argument("TorusGrid: period length must be positive and finite");
    TorusGrid g;
    g.dim = dim;
    g.n = n;
    g.length = length;
    return g;
}

double TorusGrid::torus_distance(double u, double v) const {
    double d = std::fmod(std::fabs(u - v), length);
    return std::min(d, length - d);
}

GradedYGrid make_graded_grid(double height, int m, double gamma) {
    if (!std::isfinite(height) || height <= 0.0)
        throw std::invalid_argument("make_graded_grid: height must be positive and finite");
    if (m < 4)
        throw std::invalid_argument("make_graded_grid: need at least 4 intervals, got " +
                                    std::to_string(m));
    if (!std::isfinite(gamma) || gamma < 1.0)
        throw std::invalid_argument("make_graded_grid: gamma must be >= 1");

    GradedYGrid g;
    g.height = height;
    g.m = m;
    g.gamma = gamma;
    g.nodes.resize(m + 1);
    for (int j = 0; j <= m; ++j)
        g.nodes[j] = height * std::pow(static_cast<double>(j) / m, gamma);
    g.nodes[0] = 0.0;
    g.nodes[m] = height; // endpoints exact regardless of pow rounding
    return g;
}

double default_grading(double a) {
    double g = 2.0 / (1.0 - a);
    return g < 1.0 ? 1.0 : g;
}

} // namespace fdlab
