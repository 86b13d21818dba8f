#pragma once

#include <cstddef>
#include <vector>

namespace fdlab {

/// Periodic grid on [0, L)^dim with n points per axis, n a power of two.
/// Node i sits at i*h, h = L/n.  signed_coord folds node positions into
/// (-L/2, L/2] so that balls around the origin read naturally.
struct TorusGrid {
    int dim = 1;
    int n = 8;
    double length = 6.283185307179586476925286766559; // 2*pi

    static TorusGrid make(int dim, int n, double length);

    double spacing() const { return length / n; }
    std::size_t num_nodes() const {
        return dim == 1 ? static_cast<std::size_t>(n)
                        : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }

    double coord(int i) const { return spacing() * i; }
    double signed_coord(int i) const {
        return (2 * i <= n) ? spacing() * i : spacing() * (i - n);
    }
    /// Torus (minimum image) distance between coordinates u and v.
    double torus_distance(double u, double v) const;

    int wrap(int i) const {
        int r = i % n;
        return r < 0 ? r + n : r;
    }
    std::size_t index(int i0, int i1 = 0) const {
        return dim == 1 ? static_cast<std::size_t>(wrap(i0))
                        : static_cast<std::size_t>(wrap(i0)) * n + wrap(i1);
    }

    bool operator==(const TorusGrid&) const = default;
};

/// Graded one-sided grid on [0, Y]: y_j = Y*(j/M)^gamma, j = 0..M.
/// gamma >= 1 clusters nodes at y = 0 where solutions carry a y^{1-a}
/// layer; gamma = 2/(1-a) makes the nodes uniform in the variable y^{1-a}.
struct GradedYGrid {
    double height = 1.0;
    int m = 4;
    double gamma = 1.0;
    std::vector<double> nodes;

    int num_levels() const { return m + 1; } // includes y_0 = 0 and y_M = Y

    bool operator==(const GradedYGrid&) const = default;
};

GradedYGrid make_graded_grid(double height, int m, double gamma);

/// Default grading 2/(1-a); for a = 0 this is the uniform grid.
double default_grading(double a);

} // namespace fdlab
