#include "fdlab/special_solutions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fdlab {

double SpecialSolution::value(std::array<double, 2> x, double y) const {
    const double a = params.a();
    double ax = slope[0] * x[0] + (params.dim == 2 ? slope[1] * x[1] : 0.0);
    switch (tag) {
        case SpecialTag::plane: return ax;
        case SpecialTag::layer: return std::pow(y, 1.0 - a) / (1.0 - a);
        case SpecialTag::layer_plane: return std::pow(y, 1.0 - a) / (1.0 - a) * ax;
        case SpecialTag::quadratic: {
            double x2 = x[0] * x[0] + (params.dim == 2 ? x[1] * x[1] : 0.0);
            return x2 - params.dim / (1.0 + a) * y * y;
        }
    }
    return 0.0;
}

double SpecialSolution::expected_dtn(std::array<double, 2> x) const {
    double ax = slope[0] * x[0] + (params.dim == 2 ? slope[1] * x[1] : 0.0);
    switch (tag) {
        case SpecialTag::plane: return 0.0;
        case SpecialTag::layer: return 1.0;
        case SpecialTag::layer_plane: return ax;
        case SpecialTag::quadratic: return 0.0;
    }
    return 0.0;
}

SpecialSolution make_special(SpecialTag tag, const FractionalParams& p,
                             std::array<double, 2> slope) {
    return SpecialSolution{tag, p, slope};
}

SpecialCheck check_special(const SpecialSolution& sol, int nx, double halfwidth,
                           const GradedYGrid& yg) {
    if (nx < 5) throw std::invalid_argument("check_special: need nx >= 5");
    const FractionalParams& p = sol.params;
    const double a = p.a();
    const int m = yg.m;
    const auto& y = yg.nodes;
    const double hx = 2.0 * halfwidth / (nx - 1);

    auto xcoord = [&](int i) { return -halfwidth + hx * i; };

    // flux coefficients, identical to the production scheme
    std::vector<double> coupling(m), cell(m, 0.0), weight(m, 0.0);
    for (int j = 0; j < m; ++j) {
        double w = a == 0.0 ? 1.0
                            : (1.0 - a) * (y[j + 1] - y[j]) /
                                  (std::pow(y[j + 1], 1.0 - a) - std::pow(y[j], 1.0 - a));
        coupling[j] = w / (y[j + 1] - y[j]);
    }
    for (int j = 1; j < m; ++j) {
        double lo = 0.5 * (y[j - 1] + y[j]);
        double hi = 0.5 * (y[j] + y[j + 1]);
        cell[j] = hi - lo;
        weight[j] = (std::pow(hi, 1.0 + a) - std::pow(lo, 1.0 + a)) / ((1.0 + a) * (hi - lo));
    }

    const int ny_dim = p.dim == 2 ? nx : 1;
    auto val = [&](int i0, int i1, int j) {
        std::array<double, 2> x{xcoord(i0), p.dim == 2 ? xcoord(i1) : 0.0};
        return sol.value(x, y[j]);
    };

    double res = 0.0;
    for (int j = 1; j < m; ++j) {
        for (int i0 = 1; i0 + 1 < nx; ++i0) {
            for (int i1 = (p.dim == 2 ? 1 : 0); i1 + 1 < (p.dim == 2 ? ny_dim : 2); ++i1) {
                double u = val(i0, i1, j);
                double lap = (val(i0 + 1, i1, j) - 2.0 * u + val(i0 - 1, i1, j)) / (hx * hx);
                if (p.dim == 2)
                    lap += (val(i0, i1 + 1, j) - 2.0 * u + val(i0, i1 - 1, j)) / (hx * hx);
                double flux = coupling[j] * (val(i0, i1, j + 1) - u) -
                              coupling[j - 1] * (u - val(i0, i1, j - 1));
                double r = flux / cell[j] + weight[j] * lap;
                res = std::max(res, std::fabs(r));
            }
        }
    }

    double dtn_err = 0.0;
    const double y1 = y[1];
    const double scale = (1.0 - a) / std::pow(y1, 1.0 - a);
    for (int i0 = 0; i0 < nx; ++i0) {
        for (int i1 = 0; i1 < ny_dim; ++i1) {
            std::array<double, 2> x{xcoord(i0), p.dim == 2 ? xcoord(i1) : 0.0};
            double quotient = scale * (sol.value(x, y1) - sol.value(x, 0.0));
            dtn_err = std::max(dtn_err, std::fabs(quotient - sol.expected_dtn(x)));
        }
    }
    return SpecialCheck{res, dtn_err};
}

} // namespace fdlab
