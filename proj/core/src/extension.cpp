#include "fdlab/extension.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fdlab/errors.hpp"
#include "fdlab/fft.hpp"
#include "fdlab/linalg.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {

namespace {

// Geometry of the graded strip shared by the mode solves and the residual.
struct StripScheme {
    std::vector<double> cell;     // Delta_j = y_{j+1/2} - y_{j-1/2}, j = 1..m-1
    std::vector<double> coupling; // alpha_j = w_{j+1/2} / (y_{j+1} - y_j), j = 0..m-1
    std::vector<double> weight;   // cell average of y^a over cell j
};

// Flux coefficient w_{j+1/2}: the intermediate value of y^a for which the
// scheme is exact on the boundary-layer profile y^{1-a},
//   w = (1-a) (y_{j+1} - y_j) / (y_{j+1}^{1-a} - y_j^{1-a}).
double flux_coefficient(double y0, double y1, double a) {
    if (a == 0.0) return 1.0;
    return (1.0 - a) * (y1 - y0) / (std::pow(y1, 1.0 - a) - std::pow(y0, 1.0 - a));
}

StripScheme build_scheme(const GradedYGrid& yg, double a) {
    const int m = yg.m;
    const auto& y = yg.nodes;
    StripScheme s;
    s.coupling.resize(m);
    for (int j = 0; j < m; ++j)
        s.coupling[j] = flux_coefficient(y[j], y[j + 1], a) / (y[j + 1] - y[j]);
    s.cell.resize(m);
    s.weight.resize(m);
    for (int j = 1; j < m; ++j) {
        double lo = 0.5 * (y[j - 1] + y[j]);
        double hi = 0.5 * (y[j] + y[j + 1]);
        s.cell[j] = hi - lo;
        s.weight[j] = (std::pow(hi, 1.0 + a) - std::pow(lo, 1.0 + a)) / ((1.0 + a) * (hi - lo));
    }
    return s;
}

// Exact decay ratio phi(kappa y_M) / phi(kappa y_{M-1}) of the half-line
// mode problem, phi(z) = z^s K_s(z) up to normalization.
double decay_ratio(double kappa, double s, double y_lo, double y_hi) {
    if (kappa == 0.0) return 1.0; // bounded continuation of the mean mode
    double zl = kappa * y_lo, zh = kappa * y_hi;
    if (zl > 650.0) // K_s underflows; use its exponential asymptotics
        return std::pow(zh / zl, s - 0.5) * std::exp(zl - zh);
    double num = std::pow(zh, s) * std::cyl_bessel_k(s, zh);
    double den = std::pow(zl, s) * std::cyl_bessel_k(s, zl);
    return num / den;
}

// Solve the strip problem for one mode with unit trace; returns phi_0..phi_m.
std::vector<double> mode_profile(double kappa, const FractionalParams& p, const GradedYGrid& yg,
                                 const StripScheme& s, TopBoundary top) {
    const int m = yg.m;
    const double k2 = kappa * kappa;
    std::vector<double> lower(m - 1), diag(m - 1), upper(m - 1), rhs(m - 1, 0.0);
    for (int j = 1; j < m; ++j) {
        int r = j - 1;
        lower[r] = j > 1 ? -s.coupling[j - 1] : 0.0;
        upper[r] = j < m - 1 ? -s.coupling[j] : 0.0;
        diag[r] = s.coupling[j] + s.coupling[j - 1] + s.cell[j] * s.weight[j] * k2;
    }
    rhs[0] = s.coupling[0] * 1.0; // phi_0 = 1
    double top_ratio = 0.0;
    if (top == TopBoundary::mode_decay) {
        top_ratio = decay_ratio(kappa, p.s, yg.nodes[m - 1], yg.nodes[m]);
        diag[m - 2] -= s.coupling[m - 1] * top_ratio;
    }
    std::vector<double> interior = solve_tridiagonal(lower, diag, upper, rhs);
    std::vector<double> phi(m + 1);
    phi[0] = 1.0;
    for (int j = 1; j < m; ++j) phi[j] = interior[j - 1];
    phi[m] = top == TopBoundary::mode_decay ? top_ratio * phi[m - 1] : 0.0;
    return phi;
}

std::mutex calibration_mutex;
std::map<std::pair<double, double>, double>& calibration_cache() {
    static std::map<std::pair<double, double>, double> cache;
    return cache;
}

} // namespace

double mode_dtn_oracle(double kappa, const FractionalParams& p, double height,
                       const OracleOptions& opt) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("mode_dtn_oracle: kappa must be positive");
    if (!(height > 0.0)) throw std::invalid_argument("mode_dtn_oracle: height must be positive");

    const double a = p.a();
    const double zmax = std::pow(height, 1.0 - a) / (1.0 - a);
    const double pexp = 2.0 * a / (1.0 - a);
    const double cp = std::pow(1.0 - a, pexp);

    auto solve_at = [&](int intervals) {
        const double dz = zmax / intervals;
        std::vector<double> lower(intervals - 1, 1.0), diag(intervals - 1),
            upper(intervals - 1, 1.0), rhs(intervals - 1, 0.0);
        for (int i = 1; i < intervals; ++i) {
            double z = i * dz;
            double q = kappa * kappa * (a == 0.0 ? 1.0 : cp * std::pow(z, pexp));
            diag[i - 1] = -2.0 - dz * dz * q;
        }
        rhs[0] = -1.0; // psi_0 = 1
        lower[0] = 0.0;
        upper[intervals - 2] = 0.0; // psi_M = 0
        std::vector<double> psi = solve_tridiagonal(lower, diag, upper, rhs);
        // psi'(0) from the first interval plus the exact Taylor remainder of
        // the singular coefficient, int_0^dz (dz - z) q(z) dz / dz with psi ~ 1
        double corr = kappa * kappa * cp * std::pow(dz, pexp + 1.0) /
                      ((pexp + 1.0) * (pexp + 2.0));
        if (a == 0.0) corr = kappa * kappa * dz / 2.0;
        return -((psi[0] - 1.0) / dz - corr);
    };

    int intervals = opt.initial_intervals;
    double prev = solve_at(intervals);
    for (int lvl = 0; lvl < opt.max_doublings; ++lvl) {
        intervals *= 2;
        double cur = solve_at(intervals);
        if (std::fabs(cur - prev) <= opt.rel_tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    throw OracleFailure("mode_dtn_oracle: no convergence to " + std::to_string(opt.rel_tol) +
                        " after " + std::to_string(opt.max_doublings) + " refinements");
}

double mode_ode_oracle(int k, const FractionalParams& p, double height, const OracleOptions& opt) {
    if (k == 0) throw std::invalid_argument("mode_ode_oracle: k must be nonzero");
    double kappa = std::fabs(static_cast<double>(k));
    if (kappa * height < 10.0)
        throw std::invalid_argument("mode_ode_oracle: need |k| * height >= 10 for decay");
    return mode_dtn_oracle(kappa, p, height, opt);
}

double dtn_calibration(const FractionalParams& p, const TorusGrid& grid) {
    std::lock_guard<std::mutex> lock(calibration_mutex);
    auto key = std::make_pair(p.s, grid.length);
    auto it = calibration_cache().find(key);
    if (it != calibration_cache().end()) return it->second;

    double kappa1 = 2.0 * std::numbers::pi / grid.length;
    double oracle = mode_dtn_oracle(kappa1, p, 12.0 / kappa1);
    // raw DtN of a decaying mode is negative; c maps it onto +kappa^{2s}
    double c = -std::pow(kappa1, 2.0 * p.s) / oracle;
    calibration_cache()[key] = c;
    return c;
}

ScalarField dtn_quotient(const ExtendedField& u, double a) {
    double y1 = u.ygrid.nodes[1];
    double scale = (1.0 - a) / std::pow(y1, 1.0 - a);
    ScalarField out(u.xgrid);
    const double* s1 = u.slice(1);
    const double* s0 = u.slice(0);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = scale * (s1[i] - s0[i]);
    return out;
}

ExtensionSolution solve_extension(const ScalarField& f, const FractionalParams& p,
                                  const GradedYGrid& ygrid, TopBoundary top) {
    if (!f.finite()) throw std::invalid_argument("solve_extension: non-finite trace");
    const TorusGrid& g = f.grid;
    const double a = p.a();
    const int m = ygrid.m;
    StripScheme scheme = build_scheme(ygrid, a);

    Spectrum fs = rfft(f);
    const std::size_t nmodes = fs.coeffs.size();

    // distinct |kappa| share one profile solve
    std::map<double, std::vector<double>> profiles;
    for (std::size_t i = 0; i < nmodes; ++i) {
        double kappa = spectrum_kappa(g, i);
        if (!profiles.count(kappa))
            profiles[kappa] = mode_profile(kappa, p, ygrid, scheme, top);
    }

    ExtensionSolution sol;
    sol.params = p;
    sol.field = ExtendedField(g, ygrid);

    Spectrum slice = fs;
    for (int j = 0; j <= m; ++j) {
        for (std::size_t i = 0; i < nmodes; ++i)
            slice.coeffs[i] = fs.coeffs[i] * profiles[spectrum_kappa(g, i)][j];
        ScalarField sf = irfft(slice);
        std::copy(sf.values.begin(), sf.values.end(), sol.field.slice(j));
    }
    // trace is the prescribed data exactly, not its transform round trip
    std::copy(f.values.begin(), f.values.end(), sol.field.slice(0));

    sol.dtn = dtn_quotient(sol.field, a);
    sol.calibration = dtn_calibration(p, g);

    // interior residual of the solved system (round-off level by construction)
    double res = 0.0;
    {
        std::vector<ScalarField> lap(m + 1);
        MultiplierOp lap_op; // spectral Laplacian, the horizontal operator of the scheme
        lap_op.grid = g;
        lap_op.symbol.resize(nmodes);
        for (std::size_t i = 0; i < nmodes; ++i) {
            double kappa = spectrum_kappa(g, i);
            lap_op.symbol[i] = -kappa * kappa;
        }
        double usup = std::max(1.0, f.sup_norm());
        for (int j = 1; j < m; ++j) lap[j] = lap_op.apply(sol.field.slice_field(j));
        for (int j = 1; j < m; ++j) {
            const double* lo = sol.field.slice(j - 1);
            const double* mid = sol.field.slice(j);
            const double* hi = sol.field.slice(j + 1);
            // relative to the row's diagonal scale, so boundary-layer rows do
            // not amplify round-off by 1/cell^2
            double row_scale =
                (scheme.coupling[j] + scheme.coupling[j - 1]) / scheme.cell[j] * usup;
            for (std::size_t i = 0; i < g.num_nodes(); ++i) {
                double flux = scheme.coupling[j] * (hi[i] - mid[i]) -
                              scheme.coupling[j - 1] * (mid[i] - lo[i]);
                double r = flux / scheme.cell[j] + scheme.weight[j] * lap[j].values[i];
                res = std::max(res, std::fabs(r) / row_scale);
            }
        }
    }
    sol.residual = res;
    return sol;
}

ScalarField poisson_extend(const ScalarField& f, const FractionalParams& p, double y) {
    if (!(y > 0.0)) throw std::invalid_argument("poisson_extend: y must be positive");
    if (!f.finite()) throw std::invalid_argument("poisson_extend: non-finite input");
    const TorusGrid& g = f.grid;
    const double a = p.a();
    const double L = g.length;

    ScalarField kernel(g);
    if (g.dim == 1) {
        const int images = 64;
        const double beta = 2.0 - a; // kernel exponent n + 1 - a
        auto ptail = [&](double w0) {
            // (1/L) int_{w0}^inf (w^2+y^2)^{-beta/2} dw, asymptotic in y/w
            double t1 = std::pow(w0, 1.0 - beta) / (beta - 1.0);
            double t2 = -0.5 * beta * y * y * std::pow(w0, -1.0 - beta) / (beta + 1.0);
            double t3 = 0.125 * beta * (beta + 2.0) * y * y * y * y *
                        std::pow(w0, -3.0 - beta) / (beta + 3.0);
            return (t1 + t2 + t3) / L;
        };
        for (int i = 0; i < g.n; ++i) {
            double x = g.signed_coord(i);
            double s = 0.0;
            for (int mm = -images; mm <= images; ++mm) {
                double w = x + mm * L;
                s += std::pow(w * w + y * y, -beta / 2.0);
            }
            s += ptail((images + 0.5) * L + x) + ptail((images + 0.5) * L - x);
            kernel.values[i] = s; // y^{1-a} prefactor cancels in the normalization
        }
    } else {
        const int images = 16;
        const double beta = 3.0 - a;
        for (int i0 = 0; i0 < g.n; ++i0) {
            double x0 = g.signed_coord(i0);
            for (int i1 = 0; i1 < g.n; ++i1) {
                double x1 = g.signed_coord(i1);
                double s = 0.0;
                for (int m0 = -images; m0 <= images; ++m0)
                    for (int m1 = -images; m1 <= images; ++m1) {
                        double w0 = x0 + m0 * L, w1 = x1 + m1 * L;
                        s += std::pow(w0 * w0 + w1 * w1 + y * y, -beta / 2.0);
                    }
                // radial tail beyond the image box
                double R = (images + 0.5) * L;
                s += 2.0 * std::numbers::pi * std::pow(R * R + y * y, -(1.0 - a) / 2.0) /
                     ((1.0 - a) * L * L);
                kernel.values[g.index(i0, i1)] = s;
            }
        }
    }

    // normalize to unit discrete mass: extension of 1 is exactly 1
    double mass = 0.0;
    for (double v : kernel.values) mass += v;
    for (double& v : kernel.values) v /= mass;

    // circular convolution via the transform (exact discrete convolution)
    Spectrum ks = rfft(kernel), s = rfft(f);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= ks.coeffs[i];
    return irfft(s);
}

ExpansionFit expansion_fit(const ExtensionSolution& sol) {
    const ExtendedField& u = sol.field;
    const double a = sol.params.a();
    const auto& y = u.ygrid.nodes;
    const int m = u.ygrid.m;
    const double ytop = u.ygrid.height / 4.0;

    int below = 0;
    for (int j = 1; j <= m; ++j)
        if (y[j] <= ytop) ++below;
    if (below < 6)
        throw std::invalid_argument("expansion_fit: need at least 6 levels below Y/4, have " +
                                    std::to_string(below));

    ExpansionFit fit;
    fit.g = dtn_quotient(u, a);
    for (double& v : fit.g.values) v /= (1.0 - a); // g = raw flux / (1-a)

    const std::size_t nx = u.slice_size();
    const double* trace = u.slice(0);

    for (double hi = ytop; hi > y[1]; hi /= 2.0) {
        double lo = hi / 2.0;
        double sup = 0.0;
        bool any = false;
        for (int j = 1; j <= m; ++j) {
            if (y[j] <= lo || y[j] > hi) continue;
            any = true;
            double prof = std::pow(y[j], 1.0 - a);
            const double* uj = u.slice(j);
            for (std::size_t i = 0; i < nx; ++i) {
                double r = uj[i] - trace[i] - prof * fit.g.values[i];
                sup = std::max(sup, std::fabs(r));
            }
        }
        if (!any) continue;
        fit.band_y.push_back(hi);
        fit.band_residual.push_back(sup);
    }

    double floor_val = 1e-13 * std::max(1.0, sol.field.trace().sup_norm());
    std::vector<double> fs, fv;
    for (std::size_t i = 0; i < fit.band_y.size(); ++i)
        if (fit.band_residual[i] > floor_val) {
            fs.push_back(fit.band_y[i]);
            fv.push_back(fit.band_residual[i]);
        }
    if (fs.size() >= 3) {
        // local log-log fit (slope only)
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            mx += std::log(fs[i]);
            my += std::log(fv[i]);
        }
        mx /= fs.size();
        my /= fs.size();
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            double dx = std::log(fs[i]) - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(fv[i]) - my);
        }
        fit.slope = sxy / sxx;
        fit.has_slope = true;
    }
    return fit;
}

CorollaryReport check_corollary_expansion(const ExtensionSolution& sol, int x0_index) {
    const ExtendedField& u = sol.field;
    const TorusGrid& g = u.xgrid;
    if (g.dim != 1)
        throw std::invalid_argument("check_corollary_expansion: dim-1 traces only");
    const double a = sol.params.a();

    // local statement, local gradient: fourth-order centered stencil at x0
    ScalarField trace = u.trace();
    int i0 = g.wrap(x0_index);
    double f0 = trace.values[i0];
    double h = g.spacing();
    double g0 = (-trace.values[g.wrap(i0 + 2)] + 8.0 * trace.values[g.wrap(i0 + 1)] -
                 8.0 * trace.values[g.wrap(i0 - 1)] + trace.values[g.wrap(i0 - 2)]) /
                (12.0 * h);

    ExpansionFit fit = expansion_fit(sol);
    double D = fit.g.values[g.wrap(x0_index)];

    CorollaryReport rep;
    rep.coefficient_d = D;
    double rho0 = std::min(u.ygrid.height / 4.0, g.length / 16.0);
    for (int lvl = 0; lvl < 4; ++lvl) {
        double rho = rho0 / std::pow(2.0, lvl);
        double worst = 0.0;
        for (int j = 0; j <= u.ygrid.m; ++j) {
            double y = u.ygrid.nodes[j];
            if (y > rho) break;
            const double* uj = u.slice(j);
            for (int i = 0; i < g.n; ++i) {
                double dx = g.signed_coord(g.wrap(i - g.wrap(x0_index)));
                if (dx * dx + y * y > rho * rho) continue;
                double prof = std::pow(y, 1.0 - a);
                double denom = dx * dx + y * y + std::fabs(dx) * prof;
                if (denom == 0.0) continue;
                double num = uj[i] - f0 - g0 * dx - D * prof;
                worst = std::max(worst, std::fabs(num) / denom);
            }
        }
        rep.radii.push_back(rho);
        rep.empirical_c.push_back(worst);
    }
    rep.smallest_c = rep.empirical_c.back();
    return rep;
}

} // namespace fdlab
