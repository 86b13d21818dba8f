#include "fdlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fdlab/errors.hpp"
#include "fdlab/io.hpp"

namespace fdlab {

namespace {

void require_finite(const ScalarField& f, const char* who) {
    if (!f.finite()) throw std::invalid_argument(std::string(who) + ": non-finite input");
}

} // namespace

ScalarField MultiplierOp::apply(const ScalarField& f) const {
    if (!(f.grid == grid)) throw std::invalid_argument("MultiplierOp: grid mismatch");
    require_finite(f, "MultiplierOp");
    Spectrum s = rfft(f);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= symbol[i];
    return irfft(s);
}

MultiplierOp frac_laplacian_op(const TorusGrid& grid, const FractionalParams& p) {
    MultiplierOp op;
    op.grid = grid;
    op.symbol.resize(spectrum_size(grid));
    for (std::size_t i = 0; i < op.symbol.size(); ++i) {
        double kappa = spectrum_kappa(grid, i);
        op.symbol[i] = kappa == 0.0 ? 0.0 : std::pow(kappa, 2.0 * p.s);
    }
    return op;
}

MultiplierOp heat_op(const TorusGrid& grid, double t, const FractionalParams& p, double eps) {
    if (t < 0.0) throw std::invalid_argument("heat_op: negative time");
    if (eps < 0.0) throw std::invalid_argument("heat_op: negative viscosity");
    MultiplierOp op;
    op.grid = grid;
    op.symbol.resize(spectrum_size(grid));
    for (std::size_t i = 0; i < op.symbol.size(); ++i) {
        double kappa = spectrum_kappa(grid, i);
        double rate = kappa == 0.0 ? 0.0 : std::pow(kappa, 2.0 * p.s) + eps * kappa * kappa;
        op.symbol[i] = std::exp(-t * rate);
    }
    return op;
}

ScalarField frac_laplacian(const ScalarField& f, const FractionalParams& p) {
    return frac_laplacian_op(f.grid, p).apply(f);
}

ScalarField heat_propagate(const ScalarField& f, double t, const FractionalParams& p, double eps) {
    return heat_op(f.grid, t, p, eps).apply(f);
}

ScalarField spectral_gradient(const ScalarField& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim) throw std::invalid_argument("spectral_gradient: bad axis");
    Spectrum s = rfft(f);
    double w = 2.0 * std::numbers::pi / f.grid.length;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        int k0, k1;
        spectrum_wavenumbers(f.grid, i, k0, k1);
        int k = axis == 0 ? k0 : k1;
        if (std::abs(k) == f.grid.n / 2) k = 0; // Nyquist has no odd representative
        s.coeffs[i] *= std::complex<double>(0.0, w * k);
    }
    return irfft(s);
}

ScalarField spectral_shift(const ScalarField& f, double shift0, double shift1) {
    Spectrum s = rfft(f);
    double w = 2.0 * std::numbers::pi / f.grid.length;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        int k0, k1;
        spectrum_wavenumbers(f.grid, i, k0, k1);
        double phase = w * (k0 * shift0 + k1 * shift1);
        bool nyq = std::abs(k0) == f.grid.n / 2 || std::abs(k1) == f.grid.n / 2;
        if (nyq)
            s.coeffs[i] *= std::cos(phase); // symmetric treatment keeps the field real
        else
            s.coeffs[i] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return irfft(s);
}

ScalarField heat_kernel_slice(const TorusGrid& grid, double t, const FractionalParams& p) {
    if (t < 0.0) throw std::invalid_argument("heat_kernel_slice: negative time");
    Spectrum s;
    s.grid = grid;
    s.coeffs.resize(spectrum_size(grid));
    double vol = grid.dim == 1 ? grid.length : grid.length * grid.length;
    double scale = grid.num_nodes() / vol;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        double kappa = spectrum_kappa(grid, i);
        s.coeffs[i] = scale * std::exp(-t * std::pow(kappa, 2.0 * p.s));
    }
    return irfft(s);
}

HeatProfile heat_profile(const FractionalParams& p, const TorusGrid& grid) {
    // per-axis Nyquist frequency is the binding mode
    double axis_kappa = std::numbers::pi * grid.n / grid.length;
    double tail = std::exp(-std::pow(axis_kappa, 2.0 * p.s));
    if (tail >= 1e-12)
        throw ResolutionError("heat_profile: symbol at the Nyquist frequency is " +
                              std::to_string(tail) + ", grid does not resolve the decay");
    HeatProfile hp{p, heat_kernel_slice(grid, 1.0, p), 0.0};
    double h = grid.spacing();
    double cell = grid.dim == 1 ? h : h * h;
    double sum = 0.0;
    for (double v : hp.profile.values) sum += v;
    hp.mass = cell * sum;
    return hp;
}

double heat_profile_tail_slope(const HeatProfile& hp, double rmin, double rmax, int points) {
    const TorusGrid& g = hp.profile.grid;
    if (!(rmin > 0.0) || !(rmax > rmin) || rmax > g.length / 2 - g.spacing())
        throw std::invalid_argument("heat_profile_tail_slope: bad radius range");
    std::vector<double> rs, vs;
    for (int i = 0; i < points; ++i) {
        double r = rmin * std::pow(rmax / rmin, double(i) / (points - 1));
        double acc = 0.0;
        int cnt = 0;
        if (g.dim == 1) {
            int idx = static_cast<int>(std::lround(r / g.spacing()));
            acc = std::fabs(hp.profile.values[g.wrap(idx)]) +
                  std::fabs(hp.profile.values[g.wrap(-idx)]);
            cnt = 2;
        } else {
            // annulus of one-cell width around radius r
            double lo = r - g.spacing(), hi = r + g.spacing();
            for (int i0 = 0; i0 < g.n; ++i0) {
                double x0 = g.signed_coord(i0);
                if (std::fabs(x0) > hi) continue;
                for (int i1 = 0; i1 < g.n; ++i1) {
                    double x1 = g.signed_coord(i1);
                    double rho = std::hypot(x0, x1);
                    if (rho >= lo && rho <= hi) {
                        acc += std::fabs(hp.profile.at(i0, i1));
                        ++cnt;
                    }
                }
            }
        }
        if (cnt == 0) continue;
        rs.push_back(r);
        vs.push_back(acc / cnt);
    }
    // inline log-log fit; holder.hpp's fit_exponent is not used here to keep
    // the spectral module free of that dependency
    if (rs.size() < 3) throw std::invalid_argument("heat_profile_tail_slope: too few radii");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        mx += std::log(rs[i]);
        my += std::log(vs[i]);
    }
    mx /= rs.size();
    my /= rs.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        double dx = std::log(rs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(vs[i]) - my);
    }
    return sxy / sxx;
}

double selfsimilar_check(const FractionalParams& p, double t1, double t2, const TorusGrid& grid) {
    if (grid.dim != 1)
        throw std::invalid_argument("selfsimilar_check: implemented on dim-1 grids");
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw std::invalid_argument("selfsimilar_check: times must be positive");
    if (t1 > t2)
        throw DomainError("selfsimilar_check: rescaling with t1 > t2 expands beyond the torus");

    double kmax = std::numbers::pi * grid.n / grid.length;
    if (std::exp(-t1 * std::pow(kmax, 2.0 * p.s)) >= 1e-10)
        throw ResolutionError("selfsimilar_check: t1 kernel unresolved at the Nyquist frequency");

    if (t1 == t2) return 0.0;

    ScalarField h2 = heat_kernel_slice(grid, t2, p);
    double lambda = std::pow(t1 / t2, 1.0 / (2.0 * p.s));
    double factor = std::pow(t1 / t2, grid.dim / (2.0 * p.s));

    // coefficients of h(t1, .): (1/L) e^{-t1 kappa^{2s}}, evaluated directly
    // at the off-grid points lambda * x_i
    int half = grid.n / 2;
    std::vector<double> coeff(half + 1);
    double w = 2.0 * std::numbers::pi / grid.length;
    for (int k = 0; k <= half; ++k)
        coeff[k] = std::exp(-t1 * std::pow(w * k, 2.0 * p.s)) / grid.length;

    int stride = std::max(1, grid.n / 4096);
    double sup = 0.0;
    for (int i = 0; i < grid.n; i += stride) {
        double xi = lambda * grid.signed_coord(i);
        // Clenshaw-style recurrence over cos(k w xi)
        double c1 = std::cos(w * xi), s1 = std::sin(w * xi);
        double ck = 1.0, sk = 0.0;
        double val = coeff[0];
        for (int k = 1; k <= half; ++k) {
            double cn = ck * c1 - sk * s1;
            double sn = sk * c1 + ck * s1;
            ck = cn;
            sk = sn;
            val += (k == half ? 1.0 : 2.0) * coeff[k] * ck;
        }
        sup = std::max(sup, std::fabs(h2.values[i] - factor * val));
    }
    return sup;
}

void write_multiplier_csv(const std::string& path, const MultiplierOp& op) {
    std::vector<double> k0s, k1s, sym;
    for (std::size_t i = 0; i < op.symbol.size(); ++i) {
        int k0, k1;
        spectrum_wavenumbers(op.grid, i, k0, k1);
        k0s.push_back(k0);
        k1s.push_back(k1);
        sym.push_back(op.symbol[i]);
    }
    if (op.grid.dim == 1)
        write_csv(path, {"k", "symbol"}, {k0s, sym});
    else
        write_csv(path, {"k0", "k1", "symbol"}, {k0s, k1s, sym});
}

} // namespace fdlab
