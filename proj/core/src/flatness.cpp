#include "fdlab/flatness.hpp"

#include <cmath>
#include <stdexcept>

#include "fdlab/evolution.hpp"
#include "fdlab/holder.hpp"
#include "fdlab/linalg.hpp"

namespace fdlab {

ExtendedTrajectory extend_trajectory(const Trajectory& traj, const FractionalParams& p,
                                     const GradedYGrid& ygrid, TopBoundary top) {
    ExtendedTrajectory out;
    out.params = p;
    out.times = traj.times;
    out.fields.reserve(traj.fields.size());
    for (const ScalarField& f : traj.fields) {
        ExtensionSolution sol = solve_extension(f, p, ygrid, top);
        out.calibration = sol.calibration;
        out.fields.push_back(std::move(sol.field));
    }
    return out;
}

namespace {

// Differentiation weights tying D' to D on the window slices: centered in
// the interior, one-sided second order at the ends; exact on linear D.
std::vector<std::vector<double>> diff_matrix(const std::vector<double>& t) {
    const std::size_t s = t.size();
    std::vector<std::vector<double>> w(s, std::vector<double>(s, 0.0));
    if (s == 1) return w; // D' forced to zero
    if (s == 2) {
        double dt = t[1] - t[0];
        w[0][0] = w[1][0] = -1.0 / dt;
        w[0][1] = w[1][1] = 1.0 / dt;
        return w;
    }
    for (std::size_t m = 0; m < s; ++m) {
        if (m == 0) {
            double dt = t[1] - t[0];
            w[0][0] = -1.5 / dt;
            w[0][1] = 2.0 / dt;
            w[0][2] = -0.5 / dt;
        } else if (m + 1 == s) {
            double dt = t[s - 1] - t[s - 2];
            w[m][s - 1] = 1.5 / dt;
            w[m][s - 2] = -2.0 / dt;
            w[m][s - 3] = 0.5 / dt;
        } else {
            double dt = t[m + 1] - t[m - 1];
            w[m][m + 1] = 1.0 / dt;
            w[m][m - 1] = -1.0 / dt;
        }
    }
    return w;
}

} // namespace

FlatnessReport flatness_profile(const ExtendedTrajectory& u, const FractionalParams& p,
                                double ratio, int num_scales, bool fit_plane,
                                std::size_t min_samples) {
    if (!(ratio > 0.0) || ratio > 0.5)
        throw std::invalid_argument("flatness_profile: ratio must lie in (0, 1/2]");
    if (num_scales < 3) throw std::invalid_argument("flatness_profile: need at least 3 scales");
    if (u.fields.empty()) throw std::invalid_argument("flatness_profile: empty trajectory");

    const TorusGrid& g = u.fields[0].xgrid;
    const GradedYGrid& yg = u.fields[0].ygrid;
    const double a = p.a();
    const int dim = g.dim;
    const int nplane = fit_plane ? dim : 0;

    FlatnessReport rep;
    rep.ratio = ratio;
    rep.requested_scales = num_scales;

    double usup = 0.0;
    for (const auto& f : u.fields)
        for (double v : f.values) usup = std::max(usup, std::fabs(v));

    for (int k = 0; k <= num_scales; ++k) {
        double radius = std::pow(ratio, k);
        double twin = std::pow(radius, 2.0 * p.s);

        // window pieces
        std::vector<std::size_t> slice_ids;
        for (std::size_t m = 0; m < u.times.size(); ++m)
            if (u.times[m] >= -twin - 1e-12) slice_ids.push_back(m);
        std::vector<int> xids;
        if (dim == 1) {
            for (int i = 0; i < g.n; ++i)
                if (std::fabs(g.signed_coord(i)) < radius) xids.push_back(i);
        } else {
            for (int i0 = 0; i0 < g.n; ++i0)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    double x0 = g.signed_coord(i0), x1 = g.signed_coord(i1);
                    if (x0 * x0 + x1 * x1 < radius * radius)
                        xids.push_back(i0 * g.n + i1);
                }
        }
        std::vector<int> yids;
        for (int j = 0; j <= yg.m; ++j)
            if (yg.nodes[j] < radius) yids.push_back(j);

        std::size_t count = slice_ids.size() * xids.size() * yids.size();
        bool too_coarse =
            count < min_samples || xids.size() < 3 || slice_ids.size() < 2 || yids.empty();
        if (too_coarse) {
            rep.truncated = true;
            break;
        }

        std::vector<double> wt(slice_ids.size());
        for (std::size_t m = 0; m < slice_ids.size(); ++m) wt[m] = u.times[slice_ids[m]];
        auto W = diff_matrix(wt);
        // evolution clock vs strip normalization: dD/dt = |c| lim y^a du/dy
        double tie = 1.0 / std::fabs(u.calibration);
        for (auto& row : W)
            for (double& v : row) v *= tie;
        const std::size_t S = slice_ids.size();
        const std::size_t nunk = nplane + S;

        // y-profile values and quadrature-style weights
        std::vector<double> prof(yids.size()), ywt(yids.size());
        for (std::size_t jj = 0; jj < yids.size(); ++jj) {
            int j = yids[jj];
            prof[jj] = std::pow(yg.nodes[j], 1.0 - a) / (1.0 - a);
            double lo = j == 0 ? 0.0 : 0.5 * (yg.nodes[j - 1] + yg.nodes[j]);
            double hi = j == yg.m ? yg.nodes[j] : 0.5 * (yg.nodes[j] + yg.nodes[j + 1]);
            ywt[jj] = std::max(hi - lo, 1e-12);
        }

        // assemble weighted normal equations over [A | D_0..D_{S-1}];
        // each sample's design row has at most dim + 4 nonzeros, so the
        // rank-one updates run over an explicit entry list
        DenseMatrix N(nunk);
        std::vector<double> rhs(nunk, 0.0);
        std::vector<std::pair<std::size_t, double>> entries;
        entries.reserve(dim + 4);
        for (std::size_t mm = 0; mm < S; ++mm) {
            const ExtendedField& f = u.fields[slice_ids[mm]];
            // derivative stencil of slice mm (at most 3 nonzeros)
            std::vector<std::pair<std::size_t, double>> stencil;
            for (std::size_t l = 0; l < S; ++l)
                if (W[mm][l] != 0.0) stencil.emplace_back(l, W[mm][l]);
            for (std::size_t jj = 0; jj < yids.size(); ++jj) {
                double weight = ywt[jj];
                for (int xi : xids) {
                    int i0 = dim == 1 ? xi : xi / g.n;
                    int i1 = dim == 1 ? 0 : xi % g.n;
                    entries.clear();
                    if (fit_plane) {
                        entries.emplace_back(0, g.signed_coord(i0));
                        if (dim == 2) entries.emplace_back(1, g.signed_coord(i1));
                    }
                    entries.emplace_back(nplane + mm, 1.0);
                    std::size_t dmm_pos = entries.size() - 1;
                    for (auto [l, w] : stencil) {
                        double v = prof[jj] * w;
                        if (l == mm)
                            entries[dmm_pos].second += v;
                        else
                            entries.emplace_back(nplane + l, v);
                    }
                    double uv = f.values[f.slice_size() * yids[jj] + g.index(i0, i1)];
                    for (auto [r, rv] : entries) {
                        rhs[r] += weight * rv * uv;
                        for (auto [c, cv] : entries)
                            if (c >= r) N(r, c) += weight * rv * cv;
                    }
                }
            }
        }
        for (std::size_t r = 0; r < nunk; ++r)
            for (std::size_t c = 0; c < r; ++c) N(r, c) = N(c, r);
        std::vector<double> theta = solve_dense(std::move(N), rhs);

        // sup deviation of the fitted ansatz
        double dev = 0.0;
        for (std::size_t mm = 0; mm < S; ++mm) {
            const ExtendedField& f = u.fields[slice_ids[mm]];
            double dprime = 0.0;
            for (std::size_t l = 0; l < S; ++l) dprime += W[mm][l] * theta[nplane + l];
            for (std::size_t jj = 0; jj < yids.size(); ++jj) {
                for (int xi : xids) {
                    int i0 = dim == 1 ? xi : xi / g.n;
                    int i1 = dim == 1 ? 0 : xi % g.n;
                    double fitv = theta[nplane + mm] + prof[jj] * dprime;
                    if (fit_plane) {
                        fitv += theta[0] * g.signed_coord(i0);
                        if (dim == 2) fitv += theta[1] * g.signed_coord(i1);
                    }
                    double uv = f.values[f.slice_size() * yids[jj] + g.index(i0, i1)];
                    dev = std::max(dev, std::fabs(uv - fitv));
                }
            }
        }

        rep.scales.push_back(radius);
        rep.samples.push_back(count);
        rep.deviation.push_back(dev);
        std::array<double, 2> A{0.0, 0.0};
        if (fit_plane) {
            A[0] = theta[0];
            if (dim == 2) A[1] = theta[1];
        }
        rep.slope_a.push_back(A);
        std::vector<double> D(S), Dp(S);
        for (std::size_t mm = 0; mm < S; ++mm) {
            D[mm] = theta[nplane + mm];
            double dp = 0.0;
            for (std::size_t l = 0; l < S; ++l) dp += W[mm][l] * theta[nplane + l];
            Dp[mm] = dp;
        }
        rep.level_d.push_back(std::move(D));
        rep.level_dprime.push_back(std::move(Dp));
    }

    // decay slope over scales with genuinely positive deviation (round-off
    // deviations of exact ansatz members sit below this floor)
    std::vector<double> fs, fv;
    double floor_val = 1e-10 * std::max(1.0, usup);
    for (std::size_t k = 0; k < rep.scales.size(); ++k)
        if (rep.deviation[k] > floor_val) {
            fs.push_back(rep.scales[k]);
            fv.push_back(rep.deviation[k]);
        }
    if (fs.size() >= 3) {
        FitResult fit = fit_exponent(fs, fv);
        rep.slope = fit.slope;
        rep.r2 = fit.r2;
        rep.has_slope = true;
    }
    return rep;
}

} // namespace fdlab
