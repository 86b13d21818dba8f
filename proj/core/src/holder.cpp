#include "fdlab/holder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fdlab/spectral.hpp"

namespace fdlab {

namespace {

struct Offset {
    int d0;
    int d1;
    double dist;
};

// Deterministic offset set for one scale band.
std::vector<Offset> band_offsets(const TorusGrid& g, double scale) {
    if (!(scale > 0.0) || scale > g.length / 2)
        throw std::invalid_argument("holder band: scale must lie in (0, L/2]");
    const double h = g.spacing();
    std::vector<Offset> offs;
    if (g.dim == 1) {
        int lo = static_cast<int>(std::ceil(scale / 2 / h));
        int hi = static_cast<int>(std::floor(scale / h));
        lo = std::max(lo, 1);
        hi = std::min(hi, g.n / 2);
        std::vector<int> ds;
        for (int d = lo; d <= hi; ++d) ds.push_back(d);
        if (ds.size() > 64) { // thin evenly, keep ends
            std::vector<int> kept;
            for (int i = 0; i < 64; ++i)
                kept.push_back(ds[(i * (ds.size() - 1)) / 63]);
            kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
            ds = kept;
        }
        for (int d : ds) offs.push_back({d, 0, d * h});
    } else {
        const int radii = 8, angles = 16;
        for (int ir = 0; ir < radii; ++ir) {
            double r = scale / 2 + (scale / 2) * (ir + 0.5) / radii;
            for (int ia = 0; ia < angles; ++ia) {
                double th = std::numbers::pi * ia / angles; // half turn: pairs are unordered
                int d0 = static_cast<int>(std::lround(r * std::cos(th) / h));
                int d1 = static_cast<int>(std::lround(r * std::sin(th) / h));
                if (std::abs(d0) > g.n / 2 || std::abs(d1) > g.n / 2) continue;
                double dist = h * std::sqrt(double(d0) * d0 + double(d1) * d1);
                if (dist < scale / 2 || dist > scale || dist == 0.0) continue;
                offs.push_back({d0, d1, dist});
            }
        }
        std::sort(offs.begin(), offs.end(), [](const Offset& a, const Offset& b) {
            return a.d0 != b.d0 ? a.d0 < b.d0 : a.d1 < b.d1;
        });
        offs.erase(std::unique(offs.begin(), offs.end(),
                               [](const Offset& a, const Offset& b) {
                                   return a.d0 == b.d0 && a.d1 == b.d1;
                               }),
                   offs.end());
    }
    if (offs.empty())
        throw std::invalid_argument("holder band: no representable pair at this scale");
    return offs;
}

double band_sup_quotient(const ScalarField& f, double scale, double exponent) {
    const TorusGrid& g = f.grid;
    auto offs = band_offsets(g, scale);
    double sup = 0.0;
    if (g.dim == 1) {
        for (const Offset& o : offs) {
            double w = std::pow(o.dist, -exponent);
            for (int i = 0; i < g.n; ++i) {
                double d = std::fabs(f.values[g.wrap(i + o.d0)] - f.values[i]);
                sup = std::max(sup, d * w);
            }
        }
    } else {
        for (const Offset& o : offs) {
            double w = std::pow(o.dist, -exponent);
            for (int i0 = 0; i0 < g.n; ++i0)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    double d = std::fabs(f.at(i0 + o.d0, i1 + o.d1) - f.at(i0, i1));
                    sup = std::max(sup, d * w);
                }
        }
    }
    return sup;
}

} // namespace

double holder_seminorm(const ScalarField& field, double exponent, double scale) {
    if (!(exponent > 0.0) || exponent > 2.0)
        throw std::invalid_argument("holder_seminorm: exponent must lie in (0, 2]");
    if (exponent <= 1.0) return band_sup_quotient(field, scale, exponent);

    // C^{1,alpha'} branch: measure the gradient components.
    double ap = exponent - 1.0;
    double sup = 0.0;
    for (int axis = 0; axis < field.grid.dim; ++axis)
        sup = std::max(sup, band_sup_quotient(spectral_gradient(field, axis), scale, ap));
    return sup;
}

double band_oscillation(const ScalarField& field, double scale) {
    return band_sup_quotient(field, scale, 0.0);
}

FitResult fit_exponent(const std::vector<double>& scales, const std::vector<double>& values) {
    if (scales.size() != values.size())
        throw std::invalid_argument("fit_exponent: length mismatch");
    if (scales.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 pairs");

    const std::size_t n = scales.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(scales[i] > 0.0) || !(values[i] > 0.0) || !std::isfinite(scales[i]) ||
            !std::isfinite(values[i]))
            throw std::invalid_argument("fit_exponent: data must be positive and finite");
        lx[i] = std::log(scales[i]);
        ly[i] = std::log(values[i]);
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_exponent: scales are all equal");

    FitResult r;
    r.slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = ly[i] - my - r.slope * (lx[i] - mx);
        ss_res += e * e;
    }
    r.r2 = (syy <= 1e-30) ? 1.0 : 1.0 - ss_res / syy;
    r.stderr_slope = (n > 2) ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    return r;
}

} // namespace fdlab
