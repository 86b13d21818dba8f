#include "fdlab/bfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdlab/errors.hpp"
#include "fdlab/holder.hpp"

namespace fdlab {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
const double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};

} // namespace

BfunEvaluator::BfunEvaluator(const FractionalParams& p, int panels)
    : a_(p.a()), panels_(panels), g_cut_(16.0) {
    if (p.dim != 1)
        throw std::invalid_argument("BfunEvaluator: disk quadrature implemented for dim 1 only");
    if (!(a_ > 0.0))
        throw std::invalid_argument("BfunEvaluator: needs a > 0 (s < 1/2); the a = 0 "
                                    "fundamental solution is logarithmic");
    if (panels < 1) throw std::invalid_argument("BfunEvaluator: panels must be positive");

    // precompute composite Gauss-Legendre rule for G on [0, g_cut_]
    panel_nodes_.reserve(8 * panels_);
    panel_weights_.reserve(8 * panels_);
    double w = g_cut_ / panels_;
    for (int pnl = 0; pnl < panels_; ++pnl) {
        double lo = pnl * w;
        for (int q = 0; q < 8; ++q) {
            panel_nodes_.push_back(lo + 0.5 * w * (1.0 + kGlNodes[q]));
            panel_weights_.push_back(0.5 * w * kGlWeights[q]);
        }
    }
    double g_total = 0.0;
    for (std::size_t i = 0; i < panel_nodes_.size(); ++i) {
        double t = panel_nodes_[i];
        g_total += panel_weights_[i] * std::pow(1.0 + t * t, -a_ / 2.0);
    }
    g_at_cut_ = g_total;

    // C_a = G(T0) - T0^{1-a}/(1-a) - sum_{m>=1} c_m T0^{1-a-2m}/(1-a-2m)
    double t0 = g_cut_;
    double c1 = -a_ / 2.0;
    double c2 = a_ * (a_ + 2.0) / 8.0;
    double c3 = -a_ * (a_ + 2.0) * (a_ + 4.0) / 48.0;
    c_asym_ = g_at_cut_ - std::pow(t0, 1.0 - a_) / (1.0 - a_) -
              c1 * std::pow(t0, -1.0 - a_) / (-1.0 - a_) -
              c2 * std::pow(t0, -3.0 - a_) / (-3.0 - a_) -
              c3 * std::pow(t0, -5.0 - a_) / (-5.0 - a_);
    kappa_ = -2.0 * (1.0 - a_) * c_asym_; // c_asym_ < 0, so kappa_ > 0
}

double BfunEvaluator::g_integral(double t) const {
    if (t < 0.0) return -g_integral(-t);
    if (t <= g_cut_) {
        // same composite rule truncated at t, last panel rescaled
        double w = g_cut_ / panels_;
        int full = static_cast<int>(std::floor(t / w));
        double acc = 0.0;
        for (int pnl = 0; pnl < full; ++pnl)
            for (int q = 0; q < 8; ++q) {
                std::size_t i = 8 * pnl + q;
                double tt = panel_nodes_[i];
                acc += panel_weights_[i] * std::pow(1.0 + tt * tt, -a_ / 2.0);
            }
        double lo = full * w;
        double width = t - lo;
        if (width > 0.0)
            for (int q = 0; q < 8; ++q) {
                double tt = lo + 0.5 * width * (1.0 + kGlNodes[q]);
                acc += 0.5 * width * kGlWeights[q] * std::pow(1.0 + tt * tt, -a_ / 2.0);
            }
        return acc;
    }
    // asymptotic branch: G(T) = T^{1-a}/(1-a) + C_a + sum c_m T^{1-a-2m}/(1-a-2m)
    double c1 = -a_ / 2.0;
    double c2 = a_ * (a_ + 2.0) / 8.0;
    double c3 = -a_ * (a_ + 2.0) * (a_ + 4.0) / 48.0;
    return std::pow(t, 1.0 - a_) / (1.0 - a_) + c_asym_ +
           c1 * std::pow(t, -1.0 - a_) / (-1.0 - a_) + c2 * std::pow(t, -3.0 - a_) / (-3.0 - a_) +
           c3 * std::pow(t, -5.0 - a_) / (-5.0 - a_);
}

double BfunEvaluator::raw_value(double x, double y) const {
    if (y <= 0.0) return raw_trace(x);
    // int_{-1}^{1} ((z-c)^2 + w^2)^{-a/2} dz = w^{1-a} [G((1-c)/w) + G((1+c)/w)]
    auto flat_integral = [&](double c, double w) {
        return std::pow(w, 1.0 - a_) * (g_integral((1.0 - c) / w) + g_integral((1.0 + c) / w));
    };
    double r2 = x * x + y * y;
    double direct = flat_integral(x, y);
    double reflected = std::pow(r2, -a_ / 2.0) * flat_integral(x / r2, y / r2);
    return direct - reflected;
}

double BfunEvaluator::raw_trace(double x) const {
    double ax = std::fabs(x);
    if (ax >= 1.0) return 0.0;
    double direct = (std::pow(1.0 - ax, 1.0 - a_) + std::pow(1.0 + ax, 1.0 - a_)) / (1.0 - a_);
    if (ax < 1e-14) return direct - 2.0; // reflected integrand tends to 1 pointwise
    double xs = 1.0 / ax;
    double reflected = std::pow(ax, -a_) *
                       (std::pow(1.0 + xs, 1.0 - a_) - std::pow(xs - 1.0, 1.0 - a_)) /
                       (1.0 - a_);
    return direct - reflected;
}

double BfunEvaluator::value(double x, double y) const { return raw_value(x, y) / kappa_; }
double BfunEvaluator::trace(double x) const { return raw_trace(x) / kappa_; }

BfunResult compute_bfun(const FractionalParams& p, const TorusGrid& xgrid,
                        const GradedYGrid& ygrid, int panels) {
    if (p.dim != 1)
        throw std::invalid_argument("compute_bfun: dim 1 only (no disk quadrature for dim 2)");
    if (std::fabs(xgrid.length - 2.0) > 1e-12)
        throw std::invalid_argument("compute_bfun: xgrid period must be 2 to cover [-1, 1]");

    BfunEvaluator eval(p, panels);
    BfunEvaluator finer(p, 2 * panels);

    BfunResult out;
    out.field = ExtendedField(xgrid, ygrid);
    out.neumann_constant = eval.neumann_constant();

    double quad_err = 0.0;
    for (int j = 0; j <= ygrid.m; ++j) {
        double y = ygrid.nodes[j];
        for (int i = 0; i < xgrid.n; ++i) {
            double x = xgrid.signed_coord(i);
            if (x * x + y * y >= 1.0) continue;
            double v = j == 0 ? eval.trace(x) : eval.value(x, y);
            out.field.at(j, i) = v;
            if ((i & 7) == 0) { // probe every 8th node for the error estimate
                double vf = j == 0 ? finer.trace(x) : finer.value(x, y);
                quad_err = std::max(quad_err, std::fabs(vf - v));
            }
        }
    }
    out.quad_error = quad_err;
    if (!(quad_err < 1e-3))
        throw ResolutionError("compute_bfun: quadrature error estimate " +
                              std::to_string(quad_err) + " did not converge");
    return out;
}

BfunReport check_bfun_properties(const BfunResult& b, const FractionalParams& p) {
    const ExtendedField& f = b.field;
    const TorusGrid& g = f.xgrid;
    const double a = p.a();
    BfunReport rep;

    // property 1 constant and the boundary-decay fit
    double c1 = 1e300;
    std::vector<double> dist, val;
    for (int i = 0; i < g.n; ++i) {
        double x = g.signed_coord(i);
        double ax = std::fabs(x);
        if (ax >= 1.0) continue;
        double bv = f.at(0, i);
        double margin = 1.0 - ax;
        if (margin > 1e-12) c1 = std::min(c1, bv / std::pow(margin, p.s));
        if (margin >= 2.0 * g.spacing() && margin <= 0.25 && bv > 0.0) {
            dist.push_back(margin);
            val.push_back(bv);
        }
    }
    rep.c1 = c1 == 1e300 ? 0.0 : c1;
    if (dist.size() >= 3) rep.decay_slope = fit_exponent(dist, val).slope;

    // property 2 constant, and the location of the maximum
    int i_origin = 0; // signed coordinate 0 is node 0
    double b00 = f.at(0, i_origin);
    double c2 = 1e300;
    double best = -1e300;
    int best_j = -1, best_i = -1;
    for (int j = 0; j <= f.ygrid.m; ++j) {
        double y = f.ygrid.nodes[j];
        for (int i = 0; i < g.n; ++i) {
            double x = g.signed_coord(i);
            if (x * x + y * y >= 1.0) continue;
            double bv = f.at(j, i);
            if (bv > best) {
                best = bv;
                best_j = j;
                best_i = i;
            }
            double denom = x * x + std::pow(y, 1.0 - a);
            if (denom > 1e-12) c2 = std::min(c2, (b00 - bv) / denom);
        }
    }
    rep.c2 = c2 == 1e300 ? 0.0 : c2;
    rep.max_at_origin = best_j == 0 && best_i == i_origin;

    // Neumann datum on the inner half of the flat ball
    double y1 = f.ygrid.nodes[1];
    double dev = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.signed_coord(i);
        if (std::fabs(x) > 0.5) continue;
        double datum = -(1.0 - a) * (f.at(1, i) - f.at(0, i)) / std::pow(y1, 1.0 - a);
        dev = std::max(dev, std::fabs(datum - 1.0));
    }
    rep.neumann_dev = dev;

    rep.pass = rep.c1 > 0.0 && rep.c2 > 0.0;
    return rep;
}

} // namespace fdlab
