#pragma once

#include "fdlab/field.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

/// The auxiliary torsion-type function of the half-disk:
///   B = 0 on the spherical cap, -lim y^a dB/dy = 1 on the flat part,
///   div(y^a grad B) = 0 inside.
/// Built from the fundamental-solution formula
///   B(X) = integral over the flat ball of Phi(z-X) - |X|^{1-n-a} Phi(z - X/|X|^2),
///   Phi(X) = |X|^{-(n-1+a)},
/// reduced exactly in z to the scaled antiderivative G(T) = int_0^T (1+t^2)^{-a/2} dt
/// and normalized so the flat-part Neumann datum is exactly 1 (the raw
/// formula produces the constant datum kappa_a = -2(1-a) C_a instead).
/// dim 1 only.
class BfunEvaluator {
public:
    BfunEvaluator(const FractionalParams& p, int panels = 64);

    double value(double x, double y) const; // normalized B, interior points
    double trace(double x) const;           // exact y = 0 limit
    double neumann_constant() const { return kappa_; }
    int panels() const { return panels_; }

private:
    double g_integral(double t) const; // odd extension of G
    double raw_value(double x, double y) const;
    double raw_trace(double x) const;

    double a_;
    int panels_;
    double g_cut_;        // switch point to the asymptotic branch
    double g_at_cut_;     // G(g_cut_)
    double c_asym_;       // C_a, the constant in G(T) = T^{1-a}/(1-a) + C_a + ...
    double kappa_;        // raw Neumann datum, the normalization constant
    std::vector<double> panel_nodes_, panel_weights_; // Gauss-Legendre on [0, g_cut_]
};

struct BfunResult {
    ExtendedField field;     // normalized B on xgrid x ygrid, zero outside the half disk
    double quad_error;       // Richardson estimate between panel counts P and 2P
    double neumann_constant; // the kappa_a divided out
};

/// Samples the function on [-1,1] x [0, Y] (xgrid must have length 2 so
/// signed coordinates cover the flat ball).  Throws on dim 2 (no disk
/// quadrature implemented) and AccuracyError-style failures surface as
/// ResolutionError.
BfunResult compute_bfun(const FractionalParams& p, const TorusGrid& xgrid,
                        const GradedYGrid& ygrid, int panels = 64);

struct BfunReport {
    double c1 = 0.0;          // largest c with B(x,0) >= c (1-|x|)^s on samples
    double c2 = 0.0;          // largest c with B(0,0)-B >= c(|x|^2 + y^{1-a})
    double decay_slope = 0.0; // fitted exponent of B(x,0) against (1-|x|)
    double neumann_dev = 0.0; // sup |datum - 1| on the inner half of the ball
    bool max_at_origin = false;
    bool pass = false; // both constants positive
};

BfunReport check_bfun_properties(const BfunResult& b, const FractionalParams& p);

} // namespace fdlab
