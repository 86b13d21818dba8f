#pragma once

#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

/// Top boundary treatment for the truncated extension strip.
/// mode_decay closes each Fourier mode with the exact decay ratio of the
/// half-line problem (Bessel-type), so the strip height does not have to
/// swallow the slowest mode; zero is plain Dirichlet and needs
/// Y >= 10 / kappa_min to keep the truncation error down.
enum class TopBoundary { zero, mode_decay };

struct ExtensionSolution {
    ExtendedField field;
    FractionalParams params;
    ScalarField dtn;    // raw boundary flux (1-a)(u(.,y1) - f)/y1^{1-a} = lim y^a du/dy
    double residual;    // sup-norm of the discrete interior equation on the solution
    double calibration; // c with  c * dtn ~ (-Laplace)^s f
};

ExtensionSolution solve_extension(const ScalarField& f, const FractionalParams& p,
                                  const GradedYGrid& ygrid,
                                  TopBoundary top = TopBoundary::mode_decay);

/// The raw boundary-flux quotient of any extended field.  Exact on the
/// profile y^{1-a}/(1-a), which is what makes it the consistent
/// discretization of lim y^a du/dy.
ScalarField dtn_quotient(const ExtendedField& u, double a);

struct OracleOptions {
    int initial_intervals = 256;
    int max_doublings = 14;
    double rel_tol = 1e-8;
};

/// Reference Dirichlet-to-Neumann multiplier of the two-point problem
///   (y^a phi')' = kappa^2 y^a phi,  phi(0) = 1,  phi(Y) = 0,
/// returning -lim y^a phi'(0).  Solved in the stretched variable
/// z = y^{1-a}/(1-a) on a uniform grid (a discretization deliberately
/// different from the production solver) and refined until two successive
/// resolutions agree to rel_tol.
double mode_dtn_oracle(double kappa, const FractionalParams& p, double height,
                       const OracleOptions& opt = {});

/// Integer-mode wrapper; requires k != 0 and |k| * height >= 10.
double mode_ode_oracle(int k, const FractionalParams& p, double height,
                       const OracleOptions& opt = {});

/// Published calibration constant for (s, L): maps the raw DtN onto the
/// spectral operator, measured once against the oracle at the first mode.
double dtn_calibration(const FractionalParams& p, const TorusGrid& grid);

/// Extension by convolution with the periodized Poisson kernel
/// y^{1-a} / (|z|^2 + y^2)^{(n+1-a)/2}, normalized to unit discrete mass
/// (so the extension of 1 is exactly 1).  Independent of the banded solver.
ScalarField poisson_extend(const ScalarField& f, const FractionalParams& p, double y);

struct ExpansionFit {
    ScalarField g;                     // (u(.,y1) - f) / y1^{1-a}
    std::vector<double> band_y;        // top edge of each dyadic band
    std::vector<double> band_residual; // sup |u - f - y^{1-a} g| per band
    double slope = 0.0;
    bool has_slope = false;
};

/// Per-band residuals of the boundary expansion u = f + y^{1-a} g + O(y^2)
/// over dyadic y-bands below Y/4.  Requires at least 6 levels there.
ExpansionFit expansion_fit(const ExtensionSolution& sol);

struct CorollaryReport {
    double coefficient_d;            // D = g(x0)
    std::vector<double> radii;       // shrinking half-ball radii
    std::vector<double> empirical_c; // sup ratio per radius
    double smallest_c;               // value at the smallest radius
};

/// Smallest empirical constant in
///   |u - f(x0) - grad f(x0).(x-x0) - D y^{1-a}| <= C (|x-x0|^2 + y^2 + |x-x0| y^{1-a})
/// over a shrinking family of half-balls centered at (x0, 0).
CorollaryReport check_corollary_expansion(const ExtensionSolution& sol, int x0_index);

} // namespace fdlab
