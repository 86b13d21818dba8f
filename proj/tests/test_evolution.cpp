#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fdlab/errors.hpp"
#include "fdlab/evolution.hpp"
#include "fdlab/flow.hpp"
#include "fdlab/holder.hpp"
#include "fdlab/rng.hpp"
#include "fdlab/spectral.hpp"
#include "fdlab/synth.hpp"

using namespace fdlab;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

EvolutionState make_state(const ScalarField& u, const FractionalParams& p, double eps = 0.0) {
    EvolutionState st;
    st.time = -1.0;
    st.u = u;
    st.params = p;
    st.eps = eps;
    return st;
}
} // namespace

TEST_CASE("drift-free zero-forcing step equals the exact propagator") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField u0 = synth_smooth(g, 10, 1.0, 3);
    EvolutionState st = make_state(u0, p);
    EvolutionState next = step(st, DriftField::zero(1), ScalarField(g), 0.01);
    CHECK(sup_distance(next.u, heat_propagate(u0, 0.01, p)) <= 1e-14);
    CHECK(next.time == doctest::Approx(-0.99));
}

TEST_CASE("CFL violation is rejected with the admissible step attached") {
    TorusGrid g = TorusGrid::make(1, 64, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    EvolutionState st = make_state(synth_smooth(g, 4, 1.0, 1), p);
    DriftField b = DriftField::constant(1, {2.0, 0.0});
    double admissible = st.cfl_max * g.spacing() / 2.0;
    try {
        step(st, b, ScalarField(g), 10.0 * admissible);
        FAIL("expected CflError");
    } catch (const CflError& e) {
        CHECK(e.admissible_dt == doctest::Approx(admissible).epsilon(1e-12));
    }
    CHECK_NOTHROW(step(st, b, ScalarField(g), 0.99 * admissible));
}

TEST_CASE("pure transport by constant drift translates the profile") {
    TorusGrid g = TorusGrid::make(1, 256, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField u0 = synth_smooth(g, 4, 1.0, 7);
    const double c = 0.5;
    DriftField b = DriftField::constant(1, {c, 0.0});

    StepOptions transport_only;
    transport_only.disable_diffusion = true;

    EvolutionState st = make_state(u0, p);
    double dt = 0.5 * st.cfl_max * g.spacing() / c;
    int steps = 200;
    for (int i = 0; i < steps; ++i) st = step(st, b, ScalarField(g), dt, transport_only);

    ScalarField exact = spectral_shift(u0, -c * dt * steps);
    double err = sup_distance(st.u, exact);
    CHECK(err <= 0.1 * u0.oscillation()); // within the upwind dissipation bound
    CHECK(err < sup_distance(st.u, u0)); // and the profile really moved
}

TEST_CASE("maximum principle of the full step over seeded smooth data") {
    TorusGrid g = TorusGrid::make(1, 256, kTwoPi);
    SplitMix64 seeds(41);
    for (double s : {0.25, 0.5}) {
        FractionalParams p = FractionalParams::make(s, s / 2, 1);
        for (int trial = 0; trial < 5; ++trial) {
            ScalarField u0 = synth_smooth(g, 5, 1.0, seeds.next());
            HolderSynthConfig bc;
            bc.beta = 0.5;
            bc.lambda = 2;
            bc.terms = 5;
            bc.seed = seeds.next();
            DriftField b = DriftField::synthesize(g, bc);
            b = b.scaled(0.5 / b.sup_norm());

            EvolutionState st = make_state(u0, p);
            double dt = 0.9 * st.cfl_max * g.spacing() / 0.5;
            double slack = 1e-10 * u0.oscillation();
            for (int i = 0; i < 50; ++i) {
                EvolutionState next = step(st, b, ScalarField(g), dt);
                CHECK(next.u.max() <= st.u.max() + slack);
                CHECK(next.u.min() >= st.u.min() - slack);
                st = next;
            }
        }
    }
}

TEST_CASE("solve_ivp: eigenmode decay and manufactured equilibrium") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);

    ScalarField mode(g);
    for (int i = 0; i < g.n; ++i) mode.values[i] = std::cos(3.0 * g.coord(i));
    IvpOptions opt;
    opt.dt_max = 1e-2;
    IvpResult run = solve_ivp(mode, DriftField::zero(1), ForcingField::zero(), 1.0, p, 0.0, opt);
    double decay = std::exp(-std::pow(3.0, 2.0 * p.s));
    CHECK(sup_distance(run.final_state.u, decay * mode) <= 1e-11);

    // f = (-Lap)^s phi keeps phi steady to 1e-8
    ScalarField phi = synth_smooth(g, 6, 1.0, 11);
    ForcingField f = ForcingField::steady(frac_laplacian(phi, p));
    IvpResult steady = solve_ivp(phi, DriftField::zero(1), f, 1.0, p, 0.0, opt);
    CHECK(sup_distance(steady.final_state.u, phi) <= 1e-8);
}

TEST_CASE("solve_ivp: forced maximum principle bound over seeded runs") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.3, 0.2, 1);
    SplitMix64 seeds(77);
    for (int trial = 0; trial < 3; ++trial) {
        ScalarField u0 = synth_smooth(g, 5, 1.0, seeds.next());
        ScalarField ff = synth_smooth(g, 3, 0.3, seeds.next());
        HolderSynthConfig bc;
        bc.beta = 0.6;
        bc.lambda = 2;
        bc.terms = 5;
        bc.seed = seeds.next();
        DriftField b = DriftField::synthesize(g, bc).scaled(0.25);
        IvpOptions opt;
        opt.dt_max = 5e-3;
        IvpResult run =
            solve_ivp(u0, b, ForcingField::steady(ff), 1.0, p, 0.0, opt);
        double bound = u0.sup_norm() + 1.0 * ff.sup_norm() + 1e-9;
        for (double s : run.series_sup) CHECK(s <= bound);
    }
}

TEST_CASE("solve_ivp: splitting is exact for pure diffusion under any partition") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.1, 1);
    ScalarField u0 = synth_smooth(g, 8, 1.0, 5);
    IvpOptions opt;
    opt.dt_max = 0.013; // deliberately doesn't divide T
    IvpResult run = solve_ivp(u0, DriftField::zero(1), ForcingField::zero(), 1.0, p, 0.0, opt);
    CHECK(sup_distance(run.final_state.u, heat_propagate(u0, 1.0, p)) <= 1e-12);
}

TEST_CASE("solve_ivp blow-up guard") {
    TorusGrid g = TorusGrid::make(1, 64, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField u0 = synth_smooth(g, 3, 1.0, 2);
    ForcingField f = ForcingField::steady(ScalarField(g, 1.0));
    IvpOptions opt;
    opt.blowup_factor = 0.4; // below what the forcing drives, must trip
    CHECK_THROWS_AS(solve_ivp(u0, DriftField::zero(1), f, 1.0, p, 0.0, opt), InstabilityError);
}

TEST_CASE("galilean frame check at fixed dt over refinement") {
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    const double c = 0.8, T = 0.25;
    std::vector<double> hs, errs;
    for (int n : {64, 128, 256}) {
        TorusGrid g = TorusGrid::make(1, n, kTwoPi);
        ScalarField u0 = synth_smooth(g, 3, 1.0, 9);
        IvpOptions opt;
        opt.t0 = 0.0;
        opt.dt_max = 0.2 * g.spacing() * g.spacing(); // dt ~ h^2 isolates the O(h^2) bias
        IvpResult drift =
            solve_ivp(u0, DriftField::constant(1, {c, 0.0}), ForcingField::zero(), T, p, 0.0, opt);
        IvpResult still =
            solve_ivp(u0, DriftField::zero(1), ForcingField::zero(), T, p, 0.0, opt);
        ScalarField frame = spectral_shift(still.final_state.u, -c * T);
        hs.push_back(g.spacing());
        errs.push_back(sup_distance(drift.final_state.u, frame));
    }
    FitResult fit = fit_exponent(hs, errs);
    CHECK(fit.slope >= 1.7); // measured O(h^2)
}

TEST_CASE("flow ode: equilibria and closed forms") {
    DriftField zero = DriftField::zero(1);
    FlowPath p0 = flow_ode(zero, nullptr, 64);
    for (auto v : p0.positions) CHECK(v[0] == 0.0);
    for (double s : p0.source_integral) CHECK(s == 0.0);
    CHECK(p0.times.front() == -1.0);
    CHECK(p0.times.back() == 0.0);

    DriftField c = DriftField::constant(1, {0.7, 0.0});
    FlowPath pc = flow_ode(c, nullptr, 64);
    for (std::size_t i = 0; i < pc.times.size(); ++i)
        CHECK(pc.positions[i][0] == doctest::Approx(0.7 * pc.times[i]).epsilon(1e-13));

    // b(t,x) = x: the origin is an equilibrium of the backward flow
    DriftField linear = DriftField::analytic(
        1, [](double, double x, double) { return std::array<double, 2>{x, 0.0}; }, 10.0);
    FlowPath pl = flow_ode(linear, nullptr, 64);
    for (auto v : pl.positions) CHECK(std::fabs(v[0]) <= 1e-15);
}

TEST_CASE("flow ode: fourth-order convergence on b = sin(t)") {
    DriftField b = DriftField::analytic(
        1, [](double t, double, double) { return std::array<double, 2>{std::sin(t), 0.0}; }, 1.0);
    double exact = 1.0 - std::cos(-1.0); // V(-1) = int_0^{-1} sin = cos(0)-cos(-1) ... sign below
    // V(t) = int_0^t sin(u) du = 1 - cos(t); V(-1) = 1 - cos(1) with cos even
    exact = 1.0 - std::cos(1.0);
    std::vector<double> ns, errs;
    for (int steps : {8, 16, 32, 64}) {
        FlowPath path = flow_ode(b, nullptr, steps);
        errs.push_back(std::fabs(path.positions.front()[0] - exact));
        ns.push_back(1.0 / steps);
    }
    FitResult fit = fit_exponent(ns, errs);
    CHECK(fit.slope >= 3.8);
}

TEST_CASE("flow ode: source integral rides the same clock") {
    DriftField zero = DriftField::zero(1);
    ForcingField f = ForcingField::analytic(
        [](double t, double, double) { return std::cos(3.0 * t); }, 1.0);
    FlowPath path = flow_ode(zero, &f, 256);
    // S(t) = int_t^0 cos(3s) ds = -sin(3t)/3
    for (std::size_t i = 0; i < path.times.size(); i += 16) {
        double t = path.times[i];
        CHECK(path.source_integral[i] == doctest::Approx(-std::sin(3.0 * t) / 3.0).epsilon(1e-8));
    }
    // |V'| <= sup|b| invariant holds trivially here; check it on a bounded drift
    DriftField bb = DriftField::analytic(
        1, [](double t, double x, double) { return std::array<double, 2>{std::sin(t + x), 0.0}; },
        1.0);
    FlowPath pb = flow_ode(bb, nullptr, 128);
    for (std::size_t i = 1; i < pb.times.size(); ++i) {
        double rate = std::fabs(pb.positions[i][0] - pb.positions[i - 1][0]) /
                      (pb.times[i] - pb.times[i - 1]);
        CHECK(rate <= 1.0 + 1e-9);
    }
}

TEST_CASE("perturbation experiment: zero delta, monotone sweep, linear rate") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField u0 = synth_smooth(g, 4, 1.0, 19);

    HolderSynthConfig bc;
    bc.beta = 0.5;
    bc.lambda = 2;
    bc.terms = 5;
    bc.seed = 23;
    DriftField b = DriftField::synthesize(g, bc);
    ForcingField f = ForcingField::steady(synth_smooth(g, 3, 1.0, 29));

    IvpOptions opt;
    opt.dt_max = 5e-3;
    CHECK(perturbation_experiment(u0, b, f, 0.0, p, 0.0, opt) == 0.0);

    std::vector<double> deltas = {0.1, 0.05, 0.025};
    std::vector<double> diffs;
    for (double d : deltas) diffs.push_back(perturbation_experiment(u0, b, f, d, p, 0.0, opt));
    CHECK(diffs[1] <= diffs[0]);
    CHECK(diffs[2] <= diffs[1]);

    // smooth drift: the deviation scales linearly in delta
    DriftField smooth_b = DriftField::steady({synth_smooth(g, 3, 1.0, 31)}, 1.0);
    std::vector<double> sd, sdiff;
    for (double d : {0.2, 0.1, 0.05, 0.025}) {
        sd.push_back(d);
        sdiff.push_back(perturbation_experiment(u0, smooth_b, f, d, p, 0.0, opt));
    }
    FitResult fit = fit_exponent(sd, sdiff);
    CHECK(fit.slope >= 0.8);
    CHECK(fit.slope <= 1.2);

    CHECK_THROWS_AS(perturbation_experiment(u0, b, f, 0.01, p, 0.02, opt),
                    std::invalid_argument); // eps > delta
}

TEST_CASE("vanishing-viscosity sweep converges to the unregularized run") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField u0 = synth_smooth(g, 4, 1.0, 55);
    HolderSynthConfig bc;
    bc.beta = 0.5;
    bc.lambda = 2;
    bc.terms = 5;
    bc.seed = 56;
    DriftField b = DriftField::synthesize(g, bc).scaled(0.1);
    IvpOptions opt;
    opt.dt_max = 5e-3;
    IvpResult clean = solve_ivp(u0, b, ForcingField::zero(), 1.0, p, 0.0, opt);
    double prev = 1e300;
    for (double eps : {0.05, 0.01, 0.002}) {
        IvpResult reg = solve_ivp(u0, b, ForcingField::zero(), 1.0, p, eps, opt);
        double diff = sup_distance(reg.final_state.u, clean.final_state.u);
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev <= 0.05); // eps = 0.002 sits close to the limit
}

TEST_CASE("dim 2 smoke: step conserves the maximum principle and runs") {
    TorusGrid g = TorusGrid::make(2, 32, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 2);
    ScalarField u0 = synth_smooth(g, 3, 1.0, 12);
    HolderSynthConfig bc;
    bc.beta = 0.5;
    bc.lambda = 2;
    bc.terms = 3;
    bc.seed = 9;
    DriftField b = DriftField::synthesize(g, bc).scaled(0.2);
    IvpOptions opt;
    opt.t0 = 0.0;
    opt.dt_max = 5e-3;
    IvpResult run = solve_ivp(u0, b, ForcingField::zero(), 0.1, p, 0.0, opt);
    CHECK(run.final_state.u.sup_norm() <= u0.sup_norm() + 1e-9);
}
