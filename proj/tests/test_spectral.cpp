#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "fdlab/errors.hpp"
#include "fdlab/rng.hpp"
#include "fdlab/spectral.hpp"
#include "fdlab/synth.hpp"

#include "oracles.hpp"

using namespace fdlab;
namespace orc = fdlab::test_oracles;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField cosine_mode(const TorusGrid& g, int k) {
    ScalarField f(g);
    double w = kTwoPi * k / g.length;
    if (g.dim == 1)
        for (int i = 0; i < g.n; ++i) f.values[i] = std::cos(w * g.coord(i));
    else
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                f.values[g.index(i0, i1)] = std::cos(w * g.coord(i0));
    return f;
}
} // namespace

TEST_CASE("fractional laplacian on constants and eigenfunctions") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.3, 0.2, 1);

    CHECK(frac_laplacian(ScalarField(g, 5.0), p).sup_norm() <= 1e-13);

    for (int k : {1, 3, 9}) {
        ScalarField f = cosine_mode(g, k);
        ScalarField out = frac_laplacian(f, p);
        double mult = std::pow(static_cast<double>(k), 2.0 * p.s);
        CHECK(sup_distance(out, mult * f) <= 1e-11 * mult);
        CHECK(std::fabs(out.mean()) <= 1e-14 * mult);
    }
}

TEST_CASE("fractional laplacian dim 2 eigenfunction") {
    TorusGrid g = TorusGrid::make(2, 32, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.2, 2);
    ScalarField f(g);
    for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
            f.values[g.index(i0, i1)] = std::cos(2.0 * g.coord(i0) + 3.0 * g.coord(i1));
    double mult = std::pow(13.0, p.s); // |k|^2 = 4 + 9
    CHECK(sup_distance(frac_laplacian(f, p), mult * f) <= 1e-11 * mult);
}

TEST_CASE("fractional laplacian is positive semidefinite and linear") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.1, 1);
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField f = synth_smooth(g, 20, 1.0, rng.next());
        CHECK(inner_product(f, frac_laplacian(f, p)) >= -1e-12);
    }
    ScalarField a = synth_smooth(g, 10, 1.0, 1), b = synth_smooth(g, 10, 1.0, 2);
    ScalarField sum = frac_laplacian(a + b, p);
    ScalarField parts = frac_laplacian(a, p) + frac_laplacian(b, p);
    CHECK(sup_distance(sum, parts) <= 1e-12);
}

TEST_CASE("half laplacian against the principal-value quadrature oracle") {
    // narrow gaussian on a long torus, compared away from the tails
    const double L = 16.0 * std::numbers::pi;
    TorusGrid g = TorusGrid::make(1, 4096, L);
    FractionalParams p = FractionalParams::make(0.5, 0.5, 1);
    const double sigma = 0.5;
    auto gauss = [sigma](double x) { return std::exp(-x * x / (2.0 * sigma * sigma)); };

    ScalarField f(g);
    for (int i = 0; i < g.n; ++i) f.values[i] = gauss(g.signed_coord(i));
    ScalarField out = frac_laplacian(f, p);

    double peak = out.sup_norm();
    double worst = 0.0;
    for (int i = 0; i < g.n; i += 16) {
        double x = g.signed_coord(i);
        if (std::fabs(x) > 2.0) continue; // tails excluded
        double ref = orc::half_laplacian_pv(gauss, x, L / 2.0, 200000);
        worst = std::max(worst, std::fabs(out.values[i] - ref));
    }
    CHECK(worst <= 0.01 * peak);
}

TEST_CASE("heat propagator identity, eigenmode decay, semigroup law") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.1, 1);
    ScalarField f = synth_smooth(g, 12, 1.0, 5);

    CHECK(sup_distance(heat_propagate(f, 0.0, p), f) <= 1e-13);

    ScalarField mode = cosine_mode(g, 4);
    double decay = std::exp(-0.7 * std::pow(4.0, 2.0 * p.s));
    CHECK(sup_distance(heat_propagate(mode, 0.7, p), decay * mode) <= 1e-12);

    ScalarField two = heat_propagate(heat_propagate(f, 0.31, p), 0.47, p);
    ScalarField one = heat_propagate(f, 0.78, p);
    CHECK(sup_distance(two, one) <= 1e-12 * std::max(1.0, one.sup_norm()));

    CHECK(heat_propagate(f, 0.3, p).mean() == doctest::Approx(f.mean()).epsilon(1e-13));
    CHECK_THROWS_AS(heat_propagate(f, -0.1, p), std::invalid_argument);
}

TEST_CASE("heat propagator discrete maximum principle on random smooth data") {
    TorusGrid g = TorusGrid::make(1, 256, kTwoPi);
    SplitMix64 rng(23);
    for (double s : {0.25, 0.5}) {
        FractionalParams p = FractionalParams::make(s, s / 2, 1);
        for (int trial = 0; trial < 10; ++trial) {
            ScalarField f = synth_smooth(g, 30, 1.0, rng.next());
            ScalarField out = heat_propagate(f, 0.05, p);
            double slack = 1e-10 * f.oscillation();
            CHECK(out.max() <= f.max() + slack);
            CHECK(out.min() >= f.min() - slack);
        }
    }
}

TEST_CASE("multipliers commute: diffusion and fractional laplacian") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    FractionalParams p = FractionalParams::make(0.3, 0.1, 1);
    ScalarField f = synth_smooth(g, 20, 1.0, 8);
    ScalarField ab = frac_laplacian(heat_propagate(f, 0.2, p), p);
    ScalarField ba = heat_propagate(frac_laplacian(f, p), 0.2, p);
    CHECK(sup_distance(ab, ba) <= 1e-11);
}

TEST_CASE("heat profile: mass, cauchy closed form at s = 1/2, resolution guard") {
    FractionalParams p = FractionalParams::make(0.5, 0.5, 1);
    TorusGrid g = TorusGrid::make(1, 4096, 320.0);
    HeatProfile hp = heat_profile(p, g);

    CHECK(std::fabs(hp.mass - 1.0) <= 1e-6);

    // sharp: the torus profile IS the periodized Cauchy kernel
    double sharp = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.signed_coord(i);
        sharp = std::max(sharp,
                         std::fabs(hp.profile.values[i] - orc::cauchy_kernel_periodized(x, 320.0)));
    }
    CHECK(sharp <= 1e-10);

    // free-space comparison within 1% on |x| <= 10
    double worst_rel = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.signed_coord(i);
        if (std::fabs(x) > 10.0) continue;
        double ref = orc::cauchy_kernel(x);
        worst_rel = std::max(worst_rel, std::fabs(hp.profile.values[i] - ref) / ref);
    }
    CHECK(worst_rel <= 0.01);

    CHECK_THROWS_AS(heat_profile(FractionalParams::make(0.25, 0.2, 1),
                                 TorusGrid::make(1, 256, 320.0)),
                    ResolutionError);
}

TEST_CASE("heat profile tail exponents") {
    SUBCASE("dim 1, s = 0.5") {
        FractionalParams p = FractionalParams::make(0.5, 0.5, 1);
        TorusGrid g = TorusGrid::make(1, 2048, 160.0);
        HeatProfile hp = heat_profile(p, g);
        double slope = heat_profile_tail_slope(hp, 4.0, 32.0);
        CHECK(std::fabs(slope - (-2.0)) <= 0.15);
    }
    SUBCASE("dim 1, s = 0.25") {
        // the stable-law crossover decays like x^{-1/2}; the fit window has
        // to sit deep in the tail before the -(1+2s) exponent emerges
        FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
        TorusGrid g = TorusGrid::make(1, 4194304, 16384.0);
        HeatProfile hp = heat_profile(p, g);
        double slope = heat_profile_tail_slope(hp, 256.0, 2048.0);
        CHECK(std::fabs(slope - (-1.5)) <= 0.15);
    }
    SUBCASE("dim 2, s = 0.5") {
        FractionalParams p = FractionalParams::make(0.5, 0.5, 2);
        TorusGrid g = TorusGrid::make(2, 2048, 160.0);
        HeatProfile hp = heat_profile(p, g);
        double slope = heat_profile_tail_slope(hp, 6.0, 24.0);
        CHECK(std::fabs(slope - (-3.0)) <= 0.15);
    }
}

TEST_CASE("self-similarity of the kernel slices") {
    TorusGrid g = TorusGrid::make(1, 8192, 320.0);
    FractionalParams ph = FractionalParams::make(0.5, 0.5, 1);
    CHECK(selfsimilar_check(ph, 0.7, 0.7, g) == 0.0);
    CHECK(selfsimilar_check(ph, 0.5, 1.0, g) <= 1e-3);

    TorusGrid gq = TorusGrid::make(1, 32768, 32.0);
    FractionalParams pq = FractionalParams::make(0.25, 0.2, 1);
    CHECK(selfsimilar_check(pq, 0.5, 1.0, gq) <= 1e-2);

    CHECK_THROWS_AS(selfsimilar_check(ph, 1.0, 0.5, g), DomainError);
    CHECK_THROWS_AS(selfsimilar_check(pq, 0.5, 1.0, TorusGrid::make(1, 256, 32.0)),
                    ResolutionError);
}

TEST_CASE("spectral gradient and shift are exact on band-limited fields") {
    TorusGrid g = TorusGrid::make(1, 128, kTwoPi);
    ScalarField f = cosine_mode(g, 3);
    ScalarField df = spectral_gradient(f, 0);
    for (int i = 0; i < g.n; ++i)
        CHECK(df.values[i] == doctest::Approx(-3.0 * std::sin(3.0 * g.coord(i))).epsilon(1e-11));

    double shift = 0.37;
    ScalarField moved = spectral_shift(f, shift);
    for (int i = 0; i < g.n; ++i)
        CHECK(moved.values[i] ==
              doctest::Approx(std::cos(3.0 * (g.coord(i) + shift))).epsilon(1e-11));
}

TEST_CASE("multiplier csv export") {
    namespace fs = std::filesystem;
    TorusGrid g = TorusGrid::make(1, 16, kTwoPi);
    FractionalParams p = FractionalParams::make(0.25, 0.1, 1);
    fs::path dir = fs::temp_directory_path() / "fdlab_mult_csv";
    fs::create_directories(dir);
    std::string path = (dir / "m.csv").string();
    write_multiplier_csv(path, frac_laplacian_op(g, p));
    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    CHECK(line == "k,symbol");
    std::getline(is, line);
    CHECK(line.substr(0, 2) == "0,");
    int rows = 1;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 9); // n/2 + 1 modes
    fs::remove_all(dir);
}
