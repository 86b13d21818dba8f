#include "fdlab/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace fdlab {

namespace {

// Cached FFTW plans per (dim, n).  Plans are created with FFTW_ESTIMATE
// (deterministic choice) and FFTW_UNALIGNED so they can execute on any
// caller buffer through the new-array interface.  FFTW planning is not
// thread-safe; execution on distinct buffers is.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
    static std::map<std::pair<int, int>, PlanPair> cache;
    return cache;
}

PlanPair get_plans(int dim, int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(dim, n);
    auto it = plan_cache().find(key);
    if (it != plan_cache().end()) return it->second;

    std::size_t real_sz = dim == 1 ? n : std::size_t(n) * n;
    std::size_t cplx_sz = dim == 1 ? n / 2 + 1 : std::size_t(n) * (n / 2 + 1);
    std::vector<double> rbuf(real_sz);
    std::vector<std::complex<double>> cbuf(cplx_sz);
    auto* c = reinterpret_cast<fftw_complex*>(cbuf.data());

    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (dim == 1) {
        p.fwd = fftw_plan_dft_r2c_1d(n, rbuf.data(), c, flags);
        p.bwd = fftw_plan_dft_c2r_1d(n, c, rbuf.data(), flags);
    } else {
        p.fwd = fftw_plan_dft_r2c_2d(n, n, rbuf.data(), c, flags);
        p.bwd = fftw_plan_dft_c2r_2d(n, n, c, rbuf.data(), flags);
    }
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    plan_cache()[key] = p;
    return p;
}

} // namespace

std::size_t spectrum_size(const TorusGrid& g) {
    return g.dim == 1 ? std::size_t(g.n / 2 + 1) : std::size_t(g.n) * (g.n / 2 + 1);
}

void spectrum_wavenumbers(const TorusGrid& g, std::size_t idx, int& k0, int& k1) {
    if (g.dim == 1) {
        k0 = static_cast<int>(idx);
        k1 = 0;
    } else {
        int cols = g.n / 2 + 1;
        int i0 = static_cast<int>(idx) / cols;
        k1 = static_cast<int>(idx) % cols;
        k0 = i0 <= g.n / 2 ? i0 : i0 - g.n;
    }
}

double spectrum_kappa(const TorusGrid& g, std::size_t idx) {
    int k0, k1;
    spectrum_wavenumbers(g, idx, k0, k1);
    double w = 2.0 * std::numbers::pi / g.length;
    return w * std::sqrt(double(k0) * k0 + double(k1) * k1);
}

Spectrum rfft(const ScalarField& f) {
    PlanPair p = get_plans(f.grid.dim, f.grid.n);
    Spectrum s;
    s.grid = f.grid;
    s.coeffs.resize(spectrum_size(f.grid));
    std::vector<double> in(f.values); // r2c destroys its input
    fftw_execute_dft_r2c(p.fwd, in.data(), reinterpret_cast<fftw_complex*>(s.coeffs.data()));
    return s;
}

ScalarField irfft(const Spectrum& s) {
    PlanPair p = get_plans(s.grid.dim, s.grid.n);
    ScalarField f(s.grid);
    std::vector<std::complex<double>> in(s.coeffs); // c2r destroys its input
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(in.data()), f.values.data());
    double inv = 1.0 / static_cast<double>(s.grid.num_nodes());
    for (double& v : f.values) v *= inv;
    return f;
}

} // namespace fdlab
