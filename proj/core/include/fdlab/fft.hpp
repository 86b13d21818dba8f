#pragma once

#include <complex>
#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

/// Half-complex coefficients of a real field (r2c layout).
/// dim 1: size n/2+1, index k = 0..n/2.
/// dim 2: size n*(n/2+1), row-major; row i0 carries k0 = i0 (i0 <= n/2)
/// or i0-n, column i1 carries k1 = i1 in 0..n/2.
struct Spectrum {
    TorusGrid grid;
    std::vector<std::complex<double>> coeffs;

    std::size_t size() const { return coeffs.size(); }
};

/// Forward DFT (plain sum over nodes, no normalization).
Spectrum rfft(const ScalarField& f);

/// Inverse of rfft including the 1/n^dim factor.
ScalarField irfft(const Spectrum& s);

std::size_t spectrum_size(const TorusGrid& g);

/// Signed integer wavenumber pair for a flattened spectrum index.
void spectrum_wavenumbers(const TorusGrid& g, std::size_t idx, int& k0, int& k1);

/// |2 pi k / L| for a flattened spectrum index.
double spectrum_kappa(const TorusGrid& g, std::size_t idx);

} // namespace fdlab
