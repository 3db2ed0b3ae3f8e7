#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "machlab/grid.hpp"

namespace machlab {

using cplx = std::complex<double>;

// Real scalar field on a periodic grid with lazily synchronized Fourier
// coefficients. Immutable from the caller's perspective; the two
// representations are cached behind a mutex.
//
// Conventions: u(x) = sum_k uhat(k) exp(i kappa . x) with kappa = 2*pi/L * k
// and integer wavevectors k in (-n/2, n/2]^2, row-major index
// (ky_index * n + kx_index) matching the physical layout (j * n + i).
class SpectralField {
public:
    SpectralField() = default;
    static SpectralField from_physical(const Grid& g, std::vector<double> values);
    static SpectralField from_spectral(const Grid& g, std::vector<cplx> coeffs);

    const Grid& grid() const { return grid_; }
    int n() const { return grid_.n; }

    const std::vector<double>& phys() const;
    const std::vector<cplx>& spec() const;

    double mean() const { return spec()[0].real(); }

    double operator()(int ix, int iy) const {
        return phys()[static_cast<std::size_t>(iy) * grid_.n + ix];
    }

private:
    struct Cache {
        std::vector<double> phys;
        std::vector<cplx> spec;
        bool phys_valid = false;
        bool spec_valid = false;
        std::mutex mu;
    };
    Grid grid_;
    std::shared_ptr<Cache> cache_;
};

struct VectorField {
    SpectralField x, y;
    const Grid& grid() const { return x.grid(); }
};

// FFT backend (FFTW, plans cached per grid size).
namespace fft {
// Forward: physical -> normalized coefficients (uhat(0) = mean).
std::vector<cplx> forward(const Grid& g, const std::vector<double>& phys);
// Backward: coefficients -> physical values (imaginary parts discarded).
std::vector<double> backward(const Grid& g, const std::vector<cplx>& spec);
} // namespace fft

} // namespace machlab
