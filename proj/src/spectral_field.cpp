#include "machlab/spectral_field.hpp"

#include <fftw3.h>

#include <map>
#include <stdexcept>

#include "machlab/simd/kernels.hpp"

namespace machlab {

namespace fft {
namespace {

struct Plans {
    fftw_plan fwd, bwd;
    fftw_complex* buf;
    int n;
};

// FFTW's planner is not thread safe; plan creation and the shared scratch
// buffer are guarded. Execution uses per-call buffers via the new-array
// interface, so concurrent transforms are fine.
std::mutex planner_mu;
std::map<int, Plans>& plan_cache() {
    static std::map<int, Plans> cache;
    return cache;
}

const Plans& plans_for(int n) {
    std::lock_guard<std::mutex> lock(planner_mu);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Plans p;
    p.n = n;
    p.buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    p.fwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(n, p).first->second;
}

} // namespace

std::vector<cplx> forward(const Grid& g, const std::vector<double>& phys) {
    const int n = g.n;
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    if (phys.size() != sz)
        throw std::invalid_argument("fft::forward: size mismatch");
    const Plans& p = plans_for(n);
    std::vector<cplx> out(sz);
    {
        std::lock_guard<std::mutex> lock(planner_mu);
        for (std::size_t i = 0; i < sz; ++i) {
            p.buf[i][0] = phys[i];
            p.buf[i][1] = 0.0;
        }
        fftw_execute(p.fwd);
        const double inv = 1.0 / static_cast<double>(sz);
        for (std::size_t i = 0; i < sz; ++i)
            out[i] = cplx(p.buf[i][0] * inv, p.buf[i][1] * inv);
    }
    return out;
}

std::vector<double> backward(const Grid& g, const std::vector<cplx>& spec) {
    const int n = g.n;
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    if (spec.size() != sz)
        throw std::invalid_argument("fft::backward: size mismatch");
    const Plans& p = plans_for(n);
    std::vector<double> out(sz);
    {
        std::lock_guard<std::mutex> lock(planner_mu);
        for (std::size_t i = 0; i < sz; ++i) {
            p.buf[i][0] = spec[i].real();
            p.buf[i][1] = spec[i].imag();
        }
        fftw_execute(p.bwd);
        for (std::size_t i = 0; i < sz; ++i) out[i] = p.buf[i][0];
    }
    return out;
}

} // namespace fft

SpectralField SpectralField::from_physical(const Grid& g,
                                           std::vector<double> values) {
    const std::size_t sz = static_cast<std::size_t>(g.n) * g.n;
    if (values.size() != sz)
        throw std::invalid_argument("SpectralField: physical size mismatch");
    SpectralField f;
    f.grid_ = g;
    f.cache_ = std::make_shared<Cache>();
    f.cache_->phys = std::move(values);
    f.cache_->phys_valid = true;
    return f;
}

SpectralField SpectralField::from_spectral(const Grid& g,
                                           std::vector<cplx> coeffs) {
    const std::size_t sz = static_cast<std::size_t>(g.n) * g.n;
    if (coeffs.size() != sz)
        throw std::invalid_argument("SpectralField: spectral size mismatch");
    SpectralField f;
    f.grid_ = g;
    f.cache_ = std::make_shared<Cache>();
    f.cache_->spec = std::move(coeffs);
    f.cache_->spec_valid = true;
    return f;
}

const std::vector<double>& SpectralField::phys() const {
    Cache& c = *cache_;
    std::lock_guard<std::mutex> lock(c.mu);
    if (!c.phys_valid) {
        c.phys = fft::backward(grid_, c.spec);
        c.phys_valid = true;
    }
    return c.phys;
}

const std::vector<cplx>& SpectralField::spec() const {
    Cache& c = *cache_;
    std::lock_guard<std::mutex> lock(c.mu);
    if (!c.spec_valid) {
        c.spec = fft::forward(grid_, c.phys);
        c.spec_valid = true;
    }
    return c.spec;
}

} // namespace machlab
