// Data-parallel inner loops used by the spectral core and the norm
// estimators. Every kernel has a scalar reference implementation and an
// AVX2 variant; the active table is chosen once at startup from CPUID.
#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace machlab::simd {

using cplx = std::complex<double>;

struct KernelTable {
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x[i] *= a
    void (*scale)(double* x, double a, std::size_t n);
    // z[i] = x[i] * y[i]
    void (*mul)(const double* x, const double* y, double* z, std::size_t n);
    // z[i] = x[i] * y[i] (complex * real mask)
    void (*mask_mul)(const cplx* x, const double* m, cplx* z, std::size_t n);
    // z[i] = x[i] * p[i] (complex * complex, e.g. phase factors)
    void (*cmul)(const cplx* x, const cplx* p, cplx* z, std::size_t n);
    // sum of x[i]^2
    double (*sum_sq)(const double* x, std::size_t n);
    // sum of |x[i]|^p
    double (*sum_abs_pow)(const double* x, double p, std::size_t n);
    // max of |x[i]|
    double (*max_abs)(const double* x, std::size_t n);
    // sum of |x[i]|^2 over complex entries
    double (*sum_sq_cplx)(const cplx* x, std::size_t n);
    const char* name;
};

const KernelTable& scalar_kernels();
const KernelTable& avx2_kernels();

// Active table: AVX2 when the CPU supports it, scalar otherwise.
// Overridable with MACHLAB_SIMD=scalar|avx2 in the environment.
const KernelTable& active();

} // namespace machlab::simd
