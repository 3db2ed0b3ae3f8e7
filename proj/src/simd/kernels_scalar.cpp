#include "machlab/simd/kernels.hpp"

#include <cmath>

namespace machlab::simd {
namespace {

void axpy_s(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_s(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void mul_s(const double* x, const double* y, double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * y[i];
}

void mask_mul_s(const cplx* x, const double* m, cplx* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * m[i];
}

void cmul_s(const cplx* x, const cplx* p, cplx* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * p[i];
}

double sum_sq_s(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs_pow_s(const double* x, double p, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(x[i]), p);
    return s;
}

double max_abs_s(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double sum_sq_cplx_s(const cplx* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
    return s;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable t{axpy_s,   scale_s,       mul_s,     mask_mul_s,
                               cmul_s,   sum_sq_s,      sum_abs_pow_s,
                               max_abs_s, sum_sq_cplx_s, "scalar"};
    return t;
}

} // namespace machlab::simd
