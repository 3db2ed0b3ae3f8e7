// AVX2 variants. Complex arrays are treated as interleaved doubles; a
// std::complex<double> multiply maps onto shuffles + fmaddsub.
#include "machlab/simd/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace machlab::simd {
namespace {

void axpy_v(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_v(double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void mul_v(const double* x, const double* y, double* z, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(z + i, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                              _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) z[i] = x[i] * y[i];
}

void mask_mul_v(const cplx* x, const double* m, cplx* z, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* zd = reinterpret_cast<double*>(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // duplicate each mask value across its re/im pair
        __m128d mm = _mm_loadu_pd(m + i);
        __m256d vm = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);
        _mm256_storeu_pd(zd + 2 * i,
                         _mm256_mul_pd(vm, _mm256_loadu_pd(xd + 2 * i)));
    }
    for (; i < n; ++i) z[i] = x[i] * m[i];
}

void cmul_v(const cplx* x, const cplx* p, cplx* z, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* pd = reinterpret_cast<const double*>(p);
    double* zd = reinterpret_cast<double*>(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i); // x0r x0i x1r x1i
        __m256d vp = _mm256_loadu_pd(pd + 2 * i);
        __m256d pr = _mm256_movedup_pd(vp);            // p0r p0r p1r p1r
        __m256d pi = _mm256_permute_pd(vp, 0xF);       // p0i p0i p1i p1i
        __m256d xs = _mm256_permute_pd(vx, 0x5);       // x0i x0r x1i x1r
        _mm256_storeu_pd(zd + 2 * i,
                         _mm256_fmaddsub_pd(vx, pr, _mm256_mul_pd(xs, pi)));
    }
    for (; i < n; ++i) z[i] = x[i] * p[i];
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_sq_v(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

// No vector pow; fall back to the scalar kernel.
double sum_abs_pow_v(const double* x, double p, std::size_t n) {
    return scalar_kernels().sum_abs_pow(x, p, n);
}

double max_abs_v(const double* x, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc,
                            _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double sum_sq_cplx_v(const cplx* x, std::size_t n) {
    return sum_sq_v(reinterpret_cast<const double*>(x), 2 * n);
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable t{axpy_v,   scale_v,       mul_v,     mask_mul_v,
                               cmul_v,   sum_sq_v,      sum_abs_pow_v,
                               max_abs_v, sum_sq_cplx_v, "avx2"};
    return t;
}

} // namespace machlab::simd
