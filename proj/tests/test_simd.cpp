#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "machlab/simd/kernels.hpp"

using namespace machlab::simd;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    std::vector<double> v(n);
    for (auto& x : v) x = U(rng);
    return v;
}

std::vector<cplx> random_cvec(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx{U(rng), U(rng)};
    return v;
}

} // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar and avx2 kernels agree on odd-length data") {
    const KernelTable& sc = scalar_kernels();
    const KernelTable& av = avx2_kernels();
    // lengths straddling the vector width, including tails
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4},
                          std::size_t{7}, std::size_t{64}, std::size_t{1001}}) {
        auto x = random_vec(n, 11 + static_cast<unsigned>(n));
        auto y = random_vec(n, 23 + static_cast<unsigned>(n));

        auto y1 = y, y2 = y;
        sc.axpy(1.7, x.data(), y1.data(), n);
        av.axpy(1.7, x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

        auto s1 = x, s2 = x;
        sc.scale(s1.data(), -0.37, n);
        av.scale(s2.data(), -0.37, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(s1[i] == s2[i]);

        std::vector<double> z1(n), z2(n);
        sc.mul(x.data(), y.data(), z1.data(), n);
        av.mul(x.data(), y.data(), z2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(z1[i] == z2[i]);

        CHECK(sc.sum_sq(x.data(), n) ==
              doctest::Approx(av.sum_sq(x.data(), n)).epsilon(1e-12));
        CHECK(sc.sum_abs_pow(x.data(), 1.5, n) ==
              doctest::Approx(av.sum_abs_pow(x.data(), 1.5, n)).epsilon(1e-12));
        CHECK(sc.max_abs(x.data(), n) == av.max_abs(x.data(), n));
    }
}

TEST_CASE("complex kernels agree") {
    const KernelTable& sc = scalar_kernels();
    const KernelTable& av = avx2_kernels();
    for (std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{258}}) {
        auto x = random_cvec(n, 5);
        auto p = random_cvec(n, 9);
        auto m = random_vec(n, 13);

        std::vector<cplx> z1(n), z2(n);
        sc.mask_mul(x.data(), m.data(), z1.data(), n);
        av.mask_mul(x.data(), m.data(), z2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(z1[i].real() == doctest::Approx(z2[i].real()).epsilon(1e-14));
            CHECK(z1[i].imag() == doctest::Approx(z2[i].imag()).epsilon(1e-14));
        }

        sc.cmul(x.data(), p.data(), z1.data(), n);
        av.cmul(x.data(), p.data(), z2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(z1[i].real() == doctest::Approx(z2[i].real()).epsilon(1e-13));
            CHECK(z1[i].imag() == doctest::Approx(z2[i].imag()).epsilon(1e-13));
        }

        CHECK(sc.sum_sq_cplx(x.data(), n) ==
              doctest::Approx(av.sum_sq_cplx(x.data(), n)).epsilon(1e-12));
    }
}

TEST_CASE("active table resolves to a known implementation") {
    const KernelTable& k = active();
    const std::string name = k.name;
    CHECK((name == "scalar" || name == "avx2"));
}

TEST_CASE("kernel oracles: hand-computed values") {
    const KernelTable& k = active();
    double y[3] = {1.0, 2.0, 3.0};
    const double x[3] = {1.0, 1.0, 1.0};
    k.axpy(2.0, x, y, 3);
    CHECK(y[0] == 3.0);
    CHECK(y[2] == 5.0);
    const double v[4] = {3.0, -4.0, 0.0, 2.0};
    CHECK(k.sum_sq(v, 4) == doctest::Approx(29.0));
    CHECK(k.max_abs(v, 4) == 4.0);
    const cplx a{1.0, 2.0}, b{3.0, -1.0};
    cplx out;
    k.cmul(&a, &b, &out, 1);
    CHECK(out.real() == doctest::Approx(5.0));
    CHECK(out.imag() == doctest::Approx(5.0));
}

} // TEST_SUITE
