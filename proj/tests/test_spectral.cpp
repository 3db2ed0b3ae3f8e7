#include <doctest.h>

#include <cmath>
#include <random>

#include "machlab/spectral_ops.hpp"

using namespace machlab;

namespace {

SpectralField random_field(const Grid& g, unsigned seed, int kcut = 10) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cplx> spec(static_cast<std::size_t>(g.n) * g.n, cplx{0, 0});
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int kx = g.wavenumber(i), ky = g.wavenumber(j);
            if (kx * kx + ky * ky > kcut * kcut || (kx == 0 && ky == 0))
                continue;
            if (kx < 0 || (kx == 0 && ky < 0)) continue;
            const cplx c{U(rng), U(rng)};
            spec[static_cast<std::size_t>(j) * g.n + i] = c;
            const int mi = (g.n - i) % g.n, mj = (g.n - j) % g.n;
            spec[static_cast<std::size_t>(mj) * g.n + mi] = std::conj(c);
        }
    return SpectralField::from_spectral(g, std::move(spec));
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("grid validation and wavenumbers") {
    CHECK_THROWS_AS(Grid::make(7, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(12, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(16, 1.0), std::invalid_argument);
    Grid g = Grid::make(16, 2.0 * M_PI);
    CHECK(g.wavenumber(0) == 0);
    CHECK(g.wavenumber(8) == 8);
    CHECK(g.wavenumber(9) == -7);
    CHECK(g.k_phys(1) == doctest::Approx(1.0));
    CHECK(g.k_deriv(8) == 0.0);
    CHECK(g.wrap(5.5) == doctest::Approx(5.5 - 2.0 * M_PI));
}

TEST_CASE("fft round trip and mean") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> vals(static_cast<std::size_t>(g.n) * g.n);
    double mean = 0.0;
    for (auto& v : vals) {
        v = U(rng);
        mean += v;
    }
    mean /= vals.size();
    SpectralField f = SpectralField::from_physical(g, vals);
    CHECK(f.mean() == doctest::Approx(mean).epsilon(1e-12));
    SpectralField back = SpectralField::from_spectral(g, f.spec());
    for (std::size_t i = 0; i < vals.size(); i += 97)
        CHECK(back.phys()[i] == doctest::Approx(vals[i]).epsilon(1e-12));
}

TEST_CASE("parseval") {
    Grid g = Grid::make(64, 4.0 * M_PI);
    SpectralField f = random_field(g, 3);
    CHECK(l2_norm(f) == doctest::Approx(l2_norm_spectral(f)).epsilon(1e-10));
}

TEST_CASE("derivative of a plane wave") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    SpectralField f =
        sample(g, [](double x, double y) { return std::sin(3 * x + 2 * y); });
    VectorField df = gradient(f);
    SpectralField ex =
        sample(g, [](double x, double y) { return 3 * std::cos(3 * x + 2 * y); });
    CHECK(max_norm(df.x - ex) < 1e-10);
    SpectralField lap = laplacian(f);
    CHECK(max_norm(lap + 13.0 * f) < 1e-9);
    // laplacian_inv inverts on mean-zero data
    CHECK(max_norm(laplacian_inv(lap) - f) < 1e-10);
}

TEST_CASE("fractional_D") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    SpectralField f = sample(g, [](double x, double) { return std::cos(2 * x); });
    SpectralField d = fractional_D(f, 1.0);
    CHECK(max_norm(d - 2.0 * f) < 1e-10);
    SpectralField half = fractional_D(fractional_D(f, 0.5), 0.5);
    CHECK(max_norm(half - d) < 1e-10);
    SpectralField with_mean = sample(g, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(fractional_D(with_mean, -1.0), std::invalid_argument);
}

TEST_CASE("leray decomposition: exact direct sum, idempotent parts") {
    Grid g = Grid::make(128, 2.0 * M_PI);
    for (unsigned seed : {1u, 2u, 3u}) {
        VectorField v{random_field(g, seed), random_field(g, seed + 50)};
        LerayParts parts = leray_decompose(v);
        CHECK(max_norm(parts.solenoidal + parts.compressible - v) < 1e-11);
        CHECK(max_norm(divergence(parts.solenoidal)) < 1e-9);
        CHECK(max_norm(curl2d(parts.compressible)) < 1e-9);
        LerayParts again = leray_decompose(parts.solenoidal);
        CHECK(max_norm(again.compressible) < 1e-10);
    }
}

TEST_CASE("biot-savart identities") {
    Grid g = Grid::make(128, 4.0 * M_PI);
    SpectralField omega = mean_zero(random_field(g, 17));
    VectorField v = biot_savart(omega);
    CHECK(max_norm(curl2d(v) - omega) < 1e-9);
    CHECK(max_norm(divergence(v)) < 1e-9);
    SpectralField not_mean_zero =
        omega + sample(g, [](double, double) { return 0.5; });
    CHECK_THROWS_AS(biot_savart(not_mean_zero), std::invalid_argument);
}

TEST_CASE("biot-savart against the singular-kernel integral") {
    // compactly supported vortex patch, velocity compared with direct
    // quadrature of the 2D kernel (x - y)^perp / (2 pi |x - y|^2)
    Grid g = Grid::make(128, 8.0 * M_PI);
    const double cx = 0.5 * g.box_length, cy = 0.5 * g.box_length;
    SpectralField omega = mean_zero(sample(g, [&](double x, double y) {
        const double d2 = g.torus_dist2(x, y, cx, cy);
        return d2 < 1.0 ? std::exp(-1.0 / (1.0 - d2)) : 0.0;
    }));
    VectorField v = biot_savart(omega);
    const double h = g.spacing();
    // evaluate at a point 2 units from the vortex center
    const double px = cx + 2.0, py = cy;
    const int pi = static_cast<int>(px / h), pj = static_cast<int>(py / h);
    double ux = 0.0, uy = 0.0;
    const auto& w = omega.phys();
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double dx = pi * h - i * h, dy = pj * h - j * h;
            const double r2 = dx * dx + dy * dy;
            if (r2 < 1e-14) continue;
            const double wij = w[static_cast<std::size_t>(j) * g.n + i];
            ux += -dy / (2.0 * M_PI * r2) * wij * h * h;
            uy += dx / (2.0 * M_PI * r2) * wij * h * h;
        }
    // periodic images contribute O(1/L); tolerance reflects that
    CHECK(v.x(pi, pj) == doctest::Approx(ux).epsilon(0.08));
    CHECK(v.y(pi, pj) == doctest::Approx(uy).epsilon(0.08));
}

TEST_CASE("dealias removes high modes only") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    SpectralField low = sample(g, [](double x, double) { return std::sin(5 * x); });
    SpectralField high =
        sample(g, [](double x, double) { return std::sin(30 * x); });
    CHECK(max_norm(dealias(low) - low) < 1e-12);
    CHECK(max_norm(dealias(high)) < 1e-12);
}

TEST_CASE("sobolev norm of a single mode") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    SpectralField f = sample(g, [](double x, double) { return std::cos(3 * x); });
    // |f|_{H^s}^2 = L^2 * 2 * (1+9)^s * (1/2)^2
    const double want = g.box_length * std::sqrt(2.0 * std::pow(10.0, 0.5) * 0.25);
    CHECK(sobolev_norm(f, 0.5) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("norm quadrature oracles") {
    Grid g = Grid::make(128, 2.0 * M_PI);
    SpectralField f = sample(g, [](double x, double y) {
        return std::sin(x) * std::cos(2 * y);
    });
    // ||sin x cos 2y||_L2^2 = pi^2 over the 2pi-box
    CHECK(l2_norm(f) == doctest::Approx(M_PI).epsilon(1e-10));
    CHECK(max_norm(f) == doctest::Approx(1.0).epsilon(1e-3));
    // L^4 norm: (integral sin^4 x cos^4 2y)^{1/4} = (9 pi^2 / 16)^{1/4}
    CHECK(lp_norm(f, 4.0) ==
          doctest::Approx(std::pow(9.0 * M_PI * M_PI / 16.0, 0.25))
              .epsilon(1e-10));
}

} // TEST_SUITE
