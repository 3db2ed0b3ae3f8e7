#include <doctest.h>

#include <cmath>
#include <random>

#include "machlab/compressible.hpp"
#include "machlab/spectral_ops.hpp"

using namespace machlab;

namespace {

SpectralField smooth_random(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    SpectralField f = zero_field(g);
    for (int k = 1; k <= 3; ++k) {
        const double a = U(rng), b = U(rng), p = U(rng) * 2 * M_PI;
        const double kk = 2.0 * M_PI * k / g.box_length;
        f = f + sample(g, [&](double x, double y) {
                return a * std::cos(kk * x + p) + b * std::sin(kk * (x + y));
            });
    }
    return f;
}

CompressibleState random_state(const Grid& g, unsigned seed, double eps) {
    CompressibleState s;
    s.v = VectorField{smooth_random(g, seed), smooth_random(g, seed + 7)};
    s.c = mean_zero(smooth_random(g, seed + 13));
    s.epsilon = eps;
    s.gamma_bar = 0.2;
    return s;
}

double state_distance(const CompressibleState& a, const CompressibleState& b) {
    return max_norm(a.v.x - b.v.x) + max_norm(a.v.y - b.v.y) +
           max_norm(a.c - b.c);
}

} // namespace

TEST_SUITE("compressible") {

TEST_CASE("nonlinear rhs: product identity at v = 0") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s;
    s.v = zero_vector(g);
    s.c = sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
    s.gamma_bar = 0.3;
    auto [f, rhs_c] = nonlinear_rhs(s);
    // f = -gb c grad c = -(gb/2) grad(c^2)
    VectorField want = (-0.5 * s.gamma_bar) * gradient(multiply(s.c, s.c));
    CHECK(max_norm(f.x - dealias(want).x) < 1e-10);
    CHECK(max_norm(f.y - dealias(want).y) < 1e-10);
    CHECK(max_norm(rhs_c) < 1e-10);
}

TEST_CASE("nonlinear rhs: divergence-free single mode, c = 0") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s;
    s.v = VectorField{sample(g, [](double, double y) { return std::sin(y); }),
                      zero_field(g)};
    s.c = zero_field(g);
    auto [f, rhs_c] = nonlinear_rhs(s);
    (void)f;
    CHECK(max_norm(rhs_c) < 1e-12);
}

TEST_CASE("nonlinear rhs matches finite differences") {
    Grid g = Grid::make(128, 2.0 * M_PI);
    CompressibleState s = random_state(g, 3, 0.5);
    auto [f, rhs_c] = nonlinear_rhs(s);
    const double h = g.spacing();
    const auto& vx = s.v.x.phys();
    const auto& vy = s.v.y.phys();
    const auto& c = s.c.phys();
    auto at = [&](const std::vector<double>& a, int i, int j) {
        return a[static_cast<std::size_t>((j + g.n) % g.n) * g.n +
                 (i + g.n) % g.n];
    };
    double worst = 0.0;
    for (int j = 5; j < g.n; j += 17)
        for (int i = 3; i < g.n; i += 13) {
            const double dcx = (at(c, i + 1, j) - at(c, i - 1, j)) / (2 * h);
            const double dcy = (at(c, i, j + 1) - at(c, i, j - 1)) / (2 * h);
            const double divv =
                (at(vx, i + 1, j) - at(vx, i - 1, j)) / (2 * h) +
                (at(vy, i, j + 1) - at(vy, i, j - 1)) / (2 * h);
            const double want =
                -(at(vx, i, j) * dcx + at(vy, i, j) * dcy) -
                s.gamma_bar * at(c, i, j) * divv;
            worst = std::max(
                worst, std::abs(want - rhs_c.phys()[static_cast<std::size_t>(j) *
                                                        g.n + i]));
        }
    CHECK(worst < 5.0 * h * h); // O(h^2) finite-difference agreement
}

TEST_CASE("gamma/upsilon: zero for solenoidal states, round trip exact") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    // divergence-free v, c = 0
    CompressibleState s;
    s.v = VectorField{sample(g, [](double, double y) { return std::sin(y); }),
                      sample(g, [](double x, double) { return std::sin(x); })};
    s.c = zero_field(g);
    AcousticVariables a = gamma_upsilon(s);
    double acc = 0.0;
    for (const auto& z : a.gamma_x) acc += std::abs(z);
    for (const auto& z : a.upsilon) acc += std::abs(z);
    CHECK(acc < 1e-12);

    // gradient field: real part of Gamma is the field itself
    SpectralField phi =
        sample(g, [](double x, double y) { return std::cos(x + 2 * y); });
    CompressibleState sg;
    sg.v = gradient(phi);
    sg.c = zero_field(g);
    AcousticVariables ag = gamma_upsilon(sg);
    SpectralField re_gx = SpectralField::from_spectral(g, [&] {
        // real part of a complex field: (z(k) + conj(z(-k)))/2
        std::vector<cplx> out(ag.gamma_x.size());
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const int mi = (g.n - i) % g.n, mj = (g.n - j) % g.n;
                out[static_cast<std::size_t>(j) * g.n + i] =
                    0.5 * (ag.gamma_x[static_cast<std::size_t>(j) * g.n + i] +
                           std::conj(
                               ag.gamma_x[static_cast<std::size_t>(mj) * g.n +
                                          mi]));
            }
        return out;
    }());
    CHECK(max_norm(re_gx - sg.v.x) < 1e-10);

    // round trip on a random state
    CompressibleState r = random_state(g, 11, 0.3);
    CompressibleState back = from_gamma_upsilon(r, gamma_upsilon(r));
    CHECK(state_distance(back, r) < 1e-12);
}

TEST_CASE("propagator: half-period phase negates the wave part") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    const double eps = 0.25;
    // single |k| = 1 compressible mode
    SpectralField phi = sample(g, [](double x, double) { return std::cos(x); });
    CompressibleState s;
    s.v = gradient(phi);
    s.c = zero_field(g);
    s.epsilon = eps;
    CompressibleState out = acoustic_propagator(s, M_PI * eps);
    AcousticVariables a0 = gamma_upsilon(s);
    AcousticVariables a1 = gamma_upsilon(out);
    double worst = 0.0;
    for (std::size_t i = 0; i < a0.gamma_x.size(); ++i)
        worst = std::max(worst, std::abs(a1.gamma_x[i] + a0.gamma_x[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("propagator: unitary on the acoustic variables, Pv frozen") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s = random_state(g, 2, 0.1);
    CompressibleState out = acoustic_propagator(s, 0.0137);
    AcousticVariables a0 = gamma_upsilon(s);
    AcousticVariables a1 = gamma_upsilon(out);
    auto l2c = [](const std::vector<cplx>& z) {
        double acc = 0.0;
        for (const auto& w : z) acc += std::norm(w);
        return std::sqrt(acc);
    };
    CHECK(l2c(a1.gamma_x) == doctest::Approx(l2c(a0.gamma_x)).epsilon(1e-12));
    CHECK(l2c(a1.upsilon) == doctest::Approx(l2c(a0.upsilon)).epsilon(1e-12));

    LerayParts p0 = leray_decompose(s.v);
    LerayParts p1 = leray_decompose(out.v);
    CHECK(max_norm(p1.solenoidal.x - p0.solenoidal.x) < 1e-12);
    CHECK(max_norm(p1.solenoidal.y - p0.solenoidal.y) < 1e-12);
    // vorticity invariant at the linear level
    CHECK(max_norm(curl2d(out.v) - curl2d(s.v)) < 1e-10);
}

TEST_CASE("propagator matches the analytic plane-wave solution") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    const double eps = 0.2, t = 0.31;
    // linear system d_t v = -(1/eps) grad c, d_t c = -(1/eps) div v;
    // data v = grad cos(x), c = 0 evolves as
    // a(t) = a(0) cos(|k| t/eps) on the characteristic coefficients
    CompressibleState s;
    s.v = gradient(sample(g, [](double x, double) { return std::cos(x); }));
    s.c = zero_field(g);
    s.epsilon = eps;
    CompressibleState out = acoustic_propagator(s, t);
    // exact: v(t) = cos(t/eps) grad cos(x), c(t) = sin(t/eps) * (-sin x) * ...
    // derive from the two characteristics e^{i(x -+ t/eps)}
    SpectralField vx_want = sample(g, [&](double x, double) {
        return -std::sin(x) * std::cos(t / eps);
    });
    SpectralField c_want = sample(g, [&](double x, double) {
        return -std::sin(x) * std::sin(t / eps) * -1.0;
    });
    CHECK(max_norm(out.v.x - vx_want) < 1e-10);
    // c evolves as -a(0) sin(|k|t/eps) in the b-slot; verify magnitude and
    // phase through energy exchange
    CHECK(l2_norm(out.c) ==
          doctest::Approx(l2_norm(c_want)).epsilon(1e-10));
    const double e0 = std::pow(l2_norm(s.v.x), 2) + std::pow(l2_norm(s.c), 2);
    const double e1 =
        std::pow(l2_norm(out.v.x), 2) + std::pow(l2_norm(out.c), 2);
    CHECK(e1 == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("step: splitting degeneracy and zero invariance") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState zero;
    zero.v = zero_vector(g);
    zero.c = zero_field(g);
    zero.epsilon = 0.1;
    CompressibleState out = step(zero, 0.01);
    CHECK(max_norm(out.v) < 1e-14);
    CHECK(max_norm(out.c) < 1e-14);
    CHECK(out.t == doctest::Approx(0.01));
}

TEST_CASE("step: linear-level reversibility") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s = random_state(g, 31, 0.5);
    // small amplitude so the nonlinearity is negligible relative to 1e-10
    const double a = 1e-6;
    s.v = VectorField{a * s.v.x, a * s.v.y};
    s.c = a * s.c;
    CompressibleState fwd = step(s, 0.004);
    CompressibleState back = step(fwd, -0.004);
    CHECK(state_distance(back, s) < 1e-10 * a + 1e-14);
}

TEST_CASE("step: second-order self-convergence at eps = 1") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s0 = random_state(g, 8, 1.0);
    const double T = 0.1;
    auto advance = [&](int nsteps) {
        CompressibleState s = s0;
        const double dt = T / nsteps;
        for (int i = 0; i < nsteps; ++i) s = step(s, dt);
        return s;
    };
    CompressibleState c1 = advance(10);
    CompressibleState c2 = advance(20);
    CompressibleState c4 = advance(40);
    const double e1 = state_distance(c1, c2);
    const double e2 = state_distance(c2, c4);
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.6);
    CHECK(order < 2.6);
}

TEST_CASE("cfl_dt scaling rules") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    SolverConfig cfg;
    cfg.dt_max = 0.01;
    CompressibleState zero;
    zero.v = zero_vector(g);
    zero.c = zero_field(g);
    CHECK(cfl_dt(zero, cfg) == cfg.dt_max);

    // uncapped regime: dt_max large enough that the advective bound wins
    SolverConfig wide = cfg;
    wide.dt_max = 10.0;
    CompressibleState s = random_state(g, 4, 0.1);
    const double dt1 = cfl_dt(s, wide);
    CHECK(dt1 < wide.dt_max);
    CompressibleState d = s;
    d.v = VectorField{2.0 * s.v.x, 2.0 * s.v.y};
    d.c = 2.0 * s.c;
    const double dt2 = cfl_dt(d, wide);
    CHECK(dt2 == doctest::Approx(0.5 * dt1).epsilon(1e-12));
    CompressibleState e = s;
    e.epsilon = 0.5 * s.epsilon;
    CHECK(cfl_dt(e, wide) == doctest::Approx(dt1));
}

TEST_CASE("simulate: linear-regime energy constancy and accumulators") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s = random_state(g, 12, 0.2);
    const double a = 1e-3;
    s.v = VectorField{a * s.v.x, a * s.v.y};
    s.c = a * s.c;
    SolverConfig cfg;
    cfg.dt_max = 0.01;
    TrajectoryRecord rec = simulate(s, 1.0, 10, cfg);
    REQUIRE(!rec.blown_up);
    REQUIRE(rec.samples.size() > 3);
    const double h0 = rec.samples.front().hs_norm;
    for (const auto& smp : rec.samples) {
        CHECK(smp.hs_norm == doctest::Approx(h0).epsilon(0.01));
    }
    for (std::size_t i = 1; i < rec.samples.size(); ++i) {
        CHECK(rec.samples[i].V_acc >= rec.samples[i - 1].V_acc);
        CHECK(rec.samples[i].qv4_acc >= rec.samples[i - 1].qv4_acc);
    }
}

TEST_CASE("simulate: blow-up detector flags synthetic overflow") {
    Grid g = Grid::make(64, 2.0 * M_PI);
    CompressibleState s = random_state(g, 40, 0.5);
    // enormous amplitude forces the quadratic term to run away
    s.v = VectorField{1e4 * s.v.x, 1e4 * s.v.y};
    s.c = 1e4 * s.c;
    SolverConfig cfg;
    cfg.dt_max = 0.05;
    cfg.dt_safety = 1e6; // deliberately ignore stability
    TrajectoryRecord rec = simulate(s, 1.0, 1, cfg);
    CHECK(rec.blown_up);
}

} // TEST_SUITE
