#include "machlab/flow_transport.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "machlab/spectral_ops.hpp"

namespace machlab {
namespace {

inline double catmull_rom(double fm1, double f0, double f1, double f2, double w) {
    const double a = -0.5 * fm1 + 1.5 * f0 - 1.5 * f1 + 0.5 * f2;
    const double b = fm1 - 2.5 * f0 + 2.0 * f1 - 0.5 * f2;
    const double c = -0.5 * fm1 + 0.5 * f1;
    return ((a * w + b) * w + c) * w + f0;
}

// periodic bicubic interpolation of a row-major n*n sample array
double bicubic(const Grid& g, const std::vector<double>& f, double x, double y) {
    const int n = g.n;
    const double h = g.spacing();
    double gx = x / h, gy = y / h;
    gx -= std::floor(gx / n) * n;
    gy -= std::floor(gy / n) * n;
    const int i0 = static_cast<int>(std::floor(gx));
    const int j0 = static_cast<int>(std::floor(gy));
    const double wx = gx - i0, wy = gy - j0;
    double rows[4];
    for (int dj = -1; dj <= 2; ++dj) {
        const int j = ((j0 + dj) % n + n) % n;
        double s[4];
        for (int di = -1; di <= 2; ++di) {
            const int i = ((i0 + di) % n + n) % n;
            s[di + 1] = f[static_cast<std::size_t>(j) * n + i];
        }
        rows[dj + 1] = catmull_rom(s[0], s[1], s[2], s[3], wx);
    }
    return catmull_rom(rows[0], rows[1], rows[2], rows[3], wy);
}

// cubic Hermite in time with finite-difference slopes; values fetched
// through the spatial interpolant at up to four snapshots
template <class Fetch>
double hermite_time(const std::vector<double>& ts, double t, Fetch fetch) {
    const std::size_t nt = ts.size();
    if (nt == 1 || t <= ts.front()) return fetch(0);
    if (t >= ts.back()) return fetch(nt - 1);
    std::size_t i =
        static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) -
                                 ts.begin()) - 1;
    if (i + 1 >= nt) i = nt - 2;
    const double t0 = ts[i], t1 = ts[i + 1], dt = t1 - t0;
    const double u = (t - t0) / dt;
    const double f0 = fetch(i), f1 = fetch(i + 1);
    const double m0 = i > 0 ? (f1 - fetch(i - 1)) / (t1 - ts[i - 1]) * dt
                            : (f1 - f0);
    const double m1 = i + 2 < nt ? (fetch(i + 2) - f0) / (ts[i + 2] - t0) * dt
                                 : (f1 - f0);
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * f1 + (u3 - u2) * m1;
}

struct Rk4Particle {
    double x, y, I; // position and accumulated divergence integral
};

// One RK4 step of dx/dt = v(t,x), dI/dt = div v(t,x); direction given by dt's sign.
Rk4Particle rk4_step(const VelocityHistory& h, const Rk4Particle& p, double t,
                     double dt) {
    auto f = [&](double tt, double xx, double yy, double out[3]) {
        h.eval(tt, xx, yy, out[0], out[1]);
        out[2] = h.eval_div(tt, xx, yy);
    };
    double k1[3], k2[3], k3[3], k4[3];
    f(t, p.x, p.y, k1);
    f(t + 0.5 * dt, p.x + 0.5 * dt * k1[0], p.y + 0.5 * dt * k1[1], k2);
    f(t + 0.5 * dt, p.x + 0.5 * dt * k2[0], p.y + 0.5 * dt * k2[1], k3);
    f(t + dt, p.x + dt * k3[0], p.y + dt * k3[1], k4);
    return {p.x + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            p.y + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
            p.I + dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])};
}

} // namespace

VelocityHistory VelocityHistory::from_arrays(
    const Grid& g, std::vector<double> times,
    std::vector<std::vector<double>> vx, std::vector<std::vector<double>> vy) {
    if (times.empty() || times.size() != vx.size() || vx.size() != vy.size())
        throw std::invalid_argument("VelocityHistory: inconsistent history");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("VelocityHistory: times not increasing");
    VelocityHistory h;
    h.grid = g;
    h.times = std::move(times);
    h.vx = std::move(vx);
    h.vy = std::move(vy);
    h.divv.reserve(h.vx.size());
    for (std::size_t i = 0; i < h.vx.size(); ++i) {
        VectorField v{SpectralField::from_physical(g, h.vx[i]),
                      SpectralField::from_physical(g, h.vy[i])};
        h.divv.push_back(divergence(v).phys());
    }
    return h;
}

void VelocityHistory::eval(double t, double x, double y, double& u,
                           double& v) const {
    u = hermite_time(times, t,
                     [&](std::size_t i) { return bicubic(grid, vx[i], x, y); });
    v = hermite_time(times, t,
                     [&](std::size_t i) { return bicubic(grid, vy[i], x, y); });
}

double VelocityHistory::eval_div(double t, double x, double y) const {
    return hermite_time(
        times, t, [&](std::size_t i) { return bicubic(grid, divv[i], x, y); });
}

FlowMap integrate_flow(const VelocityHistory& h, int m,
                       const std::vector<double>& t_grid) {
    if (m < 2) throw std::invalid_argument("integrate_flow: lattice too small");
    if (t_grid.size() < 1 || t_grid.front() < h.t_min() - 1e-12 ||
        t_grid.back() > h.t_max() + 1e-12)
        throw std::invalid_argument("integrate_flow: t_grid outside history");
    FlowMap fm;
    fm.grid = h.grid;
    fm.m = m;
    const double L = h.grid.box_length;
    const double d = L / m;
    const std::size_t np = static_cast<std::size_t>(m) * m;
    std::vector<Rk4Particle> ps(np);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i)
            ps[static_cast<std::size_t>(j) * m + i] = {i * d, j * d, 0.0};

    auto snapshot = [&](double t) {
        fm.times.push_back(t);
        std::vector<double> px(np), py(np), di(np), jc(np);
        for (std::size_t k = 0; k < np; ++k) {
            px[k] = ps[k].x;
            py[k] = ps[k].y;
            di[k] = ps[k].I;
            if (std::abs(ps[k].x - (k % m) * d) > L ||
                std::abs(ps[k].y - (k / m) * d) > L)
                fm.wrap_flagged = true;
        }
        // centered-difference Jacobian over the (unwrapped) position lattice
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                auto at = [&](int ii, int jj, const std::vector<double>& p,
                              double shift_axis_len, bool is_x) {
                    // neighbors use periodic seeds; unwrapped positions of a
                    // wrapped neighbor differ by one box period in the seed
                    // coordinate
                    double off = 0.0;
                    if (ii < 0) off = is_x ? -L : 0.0;
                    if (ii >= m) off = is_x ? L : 0.0;
                    if (jj < 0) off += is_x ? 0.0 : -L;
                    if (jj >= m) off += is_x ? 0.0 : L;
                    (void)shift_axis_len;
                    const int iw = ((ii % m) + m) % m, jw = ((jj % m) + m) % m;
                    return p[static_cast<std::size_t>(jw) * m + iw] + off;
                };
                const double dxdx =
                    (at(i + 1, j, px, L, true) - at(i - 1, j, px, L, true)) /
                    (2 * d);
                const double dydx =
                    (at(i + 1, j, py, L, false) - at(i - 1, j, py, L, false)) /
                    (2 * d);
                const double dxdy =
                    (at(i, j + 1, px, L, true) - at(i, j - 1, px, L, true)) /
                    (2 * d);
                const double dydy =
                    (at(i, j + 1, py, L, false) - at(i, j - 1, py, L, false)) /
                    (2 * d);
                jc[static_cast<std::size_t>(j) * m + i] =
                    dxdx * dydy - dydx * dxdy;
            }
        fm.px.push_back(std::move(px));
        fm.py.push_back(std::move(py));
        fm.div_int.push_back(std::move(di));
        fm.jac.push_back(std::move(jc));
    };

    snapshot(t_grid.front());
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        const double t0 = t_grid[k - 1], t1 = t_grid[k];
        for (auto& p : ps) p = rk4_step(h, p, t0, t1 - t0);
        snapshot(t1);
    }
    return fm;
}

BackwardResult inverse_flow(const VelocityHistory& h, double t,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys,
                            int substeps_per_interval) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("inverse_flow: mismatched seed arrays");
    if (substeps_per_interval < 1) substeps_per_interval = 1;
    const double t0 = h.t_min();
    if (t < t0 - 1e-12 || t > h.t_max() + 1e-12)
        throw std::invalid_argument("inverse_flow: time outside history");
    // backward time partition from the stored snapshot times within [t0, t]
    std::vector<double> knots{t0};
    for (double tt : h.times)
        if (tt > t0 + 1e-12 && tt < t - 1e-12) knots.push_back(tt);
    knots.push_back(t);

    BackwardResult out;
    out.x0.resize(xs.size());
    out.y0.resize(xs.size());
    out.div_int.resize(xs.size());
    const double L = h.grid.box_length;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        Rk4Particle p{xs[k], ys[k], 0.0};
        for (std::size_t s = knots.size(); s-- > 1;) {
            const double a = knots[s], b = knots[s - 1];
            const double dt = (b - a) / substeps_per_interval;
            double tt = a;
            for (int q = 0; q < substeps_per_interval; ++q) {
                p = rk4_step(h, p, tt, dt);
                tt += dt;
            }
        }
        if (std::abs(p.x - xs[k]) > L || std::abs(p.y - ys[k]) > L)
            out.wrap_flagged = true;
        out.x0[k] = p.x;
        out.y0[k] = p.y;
        // backward integration accumulates -int_0^t div along the path
        out.div_int[k] = -p.I;
    }
    return out;
}

SpectralField transport_reconstruct(const SpectralField& f0,
                                    const VelocityHistory& h, double t) {
    const Grid& g = f0.grid();
    const int n = g.n;
    const double hh = g.spacing();
    std::vector<double> xs(static_cast<std::size_t>(n) * n);
    std::vector<double> ys(xs.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            xs[static_cast<std::size_t>(j) * n + i] = i * hh;
            ys[static_cast<std::size_t>(j) * n + i] = j * hh;
        }
    const BackwardResult back = inverse_flow(h, t, xs, ys);
    const auto& f0p = f0.phys();
    std::vector<double> out(xs.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = bicubic(g, f0p, back.x0[k], back.y0[k]) *
                 std::exp(-back.div_int[k]);
    return SpectralField::from_physical(g, std::move(out));
}

RegularityReport regularity_check(const VelocityHistory& h, double t,
                                  double beta, unsigned seed) {
    RegularityReport rep;
    rep.beta = beta;
    const Grid& g = h.grid;
    const double L = g.box_length;
    const double delta_max = std::exp(-beta);
    if (delta_max < 2.0 * g.spacing()) {
        rep.vacuous = true;
        return rep;
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(0.25 * L, 0.75 * L);
    std::uniform_real_distribution<double> A(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> D(2.0 * g.spacing(), delta_max);

    const int npairs = 64;
    std::vector<double> xs, ys;
    for (int k = 0; k < npairs; ++k) {
        const double x = U(rng), y = U(rng);
        const double a = A(rng), d = D(rng);
        xs.push_back(x);
        ys.push_back(y);
        xs.push_back(x + d * std::cos(a));
        ys.push_back(y + d * std::sin(a));
    }
    // forward: integrate the pairs from t_min to t
    std::vector<double> tgrid{h.t_min()};
    for (double tt : h.times)
        if (tt > h.t_min() + 1e-12 && tt < t - 1e-12) tgrid.push_back(tt);
    tgrid.push_back(t);
    std::vector<Rk4Particle> fwd(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) fwd[k] = {xs[k], ys[k], 0.0};
    for (std::size_t s = 1; s < tgrid.size(); ++s)
        for (auto& p : fwd)
            p = rk4_step(h, p, tgrid[s - 1], tgrid[s] - tgrid[s - 1]);
    const BackwardResult bwd = inverse_flow(h, t, xs, ys);

    for (int k = 0; k < npairs; ++k) {
        const std::size_t a = 2 * static_cast<std::size_t>(k), b = a + 1;
        const double d0 = std::hypot(xs[a] - xs[b], ys[a] - ys[b]);
        const double bound = M_E * std::pow(d0, 1.0 / beta);
        const double df = std::hypot(fwd[a].x - fwd[b].x, fwd[a].y - fwd[b].y);
        const double db =
            std::hypot(bwd.x0[a] - bwd.x0[b], bwd.y0[a] - bwd.y0[b]);
        rep.max_ratio_forward = std::max(rep.max_ratio_forward, df / bound);
        rep.max_ratio_backward = std::max(rep.max_ratio_backward, db / bound);
        ++rep.pair_count;
    }

    // inclusion psi(B(x0, r)) in B(psi(x0), 4 e r^{1/beta})
    const int nballs = 24, nrim = 16;
    int ok = 0;
    for (int k = 0; k < nballs; ++k) {
        const double x = U(rng), y = U(rng);
        const double r = D(rng) * 0.5;
        std::vector<Rk4Particle> pts;
        pts.push_back({x, y, 0.0});
        for (int q = 0; q < nrim; ++q) {
            const double a = 2.0 * M_PI * q / nrim;
            pts.push_back({x + r * std::cos(a), y + r * std::sin(a), 0.0});
        }
        for (std::size_t s = 1; s < tgrid.size(); ++s)
            for (auto& p : pts)
                p = rk4_step(h, p, tgrid[s - 1], tgrid[s] - tgrid[s - 1]);
        const double cap = 4.0 * M_E * std::pow(r, 1.0 / beta);
        bool inside = true;
        for (int q = 1; q <= nrim; ++q)
            if (std::hypot(pts[q].x - pts[0].x, pts[q].y - pts[0].y) > cap)
                inside = false;
        if (inside) ++ok;
    }
    rep.inclusion_fraction = static_cast<double>(ok) / nballs;
    return rep;
}

BoundReport theorem_bound_eval(const SpectralField& f0,
                               const VelocityHistory& h, const ClassF& F,
                               const BallSampler& sampler,
                               const TransportNormHistory& norms, double p,
                               std::size_t calibration_index) {
    if (norms.times.empty() || calibration_index >= norms.times.size())
        throw std::invalid_argument("theorem_bound_eval: bad calibration index");
    const double f0_norm =
        std::max(bmo_f_norm(f0, F, sampler), lp_norm(f0, p));
    BoundReport rep;
    std::vector<double> shapes;
    for (std::size_t i = 0; i < norms.times.size(); ++i) {
        const double t = norms.times[i];
        SpectralField ft = t <= h.t_min() + 1e-12
                               ? f0
                               : transport_reconstruct(f0, h, t);
        const double lhs = std::max(bmo_f_norm(ft, F, sampler), lp_norm(ft, p));
        const double Fv = F(std::exp(norms.v_ll_int[i]));
        const double shape = f0_norm * std::exp(norms.div_inf_int[i]) * Fv *
                             (1.0 + Fv * norms.div_lmo_int[i]);
        rep.times.push_back(t);
        rep.lhs.push_back(lhs);
        shapes.push_back(shape);
    }
    const double cal_shape = shapes[calibration_index];
    const double cal_lhs = rep.lhs[calibration_index];
    rep.constant = cal_shape > 0.0 ? cal_lhs / cal_shape : 1.0;
    if (rep.constant <= 0.0) rep.constant = 1.0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        rep.rhs.push_back(rep.constant * shapes[i]);
        if (rep.rhs.back() > 0.0)
            rep.max_ratio = std::max(rep.max_ratio, rep.lhs[i] / rep.rhs.back());
    }
    return rep;
}

} // namespace machlab
