#include "machlab/compressible.hpp"

#include <cmath>

#include "machlab/spectral_ops.hpp"

namespace machlab {
namespace {

struct StateVec {
    SpectralField vx, vy, c;
};

StateVec axpy(const StateVec& a, double s, const StateVec& b) {
    return {a.vx + s * b.vx, a.vy + s * b.vy, a.c + s * b.c};
}

StateVec rhs_of(const CompressibleState& base, const StateVec& u) {
    CompressibleState s = base;
    s.v = VectorField{u.vx, u.vy};
    s.c = u.c;
    auto [f, g] = nonlinear_rhs(s);
    return {f.x, f.y, g};
}

bool finite_coeffs(const SpectralField& f) {
    const auto& h = f.spec();
    // NaN contaminates every coefficient through the transform, so a
    // handful of probes suffices
    const std::size_t m = h.size();
    for (std::size_t i : {std::size_t{0}, m / 3, m / 2, m - 1})
        if (!std::isfinite(h[i].real()) || !std::isfinite(h[i].imag()))
            return false;
    return true;
}

} // namespace

std::pair<VectorField, SpectralField> nonlinear_rhs(const CompressibleState& s) {
    const Grid& g = s.v.grid();
    const auto& vx = s.v.x.phys();
    const auto& vy = s.v.y.phys();
    const auto& c = s.c.phys();
    VectorField gvx = gradient(s.v.x);
    VectorField gvy = gradient(s.v.y);
    VectorField gc = gradient(s.c);
    SpectralField dv = divergence(s.v);
    const auto& dvx_x = gvx.x.phys();
    const auto& dvx_y = gvx.y.phys();
    const auto& dvy_x = gvy.x.phys();
    const auto& dvy_y = gvy.y.phys();
    const auto& dc_x = gc.x.phys();
    const auto& dc_y = gc.y.phys();
    const auto& divv = dv.phys();
    const double gb = s.gamma_bar;
    const std::size_t m = vx.size();
    std::vector<double> fx(m), fy(m), gg(m);
    for (std::size_t i = 0; i < m; ++i) {
        fx[i] = -(vx[i] * dvx_x[i] + vy[i] * dvx_y[i]) - gb * c[i] * dc_x[i];
        fy[i] = -(vx[i] * dvy_x[i] + vy[i] * dvy_y[i]) - gb * c[i] * dc_y[i];
        gg[i] = -(vx[i] * dc_x[i] + vy[i] * dc_y[i]) - gb * c[i] * divv[i];
    }
    VectorField f{SpectralField::from_physical(g, std::move(fx)),
                  SpectralField::from_physical(g, std::move(fy))};
    return {dealias(f),
            dealias(SpectralField::from_physical(g, std::move(gg)))};
}

AcousticVariables gamma_upsilon(const CompressibleState& s) {
    const Grid& g = s.v.grid();
    const auto& vx = s.v.x.spec();
    const auto& vy = s.v.y.spec();
    const auto& c = s.c.spec();
    const int n = g.n;
    AcousticVariables a;
    a.gamma_x.assign(vx.size(), cplx{0.0, 0.0});
    a.gamma_y.assign(vx.size(), cplx{0.0, 0.0});
    a.upsilon.assign(vx.size(), cplx{0.0, 0.0});
    const cplx I{0.0, 1.0};
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double kx = g.k_deriv(i), ky = g.k_deriv(j);
            const double m2 = kx * kx + ky * ky;
            if (m2 == 0.0) continue;
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double m = std::sqrt(m2);
            // Qv_hat = kappa (kappa . v_hat) / |kappa|^2
            const cplx kv = kx * vx[idx] + ky * vy[idx];
            // Gamma = Qv - i grad |D|^{-1} c  =>  hat: Qv_hat + kappa c_hat/|kappa|
            a.gamma_x[idx] = kx * kv / m2 + kx * c[idx] / m;
            a.gamma_y[idx] = ky * kv / m2 + ky * c[idx] / m;
            // Upsilon = |D|^{-1} div v + i c  =>  hat: i kappa.v_hat/|kappa| + i c_hat
            a.upsilon[idx] = I * kv / m + I * c[idx];
        }
    return a;
}

CompressibleState from_gamma_upsilon(const CompressibleState& base,
                                     const AcousticVariables& a) {
    const Grid& g = base.v.grid();
    const int n = g.n;
    std::vector<cplx> vx = base.v.x.spec();
    std::vector<cplx> vy = base.v.y.spec();
    std::vector<cplx> c = base.c.spec();
    const cplx I{0.0, 1.0};
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double kx = g.k_deriv(i), ky = g.k_deriv(j);
            const double m2 = kx * kx + ky * ky;
            if (m2 == 0.0) continue;
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double m = std::sqrt(m2);
            // Upsilon = alpha + i c with alpha, c real, so the hat at k and
            // -k together separate them: alpha_hat = (U(k) + conj(U(-k)))/2.
            const int mi = (n - i) % n, mj = (n - j) % n;
            const std::size_t midx = static_cast<std::size_t>(mj) * n + mi;
            const cplx up = a.upsilon[idx];
            const cplx um = std::conj(a.upsilon[midx]);
            const cplx alpha = 0.5 * (up + um);
            const cplx b = (up - um) / (2.0 * I);
            // alpha_hat = i (kappa.v_hat)/|kappa|
            const cplx av = alpha / I;
            const cplx kv_old = (kx * vx[idx] + ky * vy[idx]) / m;
            vx[idx] += (av - kv_old) * kx / m;
            vy[idx] += (av - kv_old) * ky / m;
            c[idx] = b;
        }
    CompressibleState out = base;
    out.v = VectorField{SpectralField::from_spectral(g, std::move(vx)),
                        SpectralField::from_spectral(g, std::move(vy))};
    out.c = SpectralField::from_spectral(g, std::move(c));
    return out;
}

CompressibleState acoustic_propagator(const CompressibleState& s, double dt) {
    const Grid& g = s.v.grid();
    const int n = g.n;
    std::vector<cplx> vx = s.v.x.spec();
    std::vector<cplx> vy = s.v.y.spec();
    std::vector<cplx> c = s.c.spec();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double kx = g.k_deriv(i), ky = g.k_deriv(j);
            const double m2 = kx * kx + ky * ky;
            if (m2 == 0.0) continue;
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double m = std::sqrt(m2);
            const double theta = m * dt / s.epsilon;
            // characteristic coefficients a = kappa.v_hat/|kappa|, b = c_hat;
            // (a +- b) pick up phases e^{-+ i theta}
            const cplx a = (kx * vx[idx] + ky * vy[idx]) / m;
            const cplx b = c[idx];
            const cplx plus = std::polar(1.0, -theta) * (a + b);
            const cplx minus = std::polar(1.0, theta) * (a - b);
            const cplx a2 = 0.5 * (plus + minus);
            const cplx b2 = 0.5 * (plus - minus);
            vx[idx] += (a2 - a) * kx / m;
            vy[idx] += (a2 - a) * ky / m;
            c[idx] = b2;
        }
    CompressibleState out = s;
    out.v = VectorField{SpectralField::from_spectral(g, std::move(vx)),
                        SpectralField::from_spectral(g, std::move(vy))};
    out.c = SpectralField::from_spectral(g, std::move(c));
    return out;
}

CompressibleState step(const CompressibleState& s, double dt) {
    CompressibleState half = acoustic_propagator(s, 0.5 * dt);

    StateVec u{half.v.x, half.v.y, half.c};
    StateVec k1 = rhs_of(half, u);
    StateVec k2 = rhs_of(half, axpy(u, 0.5 * dt, k1));
    StateVec k3 = rhs_of(half, axpy(u, 0.5 * dt, k2));
    StateVec k4 = rhs_of(half, axpy(u, dt, k3));
    StateVec u2 = axpy(u, dt / 6.0, k1);
    u2 = axpy(u2, dt / 3.0, k2);
    u2 = axpy(u2, dt / 3.0, k3);
    u2 = axpy(u2, dt / 6.0, k4);
    half.v = VectorField{u2.vx, u2.vy};
    half.c = u2.c;

    CompressibleState out = acoustic_propagator(half, 0.5 * dt);
    out.t = s.t + dt;
    if (!finite_coeffs(out.v.x) || !finite_coeffs(out.c))
        throw BlowupError(out.t);
    return out;
}

double cfl_dt(const CompressibleState& s, const SolverConfig& cfg) {
    const Grid& g = s.v.grid();
    const double k_max = 2.0 * M_PI / g.box_length * (g.n / 3.0);
    const double speed = max_norm(s.v) + s.gamma_bar * max_norm(s.c);
    if (speed * k_max <= 0.0) return cfg.dt_max;
    return std::min(cfg.dt_max, cfg.dt_safety / (k_max * speed));
}

namespace {

double inner_product(const SpectralField& a, const SpectralField& b) {
    const Grid& g = a.grid();
    const double h = g.spacing();
    const auto& pa = a.phys();
    const auto& pb = b.phys();
    double s = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) s += pa[i] * pb[i];
    return s * h * h;
}

} // namespace

TrajectoryRecord simulate(const CompressibleState& initial, double T,
                          int sample_stride, const SolverConfig& cfg,
                          const DiagnosticsConfig& diag) {
    if (sample_stride < 1)
        throw std::invalid_argument("simulate: sample_stride must be >= 1");
    TrajectoryRecord rec;
    const Grid& g = initial.v.grid();
    DyadicPartition lp = DyadicPartition::build(g);
    const double eta = cfg.s / (4.0 * (2.0 * cfg.s + 3.0));

    CompressibleState s = initial;
    double V = 0.0, W = 0.0, Q4 = 0.0, weak = 0.0;
    double prev_t = s.t;
    double prev_gsum = -1.0, prev_ll = -1.0, prev_q4 = -1.0;
    double prev_weak_val = 0.0;
    bool have_prev_weak = false;

    auto record = [&](const CompressibleState& st) {
        TrajectorySample smp;
        smp.t = st.t;
        VectorField gvx = gradient(st.v.x);
        VectorField gvy = gradient(st.v.y);
        VectorField gc = gradient(st.c);
        smp.grad_v_inf = std::max(max_norm(gvx), max_norm(gvy));
        smp.grad_c_inf = max_norm(gc);
        SpectralField dv = divergence(st.v);
        smp.div_v_inf = max_norm(dv);
        smp.div_v_besov = lp.besov_norm(dv, cfg.s / 3.0, INFINITY, INFINITY, false);
        LerayParts parts = leray_decompose(st.v);
        smp.qv_inf = max_norm(parts.compressible);
        smp.c_inf = max_norm(st.c);
        SpectralField omega = curl2d(st.v);
        smp.omega_l2 = l2_norm(omega);
        smp.omega_lp = lp_norm(omega, diag.lp_exponent);
        smp.hs_norm = std::hypot(sobolev_norm(st.v, cfg.s),
                                 sobolev_norm(st.c, cfg.s));
        if (diag.sampler) {
            smp.omega_bmo = bmo_norm(omega, *diag.sampler);
            if (diag.weight)
                smp.omega_bmo_f = bmo_f_norm(omega, *diag.weight, *diag.sampler);
            smp.v_ll = log_lipschitz_norm(st.v, *diag.sampler);
        }
        // trapezoid accumulation between consecutive samples
        const double dt_s = st.t - prev_t;
        const double gsum = smp.grad_v_inf + smp.grad_c_inf;
        const double q4 = std::pow(smp.qv_inf, 4.0);
        if (prev_gsum >= 0.0 && dt_s > 0.0) {
            V += 0.5 * dt_s * (prev_gsum + gsum);
            W += 0.5 * dt_s * (prev_ll + smp.v_ll);
            Q4 += 0.5 * dt_s * (prev_q4 + q4);
        }
        prev_t = st.t;
        prev_gsum = gsum;
        prev_ll = smp.v_ll;
        prev_q4 = q4;
        smp.V_acc = V;
        smp.W_acc = W;
        smp.qv4_acc = Q4;
        smp.weak_acc = weak;
        smp.rho_proxy = diag.rho_constant *
                        (1.0 + std::pow(std::max(st.t, 0.0), 1.75)) *
                        std::pow(st.epsilon, eta) *
                        std::exp(diag.rho_constant * V);
        rec.samples.push_back(smp);
        if (diag.keep_velocity_history) {
            rec.vx_history.push_back(st.v.x.phys());
            rec.vy_history.push_back(st.v.y.phys());
            rec.history_times.push_back(st.t);
        }
        return smp;
    };

    TrajectorySample last = record(s);
    if (last.grad_v_inf > cfg.blowup_threshold) {
        rec.blown_up = true;
        rec.first_bad_time = s.t;
        return rec;
    }

    int step_count = 0;
    const double t_end = initial.t + T;
    while (s.t < t_end - 1e-14) {
        const double dt = std::min(cfl_dt(s, cfg), t_end - s.t);
        try {
            CompressibleState next = step(s, dt);
            if (diag.weak_probe) {
                const double val = inner_product(divergence(next.v),
                                                 *diag.weak_probe);
                if (have_prev_weak)
                    weak += 0.5 * dt * (prev_weak_val + val);
                else {
                    const double v0 = inner_product(divergence(s.v),
                                                    *diag.weak_probe);
                    weak += 0.5 * dt * (v0 + val);
                }
                prev_weak_val = val;
                have_prev_weak = true;
            }
            s = next;
        } catch (const BlowupError& e) {
            rec.blown_up = true;
            rec.first_bad_time = e.t;
            return rec;
        }
        ++step_count;
        const bool due = (step_count % sample_stride == 0) ||
                         s.t >= t_end - 1e-14;
        if (due) {
            last = record(s);
            if (!std::isfinite(last.grad_v_inf) ||
                last.grad_v_inf > cfg.blowup_threshold) {
                rec.blown_up = true;
                rec.first_bad_time = s.t;
                return rec;
            }
        }
    }
    return rec;
}

} // namespace machlab
