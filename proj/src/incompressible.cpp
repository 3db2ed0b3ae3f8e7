#include "machlab/incompressible.hpp"

#include <cmath>

#include "machlab/spectral_ops.hpp"

namespace machlab {
namespace {

SpectralField advection_rhs(const SpectralField& omega) {
    const Grid& g = omega.grid();
    VectorField v = biot_savart(omega);
    VectorField go = gradient(omega);
    const auto& vx = v.x.phys();
    const auto& vy = v.y.phys();
    const auto& gx = go.x.phys();
    const auto& gy = go.y.phys();
    std::vector<double> out(vx.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = -(vx[i] * gx[i] + vy[i] * gy[i]);
    return dealias(SpectralField::from_physical(g, std::move(out)));
}

} // namespace

VorticityState vorticity_step(const VorticityState& s, double dt) {
    const SpectralField& w = s.omega;
    SpectralField k1 = advection_rhs(w);
    SpectralField k2 = advection_rhs(w + (0.5 * dt) * k1);
    SpectralField k3 = advection_rhs(w + (0.5 * dt) * k2);
    SpectralField k4 = advection_rhs(w + dt * k3);
    SpectralField next =
        w + (dt / 6.0) * k1 + (dt / 3.0) * k2 + (dt / 3.0) * k3 +
        (dt / 6.0) * k4;
    if (!std::isfinite(l2_norm_spectral(next)))
        throw BlowupError(s.t + dt);
    return VorticityState{next, s.t + dt};
}

double vorticity_cfl(const VorticityState& s, double safety, double dt_max) {
    const Grid& g = s.omega.grid();
    const double k_max = 2.0 * M_PI / g.box_length * (g.n / 3.0);
    const double speed = max_norm(biot_savart(s.omega));
    if (speed * k_max <= 0.0) return dt_max;
    return std::min(dt_max, safety / (k_max * speed));
}

VorticityTrajectory simulate_reference(const SpectralField& omega0, double T,
                                       int sample_stride,
                                       const SolverConfig& cfg,
                                       const VorticityDiagnostics& diag) {
    if (sample_stride < 1)
        throw std::invalid_argument("simulate_reference: sample_stride >= 1");
    VorticityTrajectory rec;
    VorticityState s{mean_zero(omega0), 0.0};

    auto record = [&](const VorticityState& st) {
        VorticitySample smp;
        smp.t = st.t;
        smp.omega_l2 = l2_norm(st.omega);
        smp.omega_lp = lp_norm(st.omega, diag.lp_exponent);
        smp.omega_inf = max_norm(st.omega);
        smp.omega_mean = st.omega.mean();
        VectorField v = biot_savart(st.omega);
        smp.div_l2 = l2_norm(divergence(v));
        if (diag.sampler) {
            smp.omega_bmo = bmo_norm(st.omega, *diag.sampler);
            if (diag.weight)
                smp.omega_bmo_f =
                    bmo_f_norm(st.omega, *diag.weight, *diag.sampler);
            smp.v_ll = log_lipschitz_norm(v, *diag.sampler);
        }
        rec.samples.push_back(smp);
        rec.omega_history.push_back(st.omega);
        if (diag.keep_velocity_history) {
            rec.vx_history.push_back(v.x.phys());
            rec.vy_history.push_back(v.y.phys());
            rec.history_times.push_back(st.t);
        }
    };

    record(s);
    int step_count = 0;
    while (s.t < T - 1e-14) {
        const double dt =
            std::min(vorticity_cfl(s, cfg.dt_safety, cfg.dt_max), T - s.t);
        s = vorticity_step(s, dt);
        ++step_count;
        if (step_count % sample_stride == 0 || s.t >= T - 1e-14) record(s);
    }
    return rec;
}

} // namespace machlab
