#pragma once

#include <vector>

#include "machlab/compressible.hpp"
#include "machlab/spectral_field.hpp"

namespace machlab {

// 2D incompressible Euler in vorticity form: d_t omega + v.grad omega = 0,
// v = grad^perp Delta^{-1} omega.
struct VorticityState {
    SpectralField omega;
    double t = 0.0;
};

struct VorticitySample {
    double t = 0.0;
    double omega_l2 = 0.0;
    double omega_lp = 0.0;
    double omega_inf = 0.0;
    double omega_mean = 0.0;
    double omega_bmo = 0.0;
    double omega_bmo_f = 0.0;
    double v_ll = 0.0;
    double div_l2 = 0.0;
};

struct VorticityTrajectory {
    std::vector<VorticitySample> samples;
    std::vector<SpectralField> omega_history;
    std::vector<std::vector<double>> vx_history;
    std::vector<std::vector<double>> vy_history;
    std::vector<double> history_times;
};

struct VorticityDiagnostics {
    const BallSampler* sampler = nullptr;
    const ClassF* weight = nullptr;
    double lp_exponent = 1.5;
    bool keep_velocity_history = true;
};

// RK4 on the advection term with 2/3 dealiasing.
VorticityState vorticity_step(const VorticityState& s, double dt);

double vorticity_cfl(const VorticityState& s, double safety, double dt_max);

VorticityTrajectory simulate_reference(const SpectralField& omega0, double T,
                                       int sample_stride,
                                       const SolverConfig& cfg,
                                       const VorticityDiagnostics& diag = {});

} // namespace machlab
