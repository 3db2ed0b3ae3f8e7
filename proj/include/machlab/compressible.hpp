#pragma once

#include <optional>
#include <vector>

#include "machlab/funcspaces.hpp"
#include "machlab/littlewood_paley.hpp"
#include "machlab/spectral_field.hpp"

namespace machlab {

// State of the rescaled compressible system at one instant: velocity,
// sound-speed perturbation, Mach number and gamma_bar = (gamma-1)/2.
struct CompressibleState {
    VectorField v;
    SpectralField c;
    double epsilon = 0.1;
    double gamma_bar = 0.2;
    double t = 0.0;
};

struct SolverConfig {
    double dt_safety = 0.5;
    double dt_max = 5e-3;
    double blowup_threshold = 1e4;
    double s = 0.5; // Besov smoothness used in the div-v diagnostic
};

struct TrajectorySample {
    double t = 0.0;
    double grad_v_inf = 0.0;
    double grad_c_inf = 0.0;
    double div_v_inf = 0.0;
    double div_v_besov = 0.0; // B^{s/3}_{inf,inf}
    double qv_inf = 0.0;
    double c_inf = 0.0;
    double omega_l2 = 0.0;
    double omega_lp = 0.0;
    double omega_bmo = 0.0;
    double omega_bmo_f = 0.0;
    double v_ll = 0.0;
    double hs_norm = 0.0;    // ||(v, c)||_{H^s}
    double V_acc = 0.0;      // int (||grad v||_inf + ||grad c||_inf)
    double W_acc = 0.0;      // int ||v||_LL
    double qv4_acc = 0.0;    // int ||Qv||_inf^4 (for the L^4_t L^inf record)
    double weak_acc = 0.0;   // int <div v, probe> (accumulated every step)
    double rho_proxy = 0.0;  // C0 (1 + t^{7/4}) eps^eta e^{C V}
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    // physical velocity snapshots at sample times, for flow-map work
    std::vector<std::vector<double>> vx_history;
    std::vector<std::vector<double>> vy_history;
    std::vector<double> history_times;
    bool blown_up = false;
    double first_bad_time = -1.0;
};

// Extra norms (BMO etc.) are recorded only when these are supplied.
struct DiagnosticsConfig {
    const BallSampler* sampler = nullptr;
    const ClassF* weight = nullptr;
    const SpectralField* weak_probe = nullptr; // test function for <div v, phi>
    double lp_exponent = 1.5;
    double rho_constant = 1.0;    // C0 and C in the rho proxy
    bool keep_velocity_history = true;
};

// f_eps = -v.grad v - gb c grad c ; g_eps = -v.grad c - gb c div v
std::pair<VectorField, SpectralField> nonlinear_rhs(const CompressibleState& s);

// Acoustic variables Gamma = Qv - i grad |D|^{-1} c, Upsilon = |D|^{-1} div v + i c,
// stored as spectral coefficient arrays.
struct AcousticVariables {
    std::vector<cplx> gamma_x, gamma_y, upsilon;
};
AcousticVariables gamma_upsilon(const CompressibleState& s);
// Rebuild (Qv, c) from the acoustic variables; Pv passes through.
CompressibleState from_gamma_upsilon(const CompressibleState& base,
                                     const AcousticVariables& a);

// Exact linear propagator: phase e^{-i dt |k| / eps} on the wave components,
// identity on the solenoidal part.
CompressibleState acoustic_propagator(const CompressibleState& s, double dt);

// Strang step: half acoustic, RK4 on the nonlinearity, half acoustic.
// Throws BlowupError on NaN.
CompressibleState step(const CompressibleState& s, double dt);

struct BlowupError : std::runtime_error {
    double t;
    explicit BlowupError(double time)
        : std::runtime_error("solution blow-up detected"), t(time) {}
};

double cfl_dt(const CompressibleState& s, const SolverConfig& cfg);

TrajectoryRecord simulate(const CompressibleState& initial, double T,
                          int sample_stride, const SolverConfig& cfg,
                          const DiagnosticsConfig& diag = {});

// ---- whole-space radial free-wave oracle ----

struct DecayReport {
    std::vector<double> times;
    std::vector<double> sup_norms;   // ||phi(t)||_inf over the radial window
    double fitted_exponent = 0.0;    // slope of log sup vs log t
    double fit_residual = 0.0;
};

// Evolves e^{-it|D|} on a radial profile by order-zero Hankel quadrature.
// profile(r) must be smooth with support in [0, support_radius].
DecayReport radial_free_wave_decay(const std::function<double(double)>& profile,
                                   double support_radius,
                                   const std::vector<double>& t_list);

// L^4_{[0,1]} L^inf norm of t -> phi(t/eps) for each epsilon; returns the
// fitted scaling exponent of the norm against epsilon (expected 1/4).
struct StrichartzScalingReport {
    std::vector<double> epsilons;
    std::vector<double> l4_linf;
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;
};
StrichartzScalingReport
strichartz_scaling(const std::function<double(double)>& profile,
                   double support_radius, const std::vector<double>& epsilons);

// least-squares slope of log y against log x, with residual
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    int count = 0;
};
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

} // namespace machlab
