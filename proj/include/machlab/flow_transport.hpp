#pragma once

#include <vector>

#include "machlab/funcspaces.hpp"
#include "machlab/spectral_field.hpp"

namespace machlab {

// Velocity snapshots on a shared grid, interpolated bicubically in space
// and by cubic Hermite in time. Divergence snapshots are precomputed
// spectrally so line integrals use the same data as the solver.
struct VelocityHistory {
    Grid grid;
    std::vector<double> times;
    std::vector<std::vector<double>> vx, vy, divv;

    static VelocityHistory from_arrays(const Grid& g, std::vector<double> times,
                                       std::vector<std::vector<double>> vx,
                                       std::vector<std::vector<double>> vy);

    void eval(double t, double x, double y, double& u, double& v) const;
    double eval_div(double t, double x, double y) const;
    double t_min() const { return times.front(); }
    double t_max() const { return times.back(); }
};

// Forward particle lattice with per-time positions (unwrapped), accumulated
// divergence line integrals and finite-difference Jacobians over quads.
struct FlowMap {
    Grid grid;
    int m = 0;                            // lattice is m x m seeds
    std::vector<double> times;
    std::vector<std::vector<double>> px, py;
    std::vector<std::vector<double>> div_int; // int_0^t div v(tau, psi(tau, x))
    std::vector<std::vector<double>> jac;     // FD Jacobian det
    bool wrap_flagged = false;
};

FlowMap integrate_flow(const VelocityHistory& h, int m,
                       const std::vector<double>& t_grid);

// Backward trajectories from (t, x) to the history start; div_int holds the
// divergence integral accumulated along the path.
struct BackwardResult {
    std::vector<double> x0, y0, div_int;
    bool wrap_flagged = false;
};
BackwardResult inverse_flow(const VelocityHistory& h, double t,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys,
                            int substeps_per_interval = 1);

// Compressible transport formula:
// f(t, x) = f0(psi^{-1}(t,x)) exp(-int_0^t div v(tau, psi(tau, psi^{-1}(t,x))) dtau)
SpectralField transport_reconstruct(const SpectralField& f0,
                                    const VelocityHistory& h, double t);

// Hoelder ratios |psi^{+-1}(x1)-psi^{+-1}(x2)| / (e |x1-x2|^{1/beta}) over
// sampled pairs with |x1-x2| < e^{-beta}, and the inclusion
// psi(B(x0,r)) in B(psi(x0), 4 e r^{1/beta}) over sampled balls.
struct RegularityReport {
    double beta = 1.0;
    double max_ratio_forward = 0.0;
    double max_ratio_backward = 0.0;
    double inclusion_fraction = 1.0;
    int pair_count = 0;
    bool vacuous = false; // e^{-beta} below grid resolution
};
RegularityReport regularity_check(const VelocityHistory& h, double t,
                                  double beta, unsigned seed = 1);

// Transport bound: LHS(t) = ||f(t)||_{BMO_F cap L^p} for the reconstructed
// field, RHS(t) = K ||f0|| e^{D(t)} F(e^{V(t)}) (1 + F(e^{V(t)}) G(t)) with
// D = int ||div v||_inf, V = int ||v||_LL, G = int ||div v||_{LMO_F cap Linf};
// K is fitted once at the calibration index and frozen.
struct TransportNormHistory {
    std::vector<double> times;
    std::vector<double> div_inf_int;  // D(t)
    std::vector<double> v_ll_int;     // V(t)
    std::vector<double> div_lmo_int;  // G(t)
};
struct BoundReport {
    std::vector<double> times, lhs, rhs;
    double constant = 0.0; // fitted K
    double max_ratio = 0.0;
};
BoundReport theorem_bound_eval(const SpectralField& f0,
                               const VelocityHistory& h, const ClassF& F,
                               const BallSampler& sampler,
                               const TransportNormHistory& norms, double p,
                               std::size_t calibration_index);

} // namespace machlab
