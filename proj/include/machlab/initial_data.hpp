#pragma once

#include "machlab/spectral_field.hpp"

namespace machlab {

// Parameters of the ill-prepared data family: vorticity profile mollified
// at scale 1/k and cut off at radius R, with the k^{s+2} R budget tied to
// log(1/eps)^alpha.
struct DataRecipe {
    std::string base_profile = "lbmo_vortex"; // or "smooth_bump", "two_vortex"
    int mollifier_index = 8;                  // k
    double cutoff_radius = 2.0;               // R
    double epsilon = 0.1;
    double s = 0.5;
    double alpha = 0.5;
    double gamma_bar = 0.2; // (gamma - 1)/2
    double budget_constant = 50.0; // C0 in k^{s+2} R <= C0 (ln 1/eps)^alpha

    bool budget_ok() const;
};

// The log-log vortex: ln(1 + ln(1/|x - x0|)) for |x - x0| <= 1, 0 outside,
// clamped at |x| < 2h and mean-corrected. Centered at the box middle.
SpectralField lbmo_vortex(const Grid& g);
// Same profile without the mean correction (for pointwise checks).
double lbmo_vortex_value(double dist, double clamp_below);

// Smooth radial bump (support radius rho) centered at the box middle.
SpectralField smooth_bump(const Grid& g, double rho, double amplitude = 1.0);

// chi(x/R): radial cutoff, 1 on |x| <= R, 0 on |x| >= 2R (box-centered).
SpectralField radial_cutoff(const Grid& g, double R);

// rho_k * (chi(./R) v): mollified truncation.
VectorField mollify_cutoff(const VectorField& v, int k, double R);

struct TruncationRot {
    SpectralField total;        // rot(chi(./R) v)
    SpectralField cutoff_omega; // chi(./R) omega
    SpectralField boundary;     // (1/R) grad^perp chi(./R) . v
};
TruncationRot truncation_rot(const VectorField& v, double R);

struct IllPreparedData {
    VectorField velocity;    // v_{0,eps}
    SpectralField sound;     // c_{0,eps}
    SpectralField vorticity; // curl of the velocity
};
IllPreparedData ill_prepared_family(const Grid& g, const DataRecipe& recipe);

} // namespace machlab
