#pragma once

#include <functional>

#include "machlab/spectral_field.hpp"

namespace machlab {

// ---- calculus on the periodic grid (spectral multipliers) ----

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField curl2d(const VectorField& v);
SpectralField laplacian(const SpectralField& f);
// Inverse Laplacian with the k=0 mode zeroed (mean-zero gauge).
SpectralField laplacian_inv(const SpectralField& f);
// |D|^s = (-Delta)^{s/2}; for s < 0 the input must be mean-zero.
SpectralField fractional_D(const SpectralField& f, double s);

// Leray decomposition v = Pv + Qv, Qv = grad Delta^{-1} div v.
struct LerayParts {
    VectorField solenoidal;   // Pv
    VectorField compressible; // Qv
};
LerayParts leray_decompose(const VectorField& v);

// v = grad^perp Delta^{-1} omega; omega must be mean-zero (<= 1e-10 rel.).
VectorField biot_savart(const SpectralField& omega);

// 2/3-rule dealiasing mask applied in spectral space.
SpectralField dealias(const SpectralField& f);
VectorField dealias(const VectorField& v);

// ---- pointwise algebra ----

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double a, const SpectralField& f);
SpectralField multiply(const SpectralField& a, const SpectralField& b);
SpectralField apply(const SpectralField& f, const std::function<double(double)>& fn);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double a, const VectorField& v);

// ---- norms (physical quadrature unless stated) ----

double lp_norm(const SpectralField& f, double p);
double l2_norm(const SpectralField& f);
double max_norm(const SpectralField& f);
double max_norm(const VectorField& v); // max over points of |v(x)|
// Sobolev norm from coefficients: (L^2 sum (1+|kappa|^2)^s |uhat|^2)^{1/2}.
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const VectorField& v, double s);
// Parseval check helper: L^2 norm computed from coefficients.
double l2_norm_spectral(const SpectralField& f);

SpectralField zero_field(const Grid& g);
VectorField zero_vector(const Grid& g);

// Evaluate a function of (x, y) on the grid.
SpectralField sample(const Grid& g, const std::function<double(double, double)>& fn);

// Subtract the mean.
SpectralField mean_zero(const SpectralField& f);

} // namespace machlab
