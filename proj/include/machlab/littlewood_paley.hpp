#pragma once

#include <vector>

#include "machlab/spectral_field.hpp"

namespace machlab {

// Dyadic frequency decomposition on the grid's integer wavevectors.
// chi is 1 on |xi| <= 1/2 and supported in |xi| <= 1; phi(xi) =
// chi(xi/2) - chi(xi). Blocks q = -1, 0, ..., q_max with
// q_max = log2(n/2) - 1; the top block absorbs all remaining high
// frequencies so that the masks sum to 1 exactly on the resolved grid.
class DyadicPartition {
public:
    enum class Kind { delta_q, s_q, homog_delta_q };

    static DyadicPartition build(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int q_max() const { return q_max_; }
    int q_min() const { return 0; } // smallest resolvable homogeneous block

    // Mask for a block, length n*n, indexed like spectral coefficients.
    const std::vector<double>& mask(int q, Kind kind) const;

    SpectralField project(const SpectralField& f, int q, Kind kind) const;

    // l^r norm over q of 2^{qs} ||Delta_q f||_{L^p}.
    double besov_norm(const SpectralField& f, double s, double p, double r,
                      bool homogeneous) const;

    struct BernsteinReport {
        // sup_{|alpha|<=k} ||d^alpha S_q f||_{L^b} /
        //   (2^{q(k+2(1/a-1/b))} ||S_q f||_{L^a})
        double nonhomogeneous_ratio;
        // ||d^alpha homog_Delta_q f||_{L^b} / (2^{qk} ||homog_Delta_q f||_{L^b}),
        // max and min over |alpha| = k
        double homogeneous_upper;
        double homogeneous_lower;
        bool vacuous; // block energy below round-off
    };
    BernsteinReport bernstein_verify(const SpectralField& f, int q, int k,
                                     double a, double b) const;

private:
    Grid grid_;
    int q_max_ = 0;
    std::vector<std::vector<double>> delta_;     // index q+1
    std::vector<std::vector<double>> s_;         // S_q, index q (0..q_max+1)
    std::vector<std::vector<double>> homog_;     // index q
};

// Smooth radial profile chi: 1 on t <= 1/2, 0 on t >= 1.
double lp_chi(double t);

} // namespace machlab
