#pragma once

#include <cstdint>
#include <vector>

#include "machlab/grid.hpp"

namespace machlab {

struct WhitneyBall {
    double cx, cy, r;
};

// Disjoint balls filling an open grid set, radii comparable to the
// distance to the complement (ratio in [c1, c2] = [1/8, 1/2]), plus
// per-shell measures bucketed by e^{-k} radius bands.
struct WhitneyCover {
    std::vector<WhitneyBall> balls;
    std::vector<double> shell_U; // U_k: |O_j| summed over e^{-k-1}h(r) < r_j <= e^{-k}h(r)
    std::vector<double> shell_V; // V_k: |O_j| summed over e^{-k-1} < 4 r_j <= e^{-k}
    double coverage = 0.0;       // fraction of set points inside doubled balls
};

struct ShellParams {
    double source_radius = 1.0; // radius r of the ball whose image is covered
    double jacobian_sup = 1.0;  // ||J_psi||_inf
};

// mask: n*n boolean grid (row-major), nonzero = inside the open set.
WhitneyCover whitney_cover(const Grid& g, const std::vector<std::uint8_t>& mask,
                           const ShellParams& shells = {});

} // namespace machlab
