#include "machlab/whitney.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace machlab {
namespace {

// Felzenszwalb-Huttenlocher 1D squared distance transform.
void dt1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k])
                --k;
            else
                break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

// Euclidean distance (grid units) from each set point to the complement.
// Non-periodic on purpose: covered sets are compactly supported sub-regions.
std::vector<double> distance_to_complement(const Grid& g,
                                           const std::vector<std::uint8_t>& mask) {
    const int n = g.n;
    const double big = 1e12;
    std::vector<double> d(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = mask[i] ? big : 0.0;
    std::vector<double> col(n), out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) col[j] = d[static_cast<std::size_t>(j) * n + i];
        dt1d(col, out, n);
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j) * n + i] = out[j];
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = d[static_cast<std::size_t>(j) * n + i];
        dt1d(col, out, n);
        for (int i = 0; i < n; ++i)
            d[static_cast<std::size_t>(j) * n + i] = std::sqrt(out[i]);
    }
    return d;
}

struct Builder {
    const Grid& g;
    const std::vector<std::uint8_t>& mask;
    const std::vector<double>& dist; // grid units
    std::vector<WhitneyBall>& balls;
    int min_side;

    bool square_inside(int i0, int j0, int side) const {
        for (int j = j0; j < j0 + side; ++j)
            for (int i = i0; i < i0 + side; ++i)
                if (!mask[static_cast<std::size_t>(j) * g.n + i]) return false;
        return true;
    }

    // Recursive dyadic subdivision: accept a square whose inscribed ball
    // has radius-to-boundary-distance ratio in [1/8, 1/2].
    void visit(int i0, int j0, int side) {
        const double h = g.spacing();
        if (square_inside(i0, j0, side)) {
            const double s = side * h;
            const double ccx = (i0 + 0.5 * side) * h;
            const double ccy = (j0 + 0.5 * side) * h;
            const int ci = i0 + side / 2, cj = j0 + side / 2;
            const double dc =
                dist[static_cast<std::size_t>(std::min(cj, g.n - 1)) * g.n +
                     std::min(ci, g.n - 1)] * h;
            const double r = 0.5 * s;
            // need r / (dc - r) in [1/8, 1/2]  <=>  dc in [3r, 9r]
            if (dc >= 3.0 * r && dc <= 9.0 * r) {
                balls.push_back({ccx, ccy, r});
                return;
            }
            if (dc < 3.0 * r && side <= min_side) return; // too thin to cover
        } else if (side <= min_side) {
            return;
        }
        if (side <= min_side) {
            // deep interior at the finest scale should not happen (larger
            // square would have been accepted), but guard anyway
            return;
        }
        const int half = side / 2;
        visit(i0, j0, half);
        visit(i0 + half, j0, half);
        visit(i0, j0 + half, half);
        visit(i0 + half, j0 + half, half);
    }
};

} // namespace

WhitneyCover whitney_cover(const Grid& g, const std::vector<std::uint8_t>& mask,
                           const ShellParams& shells) {
    const int n = g.n;
    std::size_t inside = 0;
    for (auto m : mask)
        if (m) ++inside;
    if (inside == 0) throw std::invalid_argument("whitney_cover: empty set");

    const auto dist = distance_to_complement(g, mask);
    WhitneyCover cover;
    Builder b{g, mask, dist, cover.balls, 2};
    b.visit(0, 0, n);

    // shell measures
    const double h_r =
        shells.source_radius * std::max(1.0, shells.jacobian_sup);
    const int kmax = 40;
    cover.shell_U.assign(kmax, 0.0);
    cover.shell_V.assign(kmax, 0.0);
    for (const auto& ball : cover.balls) {
        const double area = M_PI * ball.r * ball.r;
        for (int k = 0; k < kmax; ++k) {
            if (ball.r > std::exp(-k - 1.0) * h_r && ball.r <= std::exp(-static_cast<double>(k)) * h_r)
                cover.shell_U[k] += area;
            if (4.0 * ball.r > std::exp(-k - 1.0) && 4.0 * ball.r <= std::exp(-static_cast<double>(k)))
                cover.shell_V[k] += area;
        }
    }

    // coverage of set grid points by doubled balls
    std::size_t covered = 0;
    const double h = g.spacing();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (!mask[static_cast<std::size_t>(j) * n + i]) continue;
            const double x = i * h, y = j * h;
            bool hit = false;
            for (const auto& ball : cover.balls) {
                const double dx = x - ball.cx, dy = y - ball.cy;
                if (dx * dx + dy * dy <= 4.0 * ball.r * ball.r) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++covered;
        }
    cover.coverage = static_cast<double>(covered) / inside;
    return cover;
}

} // namespace machlab
