#pragma once

#include <cmath>
#include <stdexcept>

namespace machlab {

// Periodic square grid on [0, L)^2 with n points per side.
struct Grid {
    int n = 0;
    double box_length = 0.0;

    static Grid make(int n, double box_length) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 8");
        if (!(box_length > 2.0))
            throw std::invalid_argument("Grid: box_length must exceed 2");
        return Grid{n, box_length};
    }

    double spacing() const { return box_length / n; }
    double coord(int i) const { return i * spacing(); }

    // Integer wavevector component for FFT row/column index, in (-n/2, n/2].
    int wavenumber(int i) const { return i <= n / 2 ? i : i - n; }
    // Physical wavenumber: 2*pi/L times the integer wavevector.
    double k_phys(int i) const { return 2.0 * M_PI / box_length * wavenumber(i); }
    // Derivative multiplier component; the Nyquist mode is zeroed so that
    // odd derivatives of real fields stay real.
    double k_deriv(int i) const {
        return i == n / 2 ? 0.0 : k_phys(i);
    }

    // Shortest periodic displacement from a to b.
    double wrap(double d) const {
        const double L = box_length;
        d = std::fmod(d, L);
        if (d > 0.5 * L) d -= L;
        if (d < -0.5 * L) d += L;
        return d;
    }
    double torus_dist2(double ax, double ay, double bx, double by) const {
        const double dx = wrap(bx - ax), dy = wrap(by - ay);
        return dx * dx + dy * dy;
    }

    bool operator==(const Grid&) const = default;
};

} // namespace machlab
