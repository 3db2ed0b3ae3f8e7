#include "machlab/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "machlab/simd/kernels.hpp"

namespace machlab {
namespace {

using simd::active;

std::size_t size_of(const Grid& g) {
    return static_cast<std::size_t>(g.n) * g.n;
}

// Apply a spectral multiplier m(kx_index, ky_index) -> cplx.
template <typename Mult>
SpectralField multiplier(const SpectralField& f, Mult m) {
    const Grid& g = f.grid();
    const auto& in = f.spec();
    std::vector<cplx> out(in.size());
    const int n = g.n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            out[idx] = in[idx] * m(i, j);
        }
    return SpectralField::from_spectral(g, std::move(out));
}

} // namespace

VectorField gradient(const SpectralField& f) {
    const Grid& g = f.grid();
    auto dx = multiplier(f, [&](int i, int) { return cplx(0.0, g.k_deriv(i)); });
    auto dy = multiplier(f, [&](int, int j) { return cplx(0.0, g.k_deriv(j)); });
    return VectorField{std::move(dx), std::move(dy)};
}

SpectralField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    const auto& vx = v.x.spec();
    const auto& vy = v.y.spec();
    std::vector<cplx> out(vx.size());
    const int n = g.n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            out[idx] = cplx(0.0, g.k_deriv(i)) * vx[idx] +
                       cplx(0.0, g.k_deriv(j)) * vy[idx];
        }
    return SpectralField::from_spectral(g, std::move(out));
}

SpectralField curl2d(const VectorField& v) {
    const Grid& g = v.grid();
    const auto& vx = v.x.spec();
    const auto& vy = v.y.spec();
    std::vector<cplx> out(vx.size());
    const int n = g.n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            out[idx] = cplx(0.0, g.k_deriv(i)) * vy[idx] -
                       cplx(0.0, g.k_deriv(j)) * vx[idx];
        }
    return SpectralField::from_spectral(g, std::move(out));
}

SpectralField laplacian(const SpectralField& f) {
    const Grid& g = f.grid();
    return multiplier(f, [&](int i, int j) {
        const double kx = g.k_phys(i), ky = g.k_phys(j);
        return cplx(-(kx * kx + ky * ky), 0.0);
    });
}

SpectralField laplacian_inv(const SpectralField& f) {
    const Grid& g = f.grid();
    return multiplier(f, [&](int i, int j) {
        if (i == 0 && j == 0) return cplx(0.0, 0.0);
        const double kx = g.k_phys(i), ky = g.k_phys(j);
        return cplx(-1.0 / (kx * kx + ky * ky), 0.0);
    });
}

SpectralField fractional_D(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    if (s < 0.0) {
        const double scale = l2_norm(f) + 1e-300;
        if (std::abs(f.mean()) > 1e-10 * std::max(1.0, scale))
            throw std::invalid_argument(
                "fractional_D: negative power requires a mean-zero field");
    }
    return multiplier(f, [&](int i, int j) {
        if (i == 0 && j == 0) return s < 0.0 ? cplx(0.0) : cplx(s == 0.0 ? 1.0 : 0.0);
        const double kx = g.k_phys(i), ky = g.k_phys(j);
        return cplx(std::pow(kx * kx + ky * ky, 0.5 * s), 0.0);
    });
}

LerayParts leray_decompose(const VectorField& v) {
    const Grid& g = v.grid();
    const auto& vx = v.x.spec();
    const auto& vy = v.y.spec();
    const int n = g.n;
    std::vector<cplx> qx(vx.size()), qy(vx.size()), px(vx.size()), py(vx.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double kx = g.k_deriv(i), ky = g.k_deriv(j);
            const double k2 = kx * kx + ky * ky;
            cplx q1(0.0), q2(0.0);
            if (k2 > 0.0) {
                // Qv_hat = k (k . v_hat) / |k|^2
                const cplx kdotv = kx * vx[idx] + ky * vy[idx];
                q1 = kx * kdotv / k2;
                q2 = ky * kdotv / k2;
            }
            qx[idx] = q1;
            qy[idx] = q2;
            px[idx] = vx[idx] - q1;
            py[idx] = vy[idx] - q2;
        }
    LerayParts parts;
    parts.solenoidal = VectorField{SpectralField::from_spectral(g, std::move(px)),
                                   SpectralField::from_spectral(g, std::move(py))};
    parts.compressible = VectorField{SpectralField::from_spectral(g, std::move(qx)),
                                     SpectralField::from_spectral(g, std::move(qy))};
    return parts;
}

VectorField biot_savart(const SpectralField& omega) {
    const double scale = std::max(1.0, max_norm(omega));
    if (std::abs(omega.mean()) > 1e-10 * scale)
        throw std::invalid_argument("biot_savart: vorticity must be mean-zero");
    const Grid& g = omega.grid();
    const auto& w = omega.spec();
    const int n = g.n;
    std::vector<cplx> vx(w.size()), vy(w.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double kx = g.k_deriv(i), ky = g.k_deriv(j);
            const double k2 = kx * kx + ky * ky;
            if (k2 > 0.0) {
                // v_hat = i k^perp / |k|^2 * (-omega_hat) ... grad^perp Delta^{-1}
                const cplx a = w[idx] / k2;
                vx[idx] = cplx(0.0, ky) * a;  // -d_y Delta^{-1} w
                vy[idx] = cplx(0.0, -kx) * a; //  d_x Delta^{-1} w
            }
        }
    return VectorField{SpectralField::from_spectral(g, std::move(vx)),
                       SpectralField::from_spectral(g, std::move(vy))};
}

SpectralField dealias(const SpectralField& f) {
    const Grid& g = f.grid();
    const int kc = g.n / 3;
    return multiplier(f, [&](int i, int j) {
        const int ki = std::abs(g.wavenumber(i));
        const int kj = std::abs(g.wavenumber(j));
        return (ki > kc || kj > kc) ? cplx(0.0) : cplx(1.0);
    });
}

VectorField dealias(const VectorField& v) {
    return VectorField{dealias(v.x), dealias(v.y)};
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    const auto& pa = a.phys();
    const auto& pb = b.phys();
    std::vector<double> out(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) out[i] = pa[i] + pb[i];
    return SpectralField::from_physical(a.grid(), std::move(out));
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    const auto& pa = a.phys();
    const auto& pb = b.phys();
    std::vector<double> out(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) out[i] = pa[i] - pb[i];
    return SpectralField::from_physical(a.grid(), std::move(out));
}

SpectralField operator*(double a, const SpectralField& f) {
    std::vector<double> out = f.phys();
    active().scale(out.data(), a, out.size());
    return SpectralField::from_physical(f.grid(), std::move(out));
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    const auto& pa = a.phys();
    const auto& pb = b.phys();
    std::vector<double> out(pa.size());
    active().mul(pa.data(), pb.data(), out.data(), out.size());
    return SpectralField::from_physical(a.grid(), std::move(out));
}

SpectralField apply(const SpectralField& f,
                    const std::function<double(double)>& fn) {
    const auto& p = f.phys();
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = fn(p[i]);
    return SpectralField::from_physical(f.grid(), std::move(out));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return VectorField{a.x + b.x, a.y + b.y};
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    return VectorField{a.x - b.x, a.y - b.y};
}
VectorField operator*(double a, const VectorField& v) {
    return VectorField{a * v.x, a * v.y};
}

double lp_norm(const SpectralField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p < 1");
    const auto& v = f.phys();
    const double h = f.grid().spacing();
    const double s = active().sum_abs_pow(v.data(), p, v.size());
    return std::pow(h * h * s, 1.0 / p);
}

double l2_norm(const SpectralField& f) {
    const auto& v = f.phys();
    const double h = f.grid().spacing();
    return std::sqrt(h * h * active().sum_sq(v.data(), v.size()));
}

double max_norm(const SpectralField& f) {
    const auto& v = f.phys();
    return active().max_abs(v.data(), v.size());
}

double max_norm(const VectorField& v) {
    const auto& a = v.x.phys();
    const auto& b = v.y.phys();
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, a[i] * a[i] + b[i] * b[i]);
    return std::sqrt(m);
}

double sobolev_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    const auto& u = f.spec();
    const int n = g.n;
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double kx = g.k_phys(i), ky = g.k_phys(j);
            const double w = std::pow(1.0 + kx * kx + ky * ky, s);
            sum += w * std::norm(u[static_cast<std::size_t>(j) * n + i]);
        }
    return g.box_length * std::sqrt(sum);
}

double sobolev_norm(const VectorField& v, double s) {
    const double a = sobolev_norm(v.x, s), b = sobolev_norm(v.y, s);
    return std::sqrt(a * a + b * b);
}

double l2_norm_spectral(const SpectralField& f) {
    const auto& u = f.spec();
    return f.grid().box_length *
           std::sqrt(simd::active().sum_sq_cplx(u.data(), u.size()));
}

SpectralField zero_field(const Grid& g) {
    return SpectralField::from_physical(
        g, std::vector<double>(static_cast<std::size_t>(g.n) * g.n, 0.0));
}

VectorField zero_vector(const Grid& g) {
    return VectorField{zero_field(g), zero_field(g)};
}

SpectralField sample(const Grid& g,
                     const std::function<double(double, double)>& fn) {
    std::vector<double> out(size_of(g));
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            out[static_cast<std::size_t>(j) * g.n + i] = fn(g.coord(i), g.coord(j));
    return SpectralField::from_physical(g, std::move(out));
}

SpectralField mean_zero(const SpectralField& f) {
    const double m = f.mean();
    const auto& p = f.phys();
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] - m;
    return SpectralField::from_physical(f.grid(), std::move(out));
}

} // namespace machlab
