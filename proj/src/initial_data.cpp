#include "machlab/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "machlab/spectral_ops.hpp"

namespace machlab {
namespace {

double smooth_step(double t) {
    // 1 for t <= 0, 0 for t >= 1, C-infinity in between
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const auto f = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    return f(1.0 - t) / (f(t) + f(1.0 - t));
}

// radial mollifier profile, unit mass arranged by discrete normalization
double mollifier_profile(double r) {
    return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
}

SpectralField convolve(const SpectralField& a, const SpectralField& b) {
    // periodic convolution normalized so that a unit-sum kernel preserves
    // constants: (a*b)hat = n^2 * ahat * bhat with our 1/n^2 fft scaling,
    // times h^2 for the physical quadrature weight
    const Grid& g = a.grid();
    const auto& ha = a.spec();
    const auto& hb = b.spec();
    std::vector<cplx> out(ha.size());
    const double scale = g.box_length * g.box_length;
    for (std::size_t i = 0; i < ha.size(); ++i) out[i] = scale * ha[i] * hb[i];
    return SpectralField::from_spectral(g, std::move(out));
}

} // namespace

bool DataRecipe::budget_ok() const {
    const double lhs = std::pow(mollifier_index, s + 2.0) * cutoff_radius;
    const double rhs =
        budget_constant * std::pow(std::log(1.0 / epsilon), alpha);
    return lhs <= rhs;
}

double lbmo_vortex_value(double dist, double clamp_below) {
    const double d = std::max(dist, clamp_below);
    if (d >= 1.0) return 0.0;
    return std::log(1.0 + std::log(1.0 / d));
}

SpectralField lbmo_vortex(const Grid& g) {
    const double h = g.spacing();
    if (g.n < 64)
        throw std::invalid_argument("lbmo_vortex: grid too coarse");
    const double cx = 0.5 * g.box_length, cy = 0.5 * g.box_length;
    auto f = sample(g, [&](double x, double y) {
        const double d = std::sqrt(g.torus_dist2(x, y, cx, cy));
        return lbmo_vortex_value(d, 2.0 * h);
    });
    return mean_zero(f);
}

SpectralField smooth_bump(const Grid& g, double rho, double amplitude) {
    const double cx = 0.5 * g.box_length, cy = 0.5 * g.box_length;
    return sample(g, [&](double x, double y) {
        const double d = std::sqrt(g.torus_dist2(x, y, cx, cy)) / rho;
        return amplitude * smooth_step(d);
    });
}

SpectralField radial_cutoff(const Grid& g, double R) {
    if (2.0 * R >= 0.5 * g.box_length)
        throw std::invalid_argument("radial_cutoff: support does not fit the box");
    const double cx = 0.5 * g.box_length, cy = 0.5 * g.box_length;
    return sample(g, [&](double x, double y) {
        const double d = std::sqrt(g.torus_dist2(x, y, cx, cy));
        return smooth_step(d / R - 1.0);
    });
}

VectorField mollify_cutoff(const VectorField& v, int k, double R) {
    const Grid& g = v.grid();
    if (k < 1) throw std::invalid_argument("mollify_cutoff: k must be >= 1");
    SpectralField chi = radial_cutoff(g, R);
    // rho_k(x) = k^2 rho(kx), normalized to unit discrete sum
    const double cx = 0.5 * g.box_length, cy = 0.5 * g.box_length;
    SpectralField rho = sample(g, [&](double x, double y) {
        const double d = std::sqrt(g.torus_dist2(x, y, cx, cy));
        return mollifier_profile(k * d);
    });
    double total = 0.0;
    for (double p : rho.phys()) total += p;
    const double h = g.spacing();
    if (total <= 0.0)
        throw std::invalid_argument("mollify_cutoff: mollifier under-resolved");
    // normalize so the kernel has unit integral; the kernel is centered at
    // the box middle, so shift the convolution back by that offset
    SpectralField rho_n = (1.0 / (total * h * h)) * rho;
    auto shift_center = [&](const SpectralField& f) {
        const auto& in = f.spec();
        std::vector<cplx> out(in.size());
        const int n = g.n;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                // kernel centered at (L/2, L/2): multiply by e^{-i kappa . L/2}
                const double phase = -(g.k_phys(i) + g.k_phys(j)) * 0.5 * g.box_length;
                out[static_cast<std::size_t>(j) * n + i] =
                    in[static_cast<std::size_t>(j) * n + i] *
                    std::polar(1.0, phase);
            }
        return SpectralField::from_spectral(g, std::move(out));
    };
    SpectralField kernel = shift_center(rho_n);
    auto cut = [&](const SpectralField& f) {
        return convolve(multiply(chi, f), kernel);
    };
    return VectorField{cut(v.x), cut(v.y)};
}

TruncationRot truncation_rot(const VectorField& v, double R) {
    const Grid& g = v.grid();
    SpectralField chi = radial_cutoff(g, R);
    TruncationRot out;
    out.total = curl2d(VectorField{multiply(chi, v.x), multiply(chi, v.y)});
    out.cutoff_omega = multiply(chi, curl2d(v));
    // (1/R) grad^perp(chi)(./R) . v  ==  grad^perp[chi(./R)] . v
    VectorField gchi = gradient(chi);
    out.boundary = SpectralField::from_physical(g, [&] {
        const auto& gx = gchi.x.phys();
        const auto& gy = gchi.y.phys();
        const auto& vx = v.x.phys();
        const auto& vy = v.y.phys();
        std::vector<double> b(gx.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            b[i] = -gy[i] * vx[i] + gx[i] * vy[i];
        return b;
    }());
    return out;
}

IllPreparedData ill_prepared_family(const Grid& g, const DataRecipe& recipe) {
    if (!recipe.budget_ok())
        throw std::invalid_argument(
            "ill_prepared_family: recipe violates the k^{s+2} R budget");
    SpectralField omega0 = [&] {
        if (recipe.base_profile == "lbmo_vortex") return lbmo_vortex(g);
        if (recipe.base_profile == "smooth_bump")
            return mean_zero(smooth_bump(g, 1.0));
        if (recipe.base_profile == "two_vortex") {
            // opposite-signed pair, already mean-zero up to sampling
            const double L = g.box_length;
            auto f = sample(g, [&](double x, double y) {
                const double d1 =
                    std::sqrt(g.torus_dist2(x, y, 0.4 * L, 0.5 * L));
                const double d2 =
                    std::sqrt(g.torus_dist2(x, y, 0.6 * L, 0.5 * L));
                return smooth_step(d1 / 0.8) - smooth_step(d2 / 0.8);
            });
            return mean_zero(f);
        }
        throw std::invalid_argument("ill_prepared_family: unknown profile " +
                                    recipe.base_profile);
    }();
    VectorField v0 = biot_savart(omega0);
    VectorField v0e = mollify_cutoff(v0, recipe.mollifier_index,
                                     recipe.cutoff_radius);
    // maximally ill-prepared: an O(1) sound bump independent of epsilon
    SpectralField c0e = smooth_bump(g, 1.0, 1.0);
    return IllPreparedData{v0e, mean_zero(c0e), curl2d(v0e)};
}

} // namespace machlab
