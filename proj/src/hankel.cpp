#include "machlab/compressible.hpp"

#include <algorithm>
#include <cmath>

namespace machlab {
namespace {

// J0 by the Abramowitz-Stegun 9.4.1 / 9.4.3 rational fits, |err| < 5e-8.
// std::cyl_bessel_j is far too slow for the quadrature loops below.
double fast_j0(double x) {
    x = std::abs(x);
    if (x < 3.0) {
        const double t = x * x / 9.0;
        return 1.0 +
               t * (-2.2499997 +
                    t * (1.2656208 +
                         t * (-0.3163866 +
                              t * (0.0444479 +
                                   t * (-0.0039444 + t * 0.0002100)))));
    }
    const double t = 3.0 / x;
    const double f0 =
        0.79788456 +
        t * (-0.00000077 +
             t * (-0.00552740 +
                  t * (-0.00009512 +
                       t * (0.00137237 +
                            t * (-0.00072805 + t * 0.00014476)))));
    const double theta0 =
        x - 0.78539816 +
        t * (-0.04166397 +
             t * (-0.00003954 +
                  t * (0.00262573 +
                       t * (-0.00054125 +
                            t * (-0.00029333 + t * 0.00013558)))));
    return f0 * std::cos(theta0) / std::sqrt(x);
}

// Order-zero Hankel transform of the profile on a uniform rho grid,
// truncated where the spectrum has decayed below round-off.
struct HankelTable {
    std::vector<double> rho;
    std::vector<double> fhat;
    double drho;
};

HankelTable hankel_transform(const std::function<double(double)>& profile,
                             double R, double t_max) {
    HankelTable tab;
    // resolve the fastest oscillation e^{-it rho} J0(rho r) out to the wavefront
    tab.drho = M_PI / (6.0 * (t_max + R + 4.0));
    const double rho_max = 80.0 / R;
    const int n_r = 600; // Simpson nodes for the radial integral
    const double dr = R / n_r;
    std::vector<double> fr(n_r + 1), w(n_r + 1);
    for (int i = 0; i <= n_r; ++i) {
        fr[i] = profile(i * dr);
        w[i] = (i == 0 || i == n_r) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    }
    double peak = 0.0;
    int quiet = 0;
    for (double rho = 0.0; rho <= rho_max; rho += tab.drho) {
        double s = 0.0;
        for (int i = 0; i <= n_r; ++i) {
            const double r = i * dr;
            s += w[i] * fr[i] * fast_j0(rho * r) * r;
        }
        const double val = s * dr / 3.0;
        tab.rho.push_back(rho);
        tab.fhat.push_back(val);
        peak = std::max(peak, std::abs(val) * std::max(rho, tab.drho));
        quiet = std::abs(val) * std::max(rho, tab.drho) < 1e-13 * peak
                    ? quiet + 1
                    : 0;
        if (quiet > 50 && rho > 10.0 / R) break; // spectrum exhausted
    }
    return tab;
}

// |phi(t, r)| with phi = e^{-it|D|} f, via the inverse Hankel integral.
double eval_modulus(const HankelTable& tab, double t, double r) {
    double re = 0.0, im = 0.0;
    const std::size_t n = tab.rho.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = tab.rho[i];
        const double a = tab.fhat[i] * fast_j0(rho * r) * rho;
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        re += w * a * std::cos(t * rho);
        im -= w * a * std::sin(t * rho);
    }
    re *= tab.drho;
    im *= tab.drho;
    return std::hypot(re, im);
}

// sup_r |phi(t, .)|; the wave lives near r = t, so scan a window around
// the front plus the origin region
double sup_modulus(const HankelTable& tab, double t, double R) {
    const double lo = std::max(0.0, t - R - 3.0);
    const double hi = t + R + 3.0;
    const double dr = 0.04;
    double best = 0.0;
    for (double r = lo; r <= hi; r += dr)
        best = std::max(best, eval_modulus(tab, t, r));
    if (lo > 0.0)
        for (double r = 0.0; r <= std::min(lo, 2.0 * R); r += 0.1)
            best = std::max(best, eval_modulus(tab, t, r));
    return best;
}

void check_identity_at_zero(const HankelTable& tab,
                            const std::function<double(double)>& profile,
                            double R) {
    double worst = 0.0, scale = 0.0;
    for (double r = 0.0; r <= 1.2 * R; r += R / 7.0) {
        const double got = eval_modulus(tab, 0.0, r);
        const double want = std::abs(profile(r));
        worst = std::max(worst, std::abs(got - want));
        scale = std::max(scale, want);
    }
    if (scale <= 0.0 || worst > 1e-3 * scale)
        throw std::runtime_error(
            "radial_free_wave_decay: quadrature failed the t=0 identity check");
}

} // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    SlopeFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    fit.count = static_cast<int>(lx.size());
    if (fit.count < 2) return fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < fit.count; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double n = fit.count;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (int i = 0; i < fit.count; ++i) {
        const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

DecayReport radial_free_wave_decay(const std::function<double(double)>& profile,
                                   double support_radius,
                                   const std::vector<double>& t_list) {
    if (!(support_radius > 0.0))
        throw std::invalid_argument("radial_free_wave_decay: bad support radius");
    double t_max = 0.0;
    for (double t : t_list) t_max = std::max(t_max, t);
    const HankelTable tab = hankel_transform(profile, support_radius, t_max);
    check_identity_at_zero(tab, profile, support_radius);

    DecayReport rep;
    for (double t : t_list) {
        rep.times.push_back(t);
        rep.sup_norms.push_back(sup_modulus(tab, t, support_radius));
    }
    const SlopeFit fit = fit_loglog(rep.times, rep.sup_norms);
    rep.fitted_exponent = fit.slope;
    rep.fit_residual = fit.residual;
    return rep;
}

StrichartzScalingReport
strichartz_scaling(const std::function<double(double)>& profile,
                   double support_radius,
                   const std::vector<double>& epsilons) {
    if (epsilons.empty())
        throw std::invalid_argument("strichartz_scaling: empty epsilon list");
    double eps_min = epsilons.front();
    for (double e : epsilons) {
        if (!(e > 0.0 && e <= 1.0))
            throw std::invalid_argument("strichartz_scaling: epsilon out of range");
        eps_min = std::min(eps_min, e);
    }
    const double tau_max = 1.0 / eps_min;
    const HankelTable tab = hankel_transform(profile, support_radius, tau_max);
    check_identity_at_zero(tab, profile, support_radius);

    // tabulate M(tau) = sup_r |phi(tau)| once, then each epsilon integral is
    // a change of variables over the same table
    const double dtau = 0.125;
    std::vector<double> taus, M;
    for (double tau = 0.0; tau <= tau_max + 1e-12; tau += dtau) {
        taus.push_back(tau);
        M.push_back(sup_modulus(tab, tau, support_radius));
    }
    auto M_at = [&](double tau) {
        if (tau >= taus.back()) return M.back();
        const std::size_t i = static_cast<std::size_t>(tau / dtau);
        const double w = (tau - taus[i]) / dtau;
        return (1.0 - w) * M[i] + w * M[i + 1];
    };

    StrichartzScalingReport rep;
    rep.epsilons = epsilons;
    for (double eps : epsilons) {
        // int_0^1 M(t/eps)^4 dt, Simpson on a fine t grid
        const int nt = 800;
        const double dt = 1.0 / nt;
        double s = 0.0;
        for (int i = 0; i <= nt; ++i) {
            const double w = (i == 0 || i == nt) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += w * std::pow(M_at(i * dt / eps), 4.0);
        }
        rep.l4_linf.push_back(std::pow(s * dt / 3.0, 0.25));
    }
    const SlopeFit fit = fit_loglog(rep.epsilons, rep.l4_linf);
    rep.fitted_exponent = fit.slope;
    rep.fit_residual = fit.residual;
    return rep;
}

} // namespace machlab
